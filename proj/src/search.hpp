// Search drivers over parameter configuration space: the iterated local
// search framework (instantiated with better_n for BasicILS and better_foc
// for FocusedILS), plus the RandomSearch and SimpleLS baselines.
//
// All drivers are anytime: a BudgetExhausted interrupt from the backend is
// caught and the current incumbent is returned.
#pragma once

#include <functional>
#include <string>

#include "comparison.hpp"

namespace paramils {

struct SearchParams {
  int initial_random = 10;       // r: random configurations at startup
  int perturbation_steps = 3;    // s: random one-exchange moves
  double restart_probability = 0.01;  // p_restart
};

struct SearchStats {
  long ils_iterations = 0;
  long restarts = 0;
  long better_calls = 0;
  long local_search_scans = 0;
  std::string stop_reason;
};

using BetterPredicate =
    std::function<bool(const Configuration&, const Configuration&)>;

struct SearchContext {
  const ConfigurationSpace& space;
  Evaluator& evaluator;
  Rng& rng;
  long max_iterations = std::numeric_limits<long>::max();
  /// Called with every candidate passed to the better predicate, in order;
  /// used for trajectory-equality checks.
  std::function<void(const Configuration&)> on_candidate;
  SearchStats stats;
};

/// Iterative first improvement: repeatedly scans the randomized neighborhood
/// and moves to the first acceptable neighbor; returns the first
/// configuration whose full scan yields no accepted move. Budget interrupts
/// propagate to the caller.
Configuration iterative_first_improvement(SearchContext& ctx,
                                          Configuration start,
                                          const BetterPredicate& better);

/// The full iterated local search: r random initial candidates, first
/// improvement descent, then perturb/descend/accept rounds with random
/// restarts. Returns the overall incumbent (maintained by the evaluator).
Configuration run_paramils(SearchContext& ctx, const Configuration& start,
                           const SearchParams& params,
                           const BetterPredicate& better);

/// Accepts uniformly sampled configurations through the better predicate.
Configuration run_random_search(SearchContext& ctx, const Configuration& start,
                                const BetterPredicate& better);

/// Initialization plus a single descent; stops at the first local optimum.
Configuration run_simple_ls(SearchContext& ctx, const Configuration& start,
                            const SearchParams& params,
                            const BetterPredicate& better);

}  // namespace paramils
