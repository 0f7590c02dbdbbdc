// Acceptance predicates comparing two configurations on shared instance/seed
// prefixes: fixed-sample better_n and the adaptive better_foc used by
// FocusedILS (domination plus bonus runs).
#pragma once

#include "objective.hpp"

namespace paramils {

struct ComparisonContext {
  Evaluator* evaluator = nullptr;
  int fixed_n = 0;          // sample size for better_n
  long bonus_counter = 0;   // configurations evaluated since last improvement
  long last_loop_iterations = 0;  // instrumentation for better_foc

  bool capping_enabled() const {
    return evaluator->settings().capping != CappingMode::none;
  }
};

/// True when `candidate` does at least as well as `reference` on the first
/// fixed_n list entries. Evaluates the reference unbounded, then the
/// candidate bounded by the reference estimate (when capping is on).
/// Ties favor the candidate.
bool better_n(ComparisonContext& ctx, const Configuration& candidate,
              const Configuration& reference);

/// Domination: at least as many runs, and a no-worse estimate at the other
/// configuration's run count.
bool dominates(Evaluator& evaluator, const Configuration& lhs,
               const Configuration& rhs, double bound = kInfiniteBound);

/// True when `candidate` dominates `reference` after the two have been
/// leveled to a common run count (one list entry at a time). A win grants
/// the candidate ctx.bonus_counter extra runs and resets the counter.
bool better_foc(ComparisonContext& ctx, const Configuration& candidate,
                const Configuration& reference);

}  // namespace paramils
