#include "search.hpp"

#include "errors.hpp"

namespace paramils {

namespace {

bool check(SearchContext& ctx, const BetterPredicate& better,
           const Configuration& candidate, const Configuration& reference) {
  if (ctx.on_candidate) ctx.on_candidate(candidate);
  ++ctx.stats.better_calls;
  return better(candidate, reference);
}

// Lines 1-3 of the framework: r random candidates, each challenged against
// the current starting configuration.
Configuration randomized_init(SearchContext& ctx, Configuration start,
                              int initial_random,
                              const BetterPredicate& better) {
  for (int i = 0; i < initial_random; ++i) {
    Configuration candidate = ctx.space.sample_random(ctx.rng);
    if (check(ctx, better, candidate, start)) start = candidate;
  }
  return start;
}

}  // namespace

Configuration iterative_first_improvement(SearchContext& ctx,
                                          Configuration start,
                                          const BetterPredicate& better) {
  while (true) {
    ++ctx.stats.local_search_scans;
    const Configuration scan_origin = start;
    bool moved = false;
    for (const Configuration& neighbor :
         ctx.space.neighbors(scan_origin, ctx.rng)) {
      if (check(ctx, better, neighbor, scan_origin)) {
        start = neighbor;
        moved = true;
        break;
      }
    }
    if (!moved) return start;
  }
}

Configuration run_paramils(SearchContext& ctx, const Configuration& start,
                           const SearchParams& params,
                           const BetterPredicate& better) {
  Evaluator& eval = ctx.evaluator;
  eval.set_iteration(0);
  eval.reset_incumbent(start);
  try {
    Configuration base =
        randomized_init(ctx, start, params.initial_random, better);
    Configuration ils = iterative_first_improvement(ctx, base, better);

    while (ctx.stats.ils_iterations < ctx.max_iterations) {
      ++ctx.stats.ils_iterations;
      eval.set_iteration(ctx.stats.ils_iterations);

      // Perturbation: s random one-exchange steps.
      Configuration current = ils;
      for (int i = 0; i < params.perturbation_steps; ++i) {
        auto neighbor = ctx.space.random_neighbor(current, ctx.rng);
        if (!neighbor) break;  // no feasible neighbor anywhere
        current = std::move(*neighbor);
      }

      current = iterative_first_improvement(ctx, current, better);

      if (check(ctx, better, current, ils)) ils = current;

      if (uniform01(ctx.rng) < params.restart_probability) {
        ils = ctx.space.sample_random(ctx.rng);
        ++ctx.stats.restarts;
      }
      eval.log_boundary();
    }
    ctx.stats.stop_reason = "max_iterations";
  } catch (const BudgetExhausted& e) {
    ctx.stats.stop_reason = e.which();
  }
  eval.log_boundary();
  return eval.incumbent();
}

Configuration run_random_search(SearchContext& ctx, const Configuration& start,
                                const BetterPredicate& better) {
  Evaluator& eval = ctx.evaluator;
  eval.set_iteration(0);
  eval.reset_incumbent(start);
  try {
    Configuration reference = start;
    while (ctx.stats.ils_iterations < ctx.max_iterations) {
      ++ctx.stats.ils_iterations;
      eval.set_iteration(ctx.stats.ils_iterations);
      Configuration candidate = ctx.space.sample_random(ctx.rng);
      if (check(ctx, better, candidate, reference)) reference = candidate;
      eval.log_boundary();
    }
    ctx.stats.stop_reason = "max_iterations";
  } catch (const BudgetExhausted& e) {
    ctx.stats.stop_reason = e.which();
  }
  eval.log_boundary();
  return eval.incumbent();
}

Configuration run_simple_ls(SearchContext& ctx, const Configuration& start,
                            const SearchParams& params,
                            const BetterPredicate& better) {
  Evaluator& eval = ctx.evaluator;
  eval.set_iteration(0);
  eval.reset_incumbent(start);
  try {
    Configuration base =
        randomized_init(ctx, start, params.initial_random, better);
    Configuration result = iterative_first_improvement(ctx, base, better);
    ctx.stats.stop_reason = "local_optimum";
    eval.log_boundary();
    return result;
  } catch (const BudgetExhausted& e) {
    ctx.stats.stop_reason = e.which();
  }
  eval.log_boundary();
  return eval.incumbent();
}

}  // namespace paramils
