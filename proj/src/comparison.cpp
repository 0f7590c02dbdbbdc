#include "comparison.hpp"

#include "errors.hpp"

namespace paramils {

bool better_n(ComparisonContext& ctx, const Configuration& candidate,
              const Configuration& reference) {
  Evaluator& eval = *ctx.evaluator;
  if (ctx.fixed_n < 1) throw ValidationError("better_n needs fixed_n >= 1");
  const CostEstimate ref = eval.objective(reference, ctx.fixed_n);
  const double bound = ctx.capping_enabled() ? ref.value : kInfiniteBound;
  const CostEstimate cand = eval.objective(candidate, ctx.fixed_n, bound);
  return estimate_leq(cand, ref);
}

bool dominates(Evaluator& evaluator, const Configuration& lhs,
               const Configuration& rhs, double bound) {
  const int n_rhs = evaluator.run_count(rhs);
  if (evaluator.run_count(lhs) < n_rhs) return false;
  if (n_rhs == 0) return true;  // nothing to compare against
  const double left = evaluator.objective(lhs, n_rhs, bound).value;
  const double right = evaluator.objective(rhs, n_rhs, bound).value;
  return left <= right;
}

bool better_foc(ComparisonContext& ctx, const Configuration& candidate,
                const Configuration& reference) {
  Evaluator& eval = *ctx.evaluator;
  ctx.bonus_counter += 1;

  // theta_min/theta_max fixed on entry by run counts; equal counts charge a
  // second bonus increment.
  const Configuration* theta_min = &candidate;
  const Configuration* theta_max = &reference;
  if (eval.run_count(candidate) <= eval.run_count(reference)) {
    if (eval.run_count(candidate) == eval.run_count(reference))
      ctx.bonus_counter += 1;
  } else {
    theta_min = &reference;
    theta_max = &candidate;
  }

  ctx.last_loop_iterations = 0;
  bool candidate_wins = false;
  while (true) {
    ++ctx.last_loop_iterations;
    const int i = eval.run_count(*theta_min) + 1;
    // The leader is evaluated unbounded; its estimate bounds everything else
    // in this iteration.
    const CostEstimate max_estimate = eval.objective(*theta_max, i);
    const double bound =
        ctx.capping_enabled() ? max_estimate.value : kInfiniteBound;
    eval.objective(*theta_min, i, bound);

    candidate_wins = dominates(eval, candidate, reference, bound);
    if (candidate_wins || dominates(eval, reference, candidate, bound)) break;
  }

  if (!candidate_wins) return false;

  // Bonus runs for the winner, then reset the counter.
  const int target = eval.run_count(candidate) +
                     static_cast<int>(ctx.bonus_counter);
  eval.objective(candidate, target);
  ctx.bonus_counter = 0;
  return true;
}

}  // namespace paramils
