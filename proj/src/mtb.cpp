#include "shapebandit/mtb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace shapebandit {

namespace {

constexpr double kLog48 = 3.8712010109078911;  // log(48)

int explore_steps_for(int num_arms) {
  return static_cast<int>(std::ceil(6.0 * std::log(static_cast<double>(num_arms))));
}

double slot_mean(const ExploreStep& step, int slot) {
  switch (slot) {
    case 0: return step.mu_l;
    case 1: return step.mu_m;
    default: return step.mu_r;
  }
}

int slot_arm(const ExploreStep& step, int slot) {
  switch (slot) {
    case 0: return step.node.left;
    case 1: return step.node.mid;
    default: return step.node.right;
  }
}

struct LocalOutcome {
  int position = 0;  // crossing position in [1, n+1] (first local arm classified above)
  std::optional<Classification> per_arm;  // set when the round-robin fallback ran
};

// Equal round-robin sampling with per-arm classification; used whenever the
// tree walk is not applicable (K < 3 or budget < 3*T1).
LocalOutcome degenerate_fallback(ArmSpace& space, double tau, std::int64_t budget) {
  const int n = space.size();
  const std::int64_t per_arm = budget / n;
  LocalOutcome out;
  out.per_arm.emplace();
  out.per_arm->q.assign(n, -1);
  if (per_arm > 0) {
    for (int k = 1; k <= n; ++k) {
      double sum = 0.0;
      for (std::int64_t i = 0; i < per_arm; ++i) sum += space.sample(k);
      if (sum / static_cast<double>(per_arm) >= tau) out.per_arm->q[k - 1] = 1;
    }
  }
  out.position = n + 1;
  for (int k = 1; k <= n; ++k) {
    if (out.per_arm->q[k - 1] == 1) {
      out.position = k;
      break;
    }
  }
  return out;
}

// Tree walk over an increasing-mean view; crossing position in [1, n+1].
int run_walk(ArmSpace& space, double tau, std::int64_t budget, double sigma,
             EpsilonHatMode eps_mode) {
  const int n = space.size();
  const int t1 = explore_steps_for(n);
  const std::int64_t t2 = budget / (3 * static_cast<std::int64_t>(t1));
  ArmSpace augmented = space.with_bracketing_sentinels();
  ExploreHistory history = explore(augmented, tau, t1, t2);
  if (sigma != augmented.env().sigma()) {
    // eps0 follows the caller's sigma, which may differ from the instance's.
    history.eps0 = std::sqrt(2.0 * sigma * sigma * kLog48 / static_cast<double>(t2));
  }
  const double eps = eps_mode == EpsilonHatMode::threshold_distance
                         ? epsilon_hat(history, tau)
                         : epsilon_hat_true_means(history, augmented, tau);
  std::optional<int> picked = choose(eps, history, tau, augmented.env().decision_rng());
  // Cannot be empty under the threshold-distance tolerance; middle arm of the
  // last visited node as the defensive fallback.
  const int ext = picked ? *picked : history.steps.back().node.mid;
  return std::clamp(ext - 1, 1, n + 1);
}

LocalOutcome solve_increasing(ArmSpace& space, double tau, std::int64_t budget, double sigma,
                              EpsilonHatMode eps_mode) {
  const int n = space.size();
  const bool walkable =
      n >= 3 && budget >= 3 * static_cast<std::int64_t>(explore_steps_for(n));
  if (!walkable) return degenerate_fallback(space, tau, budget);
  return {run_walk(space, tau, budget, sigma, eps_mode), std::nullopt};
}

}  // namespace

ExploreHistory explore(ArmSpace& space, double tau, int t1, std::int64_t t2) {
  if (t1 < 1 || t2 < 1) throw InvalidParameter("explore needs t1 >= 1 and t2 >= 1");
  const std::int64_t needed = 3 * static_cast<std::int64_t>(t1) * t2;
  if (space.env().remaining_budget() < needed) {
    throw BudgetExhausted("explore needs " + std::to_string(needed) + " pulls");
  }

  ExploreHistory history;
  history.t1 = t1;
  history.t2 = t2;
  const double sigma = space.env().sigma();
  history.eps0 = std::sqrt(2.0 * sigma * sigma * kLog48 / static_cast<double>(t2));
  history.steps.reserve(t1);

  std::vector<TreeNode> path;  // ancestors of the current node
  TreeNode node = root_node(space.size());
  auto mean_of = [&](int local) {
    double sum = 0.0;
    for (std::int64_t i = 0; i < t2; ++i) sum += space.sample(local);
    return sum / static_cast<double>(t2);
  };

  for (int t = 0; t < t1; ++t) {
    ExploreStep step;
    step.node = node;
    step.mu_l = mean_of(node.left);
    step.mu_m = mean_of(node.mid);
    step.mu_r = mean_of(node.right);
    history.steps.push_back(step);

    if (!(step.mu_l <= tau && tau <= step.mu_r)) {
      if (!path.empty()) {
        node = path.back();
        path.pop_back();
      }
      // else P(root) = root: stay
    } else if (is_leaf(node)) {
      // stay
    } else {
      auto kids = children(node);
      path.push_back(node);
      node = (step.mu_m <= tau && tau <= step.mu_r) ? kids->second : kids->first;
    }
  }
  return history;
}

std::vector<std::optional<int>> choose_appends(double epsilon, const ExploreHistory& history,
                                               double tau, Rng& rng) {
  std::vector<std::optional<int>> appended;
  appended.reserve(history.steps.size());
  for (const ExploreStep& step : history.steps) {
    int candidates[3];
    int count = 0;
    for (int slot = 0; slot < 3; ++slot) {
      if (std::abs(slot_mean(step, slot) - tau) <= epsilon) candidates[count++] = slot;
    }
    const bool leaf_straddle =
        is_leaf(step.node) && step.mu_l + epsilon < tau && tau <= step.mu_r - epsilon;
    if (leaf_straddle && (count == 0 || candidates[count - 1] != 2)) candidates[count++] = 2;
    if (count == 0) {
      appended.emplace_back(std::nullopt);
      continue;
    }
    const int slot = count == 1 ? candidates[0]
                                : candidates[rng.uniform_int(static_cast<std::uint64_t>(count))];
    appended.emplace_back(slot_arm(step, slot));
  }
  return appended;
}

std::optional<int> choose(double epsilon, const ExploreHistory& history, double tau, Rng& rng) {
  std::vector<int> list;
  for (const auto& arm : choose_appends(epsilon, history, tau, rng)) {
    if (arm) list.push_back(*arm);
  }
  if (list.empty()) return std::nullopt;
  std::sort(list.begin(), list.end());
  return list[(list.size() - 1) / 2];  // lower median
}

double epsilon_hat(const ExploreHistory& history, double tau) {
  double min_dist = std::numeric_limits<double>::infinity();
  for (const ExploreStep& step : history.steps) {
    if (is_leaf(step.node) && step.mu_l <= tau && tau <= step.mu_r) return 2.0 * history.eps0;
    for (int slot = 0; slot < 3; ++slot) {
      min_dist = std::min(min_dist, std::abs(slot_mean(step, slot) - tau));
    }
  }
  return std::max(2.0 * history.eps0, min_dist);
}

double epsilon_hat_true_means(const ExploreHistory& history, const ArmSpace& space, double tau) {
  double min_dist = std::numeric_limits<double>::infinity();
  for (const ExploreStep& step : history.steps) {
    if (is_leaf(step.node) && step.mu_l <= tau && tau <= step.mu_r) return 2.0 * history.eps0;
    for (int slot = 0; slot < 3; ++slot) {
      min_dist =
          std::min(min_dist, std::abs(slot_mean(step, slot) - space.true_mean(slot_arm(step, slot))));
    }
  }
  return std::max(2.0 * history.eps0, min_dist);
}

int mtb_crossing_position(Environment& env, const std::vector<int>& arms, double tau,
                          std::int64_t budget, double sigma, EpsilonHatMode eps_mode) {
  ArmSpace space = ArmSpace::from_arms(env, arms);
  return solve_increasing(space, tau, budget, sigma, eps_mode).position;
}

MtbResult mtb_run(Environment& env, const MtbConfig& config) {
  const int n = env.num_arms();
  if (n == 0) throw DegenerateProblem("instance has no arms");
  if (config.budget < 1) throw BudgetExhausted("mtb needs a positive budget");

  if (config.direction == Direction::increasing) {
    ArmSpace view = ArmSpace::whole(env);
    LocalOutcome outcome = solve_increasing(view, config.tau, config.budget, config.sigma,
                                            config.eps_mode);
    MtbResult out;
    out.khat = outcome.position;
    if (outcome.per_arm) {
      out.qhat = std::move(*outcome.per_arm);
    } else {
      out.qhat.q.assign(n, -1);
      for (int k = out.khat; k <= n; ++k) out.qhat.q[k - 1] = 1;
    }
    return out;
  }

  // Decreasing: relabel i -> K+1-i, solve the increasing problem, map back.
  ArmSpace view = ArmSpace::whole(env).reversed();
  LocalOutcome outcome = solve_increasing(view, config.tau, config.budget, config.sigma,
                                          config.eps_mode);
  MtbResult out;
  out.khat = n + 1 - outcome.position;  // largest arm classified above
  out.qhat.q.assign(n, -1);
  if (outcome.per_arm) {
    for (int k = 1; k <= n; ++k) out.qhat.q[k - 1] = outcome.per_arm->q[n - k];
  } else {
    for (int k = 1; k <= out.khat; ++k) out.qhat.q[k - 1] = 1;
  }
  return out;
}

std::int64_t mtb_fc_budget(int K, double epsilon, double delta, double sigma) {
  if (K < 2) throw InvalidParameter("mtb_fc_budget needs K >= 2");
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must be in (0, 1)");
  const double logK = std::log(static_cast<double>(K));
  const double s2 = sigma * sigma;
  double value;
  if (delta >= std::pow(static_cast<double>(K), -0.75)) {
    value = 21.0 * s2 * logK / (epsilon * epsilon) + 12.0 * logK;
  } else {
    value = 432.0 * s2 * logK * std::log(9.0 / delta) / (epsilon * epsilon) + 12.0 * logK;
  }
  return static_cast<std::int64_t>(std::floor(value));
}

MtbResult mtb_anytime(Environment& env, double tau, double sigma,
                      std::optional<std::int64_t> stop_after_pulls, EpsilonHatMode eps_mode) {
  const int n = env.num_arms();
  if (n == 0) throw DegenerateProblem("instance has no arms");
  env.set_stop_after(stop_after_pulls);

  MtbResult last;
  last.khat = n + 1;
  last.qhat.q.assign(n, -1);  // all-below when no run completes

  std::int64_t budget =
      static_cast<std::int64_t>(std::floor(6.0 * std::log(static_cast<double>(n)))) + 1;
  MtbConfig config{tau, budget, sigma, Direction::increasing, eps_mode};
  try {
    while (true) {
      config.budget = budget;
      last = mtb_run(env, config);
      if (budget > std::numeric_limits<std::int64_t>::max() / 4) break;
      budget *= 2;
    }
  } catch (const StopSignal&) {
    // abandoned run; keep the last completed output
  } catch (const BudgetExhausted&) {
    // environment cap acts as the stop signal
  }
  env.set_stop_after(std::nullopt);
  return last;
}

}  // namespace shapebandit
