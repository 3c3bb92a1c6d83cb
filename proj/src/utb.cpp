#include "shapebandit/utb.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "shapebandit/baseline.hpp"

namespace shapebandit {

namespace {

// Empirical mean of `count` draws; out-of-range indices resolve to the low
// sentinel (beyond the support means below threshold in the decision rule).
double stage_mean(Environment& env, int arm, std::int64_t count) {
  double sum = 0.0;
  if (arm < 1 || arm > env.num_arms()) {
    for (std::int64_t i = 0; i < count; ++i) sum += env.sample_sentinel(-kSentinelValue);
  } else {
    for (std::int64_t i = 0; i < count; ++i) sum += env.sample_arm(arm);
  }
  return sum / static_cast<double>(count);
}

}  // namespace

Classification utb_run(Environment& env, double tau, std::int64_t budget,
                       EpsilonHatMode eps_mode) {
  const int n = env.num_arms();
  if (n == 0) throw DegenerateProblem("instance has no arms");
  if (budget < 40) return uniform_run(env, tau, budget);

  const std::int64_t sr_budget = budget / 4;
  const std::int64_t mtb_budget = budget / 8;
  const std::int64_t verify_each = budget / 10;

  const int m_hat = moss_top1(env, sr_budget);

  std::vector<int> left_arms(m_hat);
  std::iota(left_arms.begin(), left_arms.end(), 1);
  const int l_hat = mtb_crossing_position(env, left_arms, tau, mtb_budget, env.sigma(), eps_mode);

  std::vector<int> right_arms_reversed(n - m_hat + 1);
  for (int i = 0; i < static_cast<int>(right_arms_reversed.size()); ++i) {
    right_arms_reversed[i] = n - i;  // {K, K-1, ..., m_hat}: nondecreasing means
  }
  const int rev_pos = mtb_crossing_position(env, right_arms_reversed, tau, mtb_budget,
                                            env.sigma(), eps_mode);
  const int r_hat = n + 1 - rev_pos - (m_hat - 1);  // largest arm classified above, global
  // rev position p maps to global arm n+1-p within {m_hat..K}; p = size+1
  // (nothing above) lands at m_hat-1, an empty interval below.

  const double mu_m = stage_mean(env, m_hat, verify_each);
  const double mu_l = stage_mean(env, l_hat, verify_each);
  const double mu_r = stage_mean(env, r_hat, verify_each);
  const double mu_l_minus = stage_mean(env, l_hat - 1, verify_each);
  const double mu_r_plus = stage_mean(env, r_hat + 1, verify_each);

  const bool left_ok =
      (mu_l_minus < tau && tau < mu_l) || (std::abs(mu_l - tau) <= mu_m - tau);
  const bool right_ok =
      (mu_r_plus < tau && tau < mu_r) || (std::abs(mu_r - tau) <= mu_m - tau);

  Classification out;
  out.q.assign(n, -1);
  if (left_ok && right_ok) {
    for (int k = std::max(1, l_hat); k <= std::min(n, r_hat); ++k) out.q[k - 1] = 1;
  }
  return out;
}

}  // namespace shapebandit
