#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "shapebandit/arm_space.hpp"
#include "shapebandit/core.hpp"
#include "shapebandit/tree.hpp"

namespace shapebandit {

enum class Direction { increasing, decreasing };

// Which quantity the adaptive tolerance minimizes over the history. The
// threshold-distance form is the implementable characterization ("smallest
// parameter greater than 2*eps0 such that the candidate list is non-empty");
// the true-mean form matches the displayed formula and needs oracle access.
enum class EpsilonHatMode { threshold_distance, true_mean_distance };

struct ExploreStep {
  TreeNode node;
  double mu_l = 0.0;
  double mu_m = 0.0;
  double mu_r = 0.0;
};

struct ExploreHistory {
  std::vector<ExploreStep> steps;
  int t1 = 0;
  std::int64_t t2 = 0;
  double eps0 = 0.0;  // sqrt(2 sigma^2 log 48 / T2)
};

struct MtbConfig {
  double tau = 0.0;
  std::int64_t budget = 0;
  double sigma = 1.0;
  Direction direction = Direction::increasing;
  EpsilonHatMode eps_mode = EpsilonHatMode::threshold_distance;
};

struct MtbResult {
  // direction == increasing: khat in [1, K+1], qhat[k] = +1 iff k >= khat
  //   (khat = K+1 encodes "no arm above threshold").
  // direction == decreasing: khat in [0, K], qhat[k] = +1 iff k <= khat.
  // Degenerate fallback runs classify per-arm instead of as a step function.
  int khat = 0;
  Classification qhat;
};

// Random walk with corrections on the view's binary tree: t1 steps, each
// sampling the current node's three slots t2 times. Transition priority:
// (1) tau outside [mu_l, mu_r] -> parent (stack pop; P(root) = root),
// (2) leaf -> stay, (3) mu_m <= tau <= mu_r -> right child,
// (4) mu_l <= tau <= mu_m -> left child.
ExploreHistory explore(ArmSpace& space, double tau, int t1, std::int64_t t2);

// Per-step appended arm (local index) of the candidate-selection scan; at most
// one arm per step, ties broken uniformly via rng.
std::vector<std::optional<int>> choose_appends(double epsilon, const ExploreHistory& history,
                                               double tau, Rng& rng);

// Lower median (by ascending arm index) of the appended candidates; nullopt
// when no step qualified.
std::optional<int> choose(double epsilon, const ExploreHistory& history, double tau, Rng& rng);

// max(2*eps0, min over steps and slots of |mu_hat - tau|), collapsing to
// 2*eps0 as soon as some leaf straddles the threshold.
double epsilon_hat(const ExploreHistory& history, double tau);

// Audit variant: distances to the true means of the walked slots (the paper's
// literal display). `space` must be the sentinel-augmented view explore used.
double epsilon_hat_true_means(const ExploreHistory& history, const ArmSpace& space);

// Full MTB episode over the environment's arms. Uses the proper tree walk when
// K >= 3 and budget >= 3*T1 with T1 = ceil(6 log K); otherwise falls back to
// equal round-robin sampling with per-arm classification.
MtbResult mtb_run(Environment& env, const MtbConfig& config);

// MTB over an explicit list of global arms whose means are nondecreasing along
// the list. Returns the list position in [1, n+1] of the first arm classified
// above threshold.
int mtb_crossing_position(Environment& env, const std::vector<int>& arms, double tau,
                          std::int64_t budget, double sigma,
                          EpsilonHatMode eps_mode = EpsilonHatMode::threshold_distance);

// Fixed-confidence budget of the (eps, delta)-PAC corollary for MTB.
std::int64_t mtb_fc_budget(int K, double epsilon, double delta, double sigma);

// Doubling wrapper: runs MTB from scratch with budgets B, 2B, 4B, ...
// (B = floor(6 log K) + 1) until the environment's stop signal fires; returns
// the output of the last completed run, or an all-below classification when
// none completed.
MtbResult mtb_anytime(Environment& env, double tau, double sigma,
                      std::optional<std::int64_t> stop_after_pulls,
                      EpsilonHatMode eps_mode = EpsilonHatMode::threshold_distance);

}  // namespace shapebandit
