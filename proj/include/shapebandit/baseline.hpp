#pragma once

#include <cstdint>

#include "shapebandit/arm_space.hpp"
#include "shapebandit/core.hpp"

namespace shapebandit {

// Samples every arm floor(budget/K) times and classifies each by its
// empirical mean against tau (>= classifies +1). Leftover budget is unspent.
Classification uniform_run(Environment& env, double tau, std::int64_t budget);

// Fixed-confidence budget of the (eps, delta)-PAC corollary for Uniform:
// floor(2 sigma^2 K log(2K/delta) / eps^2) + K.
std::int64_t uniform_fc_budget(int K, double epsilon, double delta, double sigma);

// TOP-1 subroutine: MOSS index policy, returning an arm drawn with
// probability proportional to its pull count. Local 1-based index into the
// view. Ties in the index break toward the lowest arm.
int moss_top1(ArmSpace& space, std::int64_t budget);
int moss_top1(Environment& env, std::int64_t budget);

}  // namespace shapebandit
