#pragma once

#include <cstdint>

#include "shapebandit/core.hpp"
#include "shapebandit/mtb.hpp"

namespace shapebandit {

// Unimodal solver: SR (MOSS top-1) on floor(T/4), MTB on {1..m_hat} and
// DEC-MTB on {m_hat..K} each on floor(T/8), then a verification stage that
// samples {m_hat, l_hat, r_hat, l_hat-1, r_hat+1} floor(T/10) times each and
// accepts the interval {l_hat..r_hat} only if both ends look like genuine
// threshold crossings (or sit closer to tau than the peak estimate).
// Budgets below 40 fall back to uniform_run.
Classification utb_run(Environment& env, double tau, std::int64_t budget,
                       EpsilonHatMode eps_mode = EpsilonHatMode::threshold_distance);

}  // namespace shapebandit
