#include "shapebandit/arm_space.hpp"

#include <algorithm>

namespace shapebandit {

ArmSpace ArmSpace::whole(Environment& env) { return range(env, 1, env.num_arms()); }

ArmSpace ArmSpace::range(Environment& env, int lo, int hi) {
  if (lo < 1 || hi > env.num_arms() || lo > hi) {
    throw InvalidRange("arm range [" + std::to_string(lo) + ", " + std::to_string(hi) + "] invalid");
  }
  ArmSpace out;
  out.env_ = &env;
  for (int k = lo; k <= hi; ++k) out.slots_.push_back({k, 0.0, false});
  return out;
}

ArmSpace ArmSpace::from_arms(Environment& env, const std::vector<int>& arms) {
  if (arms.empty()) throw InvalidRange("arm list is empty");
  ArmSpace out;
  out.env_ = &env;
  for (int k : arms) {
    if (k < 1 || k > env.num_arms()) throw InvalidArm("arm index " + std::to_string(k));
    out.slots_.push_back({k, 0.0, false});
  }
  return out;
}

ArmSpace ArmSpace::reversed() const {
  ArmSpace out = *this;
  std::reverse(out.slots_.begin(), out.slots_.end());
  return out;
}

ArmSpace ArmSpace::with_bracketing_sentinels() const {
  ArmSpace out;
  out.env_ = env_;
  out.slots_.reserve(slots_.size() + 2);
  out.slots_.push_back({0, -kSentinelValue, true});
  out.slots_.insert(out.slots_.end(), slots_.begin(), slots_.end());
  out.slots_.push_back({0, kSentinelValue, true});
  return out;
}

int ArmSpace::global_index(int local) const {
  const Slot& slot = slots_[check(local)];
  if (slot.is_sentinel) throw InvalidArm("sentinel slot has no global index");
  return slot.global;
}

double ArmSpace::true_mean(int local) const {
  const Slot& slot = slots_[check(local)];
  if (slot.is_sentinel) return slot.sentinel_value;
  return env_->instance().arms[slot.global - 1].mean();
}

double ArmSpace::sample(int local) {
  const Slot& slot = slots_[check(local)];
  if (slot.is_sentinel) return env_->sample_sentinel(slot.sentinel_value);
  return env_->sample_arm(slot.global);
}

}  // namespace shapebandit
