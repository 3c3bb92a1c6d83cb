#pragma once

#include <vector>

#include "shapebandit/core.hpp"

namespace shapebandit {

// Finite stand-in for the paper's infinite-mean virtual arms.
inline constexpr double kSentinelValue = 1e9;

// A local 1-based view over a subset of an environment's arms, possibly
// reversed and possibly padded with deterministic sentinel arms. All
// algorithms sample through a view so that sub-problems (UTB stages, CTB
// log-sets, DEC relabelings) share one budget authority.
class ArmSpace {
 public:
  static ArmSpace whole(Environment& env);
  static ArmSpace range(Environment& env, int lo, int hi);
  static ArmSpace from_arms(Environment& env, const std::vector<int>& arms);

  // Same arms in reversed local order.
  ArmSpace reversed() const;
  // Pads with a low sentinel in front and a high sentinel at the back, so the
  // threshold is always bracketed by the view's extreme means.
  ArmSpace with_bracketing_sentinels() const;

  int size() const { return static_cast<int>(slots_.size()); }
  bool is_sentinel(int local) const { return slots_[check(local)].is_sentinel; }
  // Global arm index of a non-sentinel slot.
  int global_index(int local) const;
  double true_mean(int local) const;
  double sample(int local);

  Environment& env() { return *env_; }

 private:
  struct Slot {
    int global = 0;
    double sentinel_value = 0.0;
    bool is_sentinel = false;
  };

  int check(int local) const {
    if (local < 1 || local > size()) throw InvalidArm("local arm index out of range");
    return local - 1;
  }

  Environment* env_ = nullptr;
  std::vector<Slot> slots_;
};

}  // namespace shapebandit
