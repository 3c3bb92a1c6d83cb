#include "shapebandit/baseline.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace shapebandit {

Classification uniform_run(Environment& env, double tau, std::int64_t budget) {
  const int n = env.num_arms();
  if (budget < n) {
    throw BudgetExhausted("uniform needs budget >= K (" + std::to_string(n) + ")");
  }
  const std::int64_t per_arm = budget / n;
  Classification out;
  out.q.assign(n, -1);
  for (int k = 1; k <= n; ++k) {
    double sum = 0.0;
    for (std::int64_t i = 0; i < per_arm; ++i) sum += env.sample_arm(k);
    if (sum / static_cast<double>(per_arm) >= tau) out.q[k - 1] = 1;
  }
  return out;
}

std::int64_t uniform_fc_budget(int K, double epsilon, double delta, double sigma) {
  if (K < 1) throw InvalidParameter("uniform_fc_budget needs K >= 1");
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must be in (0, 1)");
  const double value =
      2.0 * sigma * sigma * K * std::log(2.0 * K / delta) / (epsilon * epsilon);
  return static_cast<std::int64_t>(std::floor(value)) + K;
}

namespace {

struct HeapEntry {
  double index;
  std::int64_t count_at_push;
  int arm;
};

struct HeapLess {
  // Max-heap on the index; equal keys prefer the lowest arm.
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.index != b.index) return a.index < b.index;
    return a.arm > b.arm;
  }
};

}  // namespace

int moss_top1(ArmSpace& space, std::int64_t budget) {
  const int n = space.size();
  if (budget < n) {
    throw BudgetExhausted("moss needs budget >= K (" + std::to_string(n) + ")");
  }
  const double sigma = space.env().sigma();
  std::vector<double> sums(n, 0.0);
  std::vector<std::int64_t> counts(n, 0);

  auto moss_index = [&](int arm) {
    const double nk = static_cast<double>(counts[arm]);
    const double bonus_arg =
        std::max(0.0, std::log(static_cast<double>(budget) / (static_cast<double>(n) * nk)));
    return sums[arm] / nk + sigma * std::sqrt(bonus_arg / nk);
  };

  // Only the pulled arm's index changes, so a lazy max-heap keeps each pull
  // O(log K); stale entries are detected by the stored pull count.
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess> heap;
  for (int k = 1; k <= n; ++k) {
    sums[k - 1] += space.sample(k);
    counts[k - 1] = 1;
  }
  for (int k = 0; k < n; ++k) heap.push({moss_index(k), 1, k});

  for (std::int64_t t = n; t < budget; ++t) {
    HeapEntry top = heap.top();
    while (top.count_at_push != counts[top.arm]) {
      heap.pop();
      heap.push({moss_index(top.arm), counts[top.arm], top.arm});
      top = heap.top();
    }
    sums[top.arm] += space.sample(top.arm + 1);
    ++counts[top.arm];
  }

  // m_hat drawn with probability N_k / budget.
  std::int64_t ticket = static_cast<std::int64_t>(
      space.env().decision_rng().uniform_int(static_cast<std::uint64_t>(budget)));
  for (int k = 0; k < n; ++k) {
    if (ticket < counts[k]) return k + 1;
    ticket -= counts[k];
  }
  return n;
}

int moss_top1(Environment& env, std::int64_t budget) {
  ArmSpace space = ArmSpace::whole(env);
  return moss_top1(space, budget);
}

}  // namespace shapebandit
