#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shapebandit/rng.hpp"

namespace shapebandit {

struct BudgetExhausted : std::runtime_error {
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};
struct InvalidArm : std::out_of_range {
  explicit InvalidArm(const std::string& what) : std::out_of_range(what) {}
};
struct InvalidClassification : std::invalid_argument {
  explicit InvalidClassification(const std::string& what) : std::invalid_argument(what) {}
};
struct InvalidParameter : std::invalid_argument {
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};
struct InvalidRange : std::invalid_argument {
  explicit InvalidRange(const std::string& what) : std::invalid_argument(what) {}
};
struct DegenerateProblem : std::invalid_argument {
  explicit DegenerateProblem(const std::string& what) : std::invalid_argument(what) {}
};
// Raised by Environment when an anytime stop signal fires mid-pull.
struct StopSignal : std::runtime_error {
  StopSignal() : std::runtime_error("stop signal fired") {}
};

enum class Shape { none, monotone, unimodal, concave };

std::string to_string(Shape shape);
Shape shape_from_string(const std::string& name);

struct ArmDistribution {
  enum class Kind { bernoulli, gaussian, deterministic };

  Kind kind = Kind::deterministic;
  double a = 0.0;  // p / mean / value
  double b = 0.0;  // gaussian sigma, unused otherwise

  static ArmDistribution bernoulli(double p);
  static ArmDistribution gaussian(double mean, double sigma);
  static ArmDistribution deterministic(double value);

  double mean() const { return a; }
  double sample(Rng& rng) const;
};

struct BanditInstance {
  std::vector<ArmDistribution> arms;
  double tau = 0.0;
  Shape shape = Shape::none;
  double sigma = 1.0;  // sub-Gaussian scale claimed for all arms

  int num_arms() const { return static_cast<int>(arms.size()); }
  std::vector<double> means() const;

  // Checks the type invariants (shape validity, bounded means, sigma
  // consistency); throws InvalidParameter on violation.
  void check() const;
};

struct Classification {
  std::vector<int> q;  // entries are exactly +1 / -1

  int size() const { return static_cast<int>(q.size()); }
  bool operator==(const Classification& other) const { return q == other.q; }
};

// Q_k = 2*1{mu_k >= tau} - 1 (weak inequality: mu_k == tau classifies +1).
Classification true_classification(const BanditInstance& instance);

// Largest gap |tau - mu_k| over misclassified arms; 0 when none are.
double simple_regret(const BanditInstance& instance, const Classification& qhat);

// monotone: nondecreasing; unimodal: nondecreasing then nonincreasing;
// concave: midpoint condition on all interior indices 2..K-1.
bool validate_shape(const std::vector<double>& means, Shape shape);

// Budget-capped sampling front end for one episode. Owns two derived RNG
// streams: one for reward draws, one for algorithmic randomness, so that
// decision draws never perturb the reward sequence.
class Environment {
 public:
  Environment(BanditInstance instance, std::uint64_t seed,
              std::optional<std::int64_t> budget_cap = std::nullopt);

  Environment(const Environment&) = delete;
  Environment& operator=(const Environment&) = delete;

  // Draws from arm k (1-based). Throws InvalidArm / BudgetExhausted.
  double sample_arm(int k);

  // Draws the given deterministic sentinel value, consuming one budget unit.
  double sample_sentinel(double value);

  const BanditInstance& instance() const { return instance_; }
  int num_arms() const { return instance_.num_arms(); }
  double tau() const { return instance_.tau; }
  double sigma() const { return instance_.sigma; }

  std::int64_t pulls_used() const { return pulls_used_; }
  std::int64_t sentinel_pulls() const { return sentinel_pulls_; }
  const std::vector<std::int64_t>& per_arm_counts() const { return per_arm_counts_; }
  std::optional<std::int64_t> budget_cap() const { return budget_cap_; }

  // Pulls left before the cap (a large value when uncapped).
  std::int64_t remaining_budget() const;

  // Anytime support: the pull that would make pulls_used exceed this threshold
  // throws StopSignal instead.
  void set_stop_after(std::optional<std::int64_t> pulls) { stop_after_ = pulls; }

  Rng& decision_rng() { return decision_rng_; }

 private:
  void charge_one_pull();

  BanditInstance instance_;
  Rng reward_rng_;
  Rng decision_rng_;
  std::optional<std::int64_t> budget_cap_;
  std::optional<std::int64_t> stop_after_;
  std::int64_t pulls_used_ = 0;
  std::int64_t sentinel_pulls_ = 0;
  std::vector<std::int64_t> per_arm_counts_;
};

// Instance JSON schema:
//   {"kind": "bernoulli"|"gaussian"|"deterministic", "means": [...],
//    "sigma": number, "tau": number,
//    "shape": "none"|"monotone"|"unimodal"|"concave"}
// gaussian additionally permits "arm_sigmas": [...] as a per-arm override.
std::string instance_to_json(const BanditInstance& instance);
BanditInstance instance_from_json(const std::string& text);
void save_instance(const BanditInstance& instance, const std::string& path);
BanditInstance load_instance(const std::string& path);

}  // namespace shapebandit
