#include "shapebandit/core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace shapebandit {

std::string to_string(Shape shape) {
  switch (shape) {
    case Shape::none: return "none";
    case Shape::monotone: return "monotone";
    case Shape::unimodal: return "unimodal";
    case Shape::concave: return "concave";
  }
  return "none";
}

Shape shape_from_string(const std::string& name) {
  if (name == "none") return Shape::none;
  if (name == "monotone") return Shape::monotone;
  if (name == "unimodal") return Shape::unimodal;
  if (name == "concave") return Shape::concave;
  throw InvalidParameter("unknown shape: " + name);
}

ArmDistribution ArmDistribution::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("bernoulli p must be in [0,1]");
  return {Kind::bernoulli, p, 0.0};
}

ArmDistribution ArmDistribution::gaussian(double mean, double sigma) {
  if (!(sigma >= 0.0)) throw InvalidParameter("gaussian sigma must be >= 0");
  return {Kind::gaussian, mean, sigma};
}

ArmDistribution ArmDistribution::deterministic(double value) {
  return {Kind::deterministic, value, 0.0};
}

double ArmDistribution::sample(Rng& rng) const {
  switch (kind) {
    case Kind::bernoulli: return rng.bernoulli(a) ? 1.0 : 0.0;
    case Kind::gaussian: return a + b * rng.normal();
    case Kind::deterministic: return a;
  }
  return a;
}

std::vector<double> BanditInstance::means() const {
  std::vector<double> out;
  out.reserve(arms.size());
  for (const auto& arm : arms) out.push_back(arm.mean());
  return out;
}

void BanditInstance::check() const {
  if (arms.empty()) throw InvalidParameter("instance needs at least one arm");
  if (!(sigma >= 0.0)) throw InvalidParameter("sigma must be >= 0");
  for (const auto& arm : arms) {
    if (arm.kind == ArmDistribution::Kind::gaussian && arm.b > sigma) {
      throw InvalidParameter("declared sigma smaller than a per-arm gaussian sigma");
    }
  }
  if (shape != Shape::none && !validate_shape(means(), shape)) {
    throw InvalidParameter("means do not satisfy declared shape " + to_string(shape));
  }
}

Classification true_classification(const BanditInstance& instance) {
  Classification out;
  out.q.reserve(instance.arms.size());
  for (const auto& arm : instance.arms) {
    out.q.push_back(arm.mean() >= instance.tau ? 1 : -1);
  }
  return out;
}

double simple_regret(const BanditInstance& instance, const Classification& qhat) {
  if (qhat.size() != instance.num_arms()) {
    throw InvalidClassification("classification length != number of arms");
  }
  const Classification truth = true_classification(instance);
  double worst = 0.0;
  for (int k = 0; k < instance.num_arms(); ++k) {
    if (qhat.q[k] != truth.q[k]) {
      worst = std::max(worst, std::abs(instance.tau - instance.arms[k].mean()));
    }
  }
  return worst;
}

bool validate_shape(const std::vector<double>& means, Shape shape) {
  const int n = static_cast<int>(means.size());
  switch (shape) {
    case Shape::none:
      return true;
    case Shape::monotone:
      for (int k = 0; k + 1 < n; ++k) {
        if (means[k] > means[k + 1]) return false;
      }
      return true;
    case Shape::unimodal: {
      int k = 0;
      while (k + 1 < n && means[k] <= means[k + 1]) ++k;
      while (k + 1 < n && means[k] >= means[k + 1]) ++k;
      return k == n - 1;
    }
    case Shape::concave:
      for (int k = 1; k + 1 < n; ++k) {
        if (0.5 * means[k - 1] + 0.5 * means[k + 1] > means[k]) return false;
      }
      return true;
  }
  return false;
}

Environment::Environment(BanditInstance instance, std::uint64_t seed,
                         std::optional<std::int64_t> budget_cap)
    : instance_(std::move(instance)),
      reward_rng_(derive_seed(seed, "reward", 0)),
      decision_rng_(derive_seed(seed, "decision", 0)),
      budget_cap_(budget_cap),
      per_arm_counts_(instance_.arms.size(), 0) {}

void Environment::charge_one_pull() {
  if (stop_after_ && pulls_used_ >= *stop_after_) throw StopSignal();
  if (budget_cap_ && pulls_used_ >= *budget_cap_) {
    throw BudgetExhausted("budget cap of " + std::to_string(*budget_cap_) + " pulls reached");
  }
  ++pulls_used_;
}

double Environment::sample_arm(int k) {
  if (k < 1 || k > num_arms()) {
    throw InvalidArm("arm index " + std::to_string(k) + " outside 1.." + std::to_string(num_arms()));
  }
  charge_one_pull();
  ++per_arm_counts_[k - 1];
  return instance_.arms[k - 1].sample(reward_rng_);
}

double Environment::sample_sentinel(double value) {
  charge_one_pull();
  ++sentinel_pulls_;
  return value;
}

std::int64_t Environment::remaining_budget() const {
  if (!budget_cap_) return std::numeric_limits<std::int64_t>::max() / 2;
  return *budget_cap_ - pulls_used_;
}

namespace {

std::string kind_to_string(ArmDistribution::Kind kind) {
  switch (kind) {
    case ArmDistribution::Kind::bernoulli: return "bernoulli";
    case ArmDistribution::Kind::gaussian: return "gaussian";
    case ArmDistribution::Kind::deterministic: return "deterministic";
  }
  return "deterministic";
}

}  // namespace

std::string instance_to_json(const BanditInstance& instance) {
  nlohmann::json j;
  if (instance.arms.empty()) throw InvalidParameter("cannot serialize an empty instance");
  const auto kind = instance.arms.front().kind;
  for (const auto& arm : instance.arms) {
    if (arm.kind != kind) throw InvalidParameter("instance JSON requires a homogeneous arm kind");
  }
  j["kind"] = kind_to_string(kind);
  j["means"] = instance.means();
  j["sigma"] = instance.sigma;
  j["tau"] = instance.tau;
  j["shape"] = to_string(instance.shape);
  if (kind == ArmDistribution::Kind::gaussian) {
    bool uniform_sigma = true;
    for (const auto& arm : instance.arms) {
      if (arm.b != instance.arms.front().b) uniform_sigma = false;
    }
    if (!uniform_sigma || instance.arms.front().b != instance.sigma) {
      std::vector<double> arm_sigmas;
      for (const auto& arm : instance.arms) arm_sigmas.push_back(arm.b);
      j["arm_sigmas"] = arm_sigmas;
    }
  }
  return j.dump(2);
}

BanditInstance instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidParameter(std::string("instance JSON parse error: ") + e.what());
  }
  BanditInstance out;
  const std::string kind = j.at("kind").get<std::string>();
  const std::vector<double> means = j.at("means").get<std::vector<double>>();
  out.tau = j.at("tau").get<double>();
  out.sigma = j.value("sigma", 1.0);
  out.shape = shape_from_string(j.value("shape", std::string("none")));
  if (kind == "bernoulli") {
    for (double m : means) out.arms.push_back(ArmDistribution::bernoulli(m));
  } else if (kind == "gaussian") {
    std::vector<double> arm_sigmas(means.size(), out.sigma);
    if (j.contains("arm_sigmas")) {
      arm_sigmas = j.at("arm_sigmas").get<std::vector<double>>();
      if (arm_sigmas.size() != means.size()) {
        throw InvalidParameter("arm_sigmas length != means length");
      }
    }
    for (std::size_t i = 0; i < means.size(); ++i) {
      out.arms.push_back(ArmDistribution::gaussian(means[i], arm_sigmas[i]));
    }
  } else if (kind == "deterministic") {
    for (double m : means) out.arms.push_back(ArmDistribution::deterministic(m));
  } else {
    throw InvalidParameter("unknown arm kind: " + kind);
  }
  out.check();
  return out;
}

void save_instance(const BanditInstance& instance, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InvalidParameter("cannot open " + path + " for writing");
  f << instance_to_json(instance) << "\n";
}

BanditInstance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidParameter("cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return instance_from_json(buf.str());
}

}  // namespace shapebandit
