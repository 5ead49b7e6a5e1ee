#include "csslb/bounds.hpp"

#include <Eigen/LU>
#include <cmath>

#include <nlohmann/json.hpp>

#include "csslb/errors.hpp"

namespace csslb {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

std::string setting_name(Setting s) {
  switch (s) {
    case Setting::std_noisy: return "std_noisy";
    case Setting::std_noiseless: return "std_noiseless";
    case Setting::onebit_exact: return "onebit_exact";
    case Setting::onebit_approx: return "onebit_approx";
  }
  return "unknown";
}

double mi_bound_std_noisy(double n, int s, int d, double k1, double k2) {
  if (n < 0.0) throw RejectedParams("n must be >= 0");
  if (s < 1 || d < s) throw RejectedParams("needs 1 <= s <= d");
  const double ratio = static_cast<double>(s) * s / d;
  const double arg = 1.0 + 0.5 * s * (k1 * k1 + k2 * k2) -
                     ratio * (k1 * k1 / 4.0 + k2 * k2 / 4.0 + k1 * k2 / 2.0);
  if (!(arg > 0.0)) throw RejectedParams("nonpositive log argument in noisy MI bound");
  return 0.5 * n * std::log(arg);
}

double mi_bound_std_noiseless(double n, int s) {
  if (n < 0.0) throw RejectedParams("n must be >= 0");
  if (s < 2) throw RejectedParams("noiseless MI bound needs s >= 2");
  return 3.0 * n * std::log(std::exp(1.0) * s / 3.0);
}

std::int64_t count_noiseless_outputs(int s) {
  if (s < 1) throw RejectedParams("needs s >= 1");
  return binomial_count(s + 3, 3);
}

double mi_bound_onebit(double n) {
  if (n < 0.0) throw RejectedParams("n must be >= 0");
  return 2.0 * n * kLn2;
}

double fano_lower_bound(double mi_upper, double log_card) {
  if (!(log_card > 0.0)) throw RejectedParams("log cardinality must be positive");
  if (mi_upper < 0.0) throw RejectedParams("mutual information must be >= 0");
  return std::max(0.0, 1.0 - (mi_upper + kLn2) / log_card);
}

double noise_concentration_bound(double n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw RejectedParams("eps must lie in (0,1)");
  return 1.0 - std::exp(-eps * eps * n / 4.0);
}

double mi_slope(Setting setting, const SupportModel& model, double k1, double k2) {
  switch (setting) {
    case Setting::std_noisy:
      return mi_bound_std_noisy(1.0, model.sparsity(), model.dimension(), k1, k2);
    case Setting::std_noiseless:
      return mi_bound_std_noiseless(1.0, model.sparsity());
    case Setting::onebit_exact:
    case Setting::onebit_approx:
      return mi_bound_onebit(1.0);
  }
  throw RejectedParams("unknown setting");
}

SampleThreshold sample_threshold(Setting setting, const SupportModel& model,
                                 double k1, double k2) {
  const auto variant = (setting == Setting::onebit_exact ||
                        setting == Setting::onebit_approx)
                           ? CardinalityVariant::onebit
                           : CardinalityVariant::standard;
  const double log_card = log_cardinality_lower_bound(model, variant).value;
  if (!(log_card > 0.0))
    throw RejectedParams("log-cardinality bound must be positive for a threshold");
  const double slope = mi_slope(setting, model, k1, k2);
  if (!(slope > 0.0))
    throw RejectedParams("MI slope must be positive for a threshold");
  // fano(slope * n + ln2, log_card) = 1/2, solved for n.
  const double n = (0.5 * log_card - kLn2) / slope;
  return {n, n < 1.0};
}

BoundReport make_bound_report(Setting setting, const SupportModel& model,
                              double n, double k1, double k2) {
  const auto variant = (setting == Setting::onebit_exact ||
                        setting == Setting::onebit_approx)
                           ? CardinalityVariant::onebit
                           : CardinalityVariant::standard;
  BoundReport r;
  r.setting = setting;
  r.n = n;
  r.log_card = log_cardinality_lower_bound(model, variant).value;
  r.mi = mi_slope(setting, model, k1, k2) * n;
  r.fano = fano_lower_bound(r.mi, r.log_card);
  const auto t = sample_threshold(setting, model, k1, k2);
  r.threshold_n = t.n;
  r.vacuous = t.vacuous;
  return r;
}

std::string bound_report_to_json(const BoundReport& r) {
  nlohmann::json j;
  j["setting"] = setting_name(r.setting);
  j["n"] = r.n;
  j["log_card"] = r.log_card;
  j["mi"] = r.mi;
  j["fano"] = r.fano;
  j["threshold_n"] = r.threshold_n;
  j["vacuous"] = r.vacuous;
  return j.dump();
}

Eigen::MatrixXd joint_covariance(const Eigen::VectorXd& beta, int n, double sigma) {
  if (n < 1) throw RejectedParams("n must be >= 1");
  const int d = static_cast<int>(beta.size());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d + 1, d + 1);
  cov.topLeftCorner(d, d) = Eigen::MatrixXd::Identity(d, d) / n;
  cov.topRightCorner(d, 1) = beta / n;
  cov.bottomLeftCorner(1, d) = beta.transpose() / n;
  cov(d, d) = beta.squaredNorm() / n + sigma * sigma;
  return cov;
}

Eigen::MatrixXd averaged_covariance(const std::vector<Signal>& members, int n,
                                    double sigma) {
  if (members.empty()) throw RejectedParams("needs at least one member");
  const int d = static_cast<int>(members.front().values.size());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d + 1, d + 1);
  for (const auto& m : members) acc += joint_covariance(m.values, n, sigma);
  return acc / static_cast<double>(members.size());
}

double averaged_covariance_det_direct(const std::vector<Signal>& members,
                                      int n, double sigma) {
  if (members.empty()) throw RejectedParams("needs at least one member");
  const int d = static_cast<int>(members.front().values.size());
  double mean_sq_norm = 0.0;
  Eigen::VectorXd mean_beta = Eigen::VectorXd::Zero(d);
  for (const auto& m : members) {
    mean_sq_norm += m.values.squaredNorm();
    mean_beta += m.values;
  }
  mean_sq_norm /= static_cast<double>(members.size());
  mean_beta /= static_cast<double>(members.size());
  // Block determinant of the arrowhead form.
  const double corner = sigma * sigma + mean_sq_norm / n - mean_beta.squaredNorm() / n;
  return corner * std::pow(static_cast<double>(n), -d);
}

double mi_from_covariance(const std::vector<Signal>& members, int n, double sigma) {
  if (!(sigma > 0.0)) throw RejectedParams("sigma must be positive");
  if (members.empty()) throw RejectedParams("needs at least one member");
  const int d = static_cast<int>(members.front().values.size());
  const Eigen::MatrixXd avg = averaged_covariance(members, n, sigma);
  const double log_det_avg = std::log(avg.determinant());
  const double log_det_single = std::log(sigma * sigma) - d * std::log(static_cast<double>(n));
  return 0.5 * n * (log_det_avg - log_det_single);
}

}  // namespace csslb
