// bounds.hpp — closed-form mutual-information bounds, the Fano error lower
// bound, noise concentration, and sample-complexity thresholds.
//
// All logarithms are natural; "log 2" in the Fano expression is ln 2.
#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <cstdint>
#include <string>
#include <vector>

#include "csslb/ensembles.hpp"
#include "csslb/graph_model.hpp"

namespace csslb {

enum class Setting { std_noisy, std_noiseless, onebit_exact, onebit_approx };

std::string setting_name(Setting s);

// (n/2) ln(1 + (s/2)k1^2 + (s/2)k2^2 - (s^2/d)(k1^2/4 + k2^2/4 + k1 k2/2)).
// Throws RejectedParams when the log argument is nonpositive.
double mi_bound_std_noisy(double n, int s, int d, double k1, double k2);

// 3n ln(e s / 3); requires s >= 2 (nonpositive otherwise).
double mi_bound_std_noiseless(double n, int s);

// Number of values one noiseless Bernoulli measurement of a two-level
// s-sparse signal can take: C(s+3, 3).
std::int64_t count_noiseless_outputs(int s);

// 2n ln 2, noisy or noiseless sign measurements.
double mi_bound_onebit(double n);

// max(0, 1 - (mi_upper + ln 2) / log_card); requires log_card > 0, mi >= 0.
double fano_lower_bound(double mi_upper, double log_card);

// Lower bound on P(||e||^2 <= sigma^2 n / (1-eps)): 1 - exp(-eps^2 n / 4).
double noise_concentration_bound(double n, double eps);

// Per-sample slope of the setting's MI bound (the bounds above are linear
// in n). k1, k2 are used only by std_noisy.
double mi_slope(Setting setting, const SupportModel& model, double k1 = 0.0,
                double k2 = 0.0);

struct SampleThreshold {
  double n = 0.0;       // largest real n with Fano lower bound >= 1/2
  bool vacuous = false; // n < 1: no integer sample count is covered
};

// Solves 1 - (slope*n + ln 2)/L = 1/2 with L the model's closed-form
// log-cardinality bound (standard variant for std settings, onebit
// otherwise).
SampleThreshold sample_threshold(Setting setting, const SupportModel& model,
                                 double k1 = 0.0, double k2 = 0.0);

struct BoundReport {
  Setting setting = Setting::onebit_exact;
  double n = 0.0;
  double log_card = 0.0;
  double mi = 0.0;
  double fano = 0.0;
  double threshold_n = 0.0;
  bool vacuous = false;
};

BoundReport make_bound_report(Setting setting, const SupportModel& model,
                              double n, double k1 = 0.0, double k2 = 0.0);

// {"setting":...,"n":...,"log_card":...,"mi":...,"fano":...,
//  "threshold_n":...,"vacuous":...}
std::string bound_report_to_json(const BoundReport& r);

// --- joint-normal covariance identities (noisy standard) -----------------
//
// For a Gaussian design row x and y = <x, beta> + e, the pair (x, y) is
// N(0, Sigma_beta) with the arrowhead covariance below; its determinant is
// sigma^2 / n^d independently of beta, and the determinant of the averaged
// covariance yields exactly the noisy-standard MI bound.

Eigen::MatrixXd joint_covariance(const Eigen::VectorXd& beta, int n, double sigma);

Eigen::MatrixXd averaged_covariance(const std::vector<Signal>& members, int n,
                                    double sigma);

// Closed-form det of the averaged covariance (block-determinant route).
double averaged_covariance_det_direct(const std::vector<Signal>& members,
                                      int n, double sigma);

// (n/2) [ln det(averaged covariance) - ln(sigma^2/n^d)].
double mi_from_covariance(const std::vector<Signal>& members, int n, double sigma);

}  // namespace csslb
