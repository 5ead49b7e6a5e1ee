#include "csslb/sensing.hpp"

#include <cmath>

#include "csslb/errors.hpp"

namespace csslb {

double sign_pm(double x) { return x < 0.0 ? -1.0 : 1.0; }

Eigen::MatrixXd make_design(DesignKind kind, int n, int d, Rng& rng) {
  if (n < 1 || d < 1) throw RejectedParams("design needs n, d >= 1");
  Eigen::MatrixXd x(n, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      x(i, j) = kind == DesignKind::gaussian ? scale * rng.normal()
                                             : (rng.coin() ? scale : -scale);
    }
  }
  return x;
}

MeasurementSet measure(const Eigen::MatrixXd& x, const Signal& beta,
                       double sigma, Channel channel, Rng& rng) {
  if (x.cols() != beta.values.size())
    throw RejectedParams("design width must match signal dimension");
  if (sigma < 0.0) throw RejectedParams("sigma must be >= 0");
  const int n = static_cast<int>(x.rows());
  MeasurementSet ms;
  ms.sigma = sigma;
  ms.channel = channel;
  ms.noise = Eigen::VectorXd::Zero(n);
  if (sigma > 0.0)
    for (int i = 0; i < n; ++i) ms.noise[i] = sigma * rng.normal();
  ms.y = x * beta.values + ms.noise;
  if (channel == Channel::onebit)
    for (int i = 0; i < n; ++i) ms.y[i] = sign_pm(ms.y[i]);
  return ms;
}

RipEstimate rip_expectation_check(DesignKind kind, const Eigen::VectorXd& beta,
                                  int n, int trials, Rng& rng) {
  if (trials < 100) throw RejectedParams("rip check needs trials >= 100");
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Eigen::MatrixXd x = make_design(kind, n, static_cast<int>(beta.size()), rng);
    const double v = (x * beta).squaredNorm();
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / trials;
  const double var = std::max(0.0, (sum_sq - trials * mean * mean) / (trials - 1));
  return {mean, std::sqrt(var / trials)};
}

}  // namespace csslb
