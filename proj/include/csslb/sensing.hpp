// sensing.hpp — design matrices and measurement channels.
#pragma once

#include <Eigen/Core>

#include "csslb/ensembles.hpp"
#include "csslb/rng.hpp"

namespace csslb {

enum class DesignKind { gaussian, bernoulli };
enum class Channel { linear, onebit };

// Gaussian: i.i.d. N(0, 1/n). Bernoulli: i.i.d. +-1/sqrt(n). Entries are
// drawn row-major, so a matrix is a pure function of (kind, n, d, rng state).
Eigen::MatrixXd make_design(DesignKind kind, int n, int d, Rng& rng);

struct MeasurementSet {
  Eigen::VectorXd y;      // linear: X*beta + e; onebit: sign(X*beta + e)
  Eigen::VectorXd noise;  // realized e (zero vector when sigma == 0)
  double sigma = 0.0;
  Channel channel = Channel::linear;
};

// sign(0) := +1. sigma == 0 consumes no noise draws.
MeasurementSet measure(const Eigen::MatrixXd& x, const Signal& beta,
                       double sigma, Channel channel, Rng& rng);

double sign_pm(double x);

struct RipEstimate {
  double mean = 0.0;       // Monte Carlo mean of ||X beta||^2 over fresh X
  double std_error = 0.0;  // sample standard error of that mean
};

// E||X beta||^2 = ||beta||^2 for both designs; trials >= 100 enforced.
RipEstimate rip_expectation_check(DesignKind kind, const Eigen::VectorXd& beta,
                                  int n, int trials, Rng& rng);

}  // namespace csslb
