// decoders.hpp — exhaustive maximum-likelihood decoders over an ensemble,
// model projection, and a model-projected IHT baseline.
//
// Ties are broken by canonical ensemble order so error probabilities are
// reproducible; random tie-breaking could only raise the error.
#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "csslb/ensembles.hpp"
#include "csslb/graph_model.hpp"

namespace csslb {

struct DecodeResult {
  Signal estimate;
  std::int64_t index = 0;  // canonical ensemble index of the estimate
  double score = 0.0;      // residual norm / agreement count / log-likelihood
  int ties = 1;            // co-optimal candidates (>= 1)
};

// argmin over members of ||y - X beta||.
DecodeResult ml_decode_linear(const Eigen::MatrixXd& x,
                              const Eigen::VectorXd& y, const Ensemble& e);

// sigma == 0 (or agreement_only): argmax agreement between y and sign(X beta).
// sigma > 0: exact likelihood, argmax sum_i ln Phi(y_i (X beta)_i / sigma).
DecodeResult ml_decode_onebit(const Eigen::MatrixXd& x,
                              const Eigen::VectorXd& y, const Ensemble& e,
                              double sigma, bool agreement_only = false);

// ln Phi(z) for the standard normal CDF, stable for large negative z.
double log_normal_cdf(double z);

// argmax over admissible supports of the captured energy sum_{i in S} v_i^2;
// keeps v's entries on the winning support, zero elsewhere.
Signal model_project(const Eigen::VectorXd& v, const std::vector<Support>& supports);
Signal model_project(const Eigen::VectorXd& v, const SupportModel& model,
                     std::int64_t cap = kDefaultEnumerationCap);

// Iterates beta <- project(beta + step * X^T (y - X beta)) from beta = 0.
// Throws Divergence when the iterate norm exceeds 1e6 * ||y||.
Signal model_iht(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                 const SupportModel& model, int iterations, double step = 1.0,
                 std::int64_t cap = kDefaultEnumerationCap);

}  // namespace csslb
