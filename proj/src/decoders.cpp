#include "csslb/decoders.hpp"

#include <cmath>
#include <limits>

#include "csslb/errors.hpp"
#include "csslb/sensing.hpp"

namespace csslb {

double log_normal_cdf(double z) {
  if (z > -30.0) return std::log(0.5 * std::erfc(-z * M_SQRT1_2));
  // Asymptotic tail: Phi(z) ~ phi(z)/(-z) * (1 - 1/z^2 + 3/z^4 - ...).
  const double z2 = z * z;
  const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2) +
                        105.0 / (z2 * z2 * z2 * z2);
  return -0.5 * z2 - 0.5 * std::log(2.0 * M_PI) - std::log(-z) + std::log(series);
}

namespace {

template <typename ScoreFn>
DecodeResult scan_candidates(const Ensemble& e, bool maximize, ScoreFn&& score_of) {
  if (e.size() == 0) throw RejectedParams("empty ensemble");
  DecodeResult best;
  best.index = -1;
  best.score = maximize ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
  best.ties = 0;
  for (std::int64_t i = 0; i < e.size(); ++i) {
    const Signal cand = e.member(i);
    const double score = score_of(cand);
    const bool better = maximize ? score > best.score : score < best.score;
    if (better) {
      best.score = score;
      best.index = i;
      best.estimate = cand;
      best.ties = 1;
    } else if (score == best.score) {
      ++best.ties;
    }
  }
  return best;
}

}  // namespace

DecodeResult ml_decode_linear(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                              const Ensemble& e) {
  return scan_candidates(e, /*maximize=*/false, [&](const Signal& cand) {
    return (y - x * cand.values).norm();
  });
}

DecodeResult ml_decode_onebit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                              const Ensemble& e, double sigma,
                              bool agreement_only) {
  const int n = static_cast<int>(x.rows());
  if (sigma == 0.0 || agreement_only) {
    return scan_candidates(e, /*maximize=*/true, [&](const Signal& cand) {
      const Eigen::VectorXd z = x * cand.values;
      int agree = 0;
      for (int i = 0; i < n; ++i)
        if (sign_pm(z[i]) == y[i]) ++agree;
      return static_cast<double>(agree);
    });
  }
  return scan_candidates(e, /*maximize=*/true, [&](const Signal& cand) {
    const Eigen::VectorXd z = x * cand.values;
    double ll = 0.0;
    for (int i = 0; i < n; ++i) ll += log_normal_cdf(y[i] * z[i] / sigma);
    return ll;
  });
}

Signal model_project(const Eigen::VectorXd& v, const std::vector<Support>& supports) {
  if (supports.empty()) throw RejectedParams("no admissible supports");
  double best_energy = -1.0;
  const Support* best = nullptr;
  for (const auto& sup : supports) {
    double energy = 0.0;
    for (int idx : sup) energy += v[idx - 1] * v[idx - 1];
    if (energy > best_energy) {
      best_energy = energy;
      best = &sup;
    }
  }
  Signal out;
  out.values = Eigen::VectorXd::Zero(v.size());
  for (int idx : *best) out.values[idx - 1] = v[idx - 1];
  return out;
}

Signal model_project(const Eigen::VectorXd& v, const SupportModel& model,
                     std::int64_t cap) {
  return model_project(v, enumerate_supports(model, cap));
}

Signal model_iht(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                 const SupportModel& model, int iterations, double step,
                 std::int64_t cap) {
  if (!(step > 0.0)) throw RejectedParams("step must be positive");
  const auto supports = enumerate_supports(model, cap);
  const double escape = 1e6 * y.norm();
  Signal beta;
  beta.values = Eigen::VectorXd::Zero(x.cols());
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd grad = x.transpose() * (y - x * beta.values);
    beta = model_project(beta.values + step * grad, supports);
    if (beta.values.norm() > escape) throw Divergence("IHT iterate escaped");
  }
  return beta;
}

}  // namespace csslb
