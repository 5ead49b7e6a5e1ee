// ensembles.hpp — restricted signal families over a support model.
//
// Three finite families, all uniform-prior:
//   F1  two positive levels per support coordinate, scaled so the gap
//       between nearest members is c0*sigma*sqrt(n)/sqrt(1-eps)
//   F2  signs {-1,+1} per support coordinate
//   F3  balanced split of each support into a -eps half and a
//       sqrt(2/s)+eps half (s even)
// Members are indexed canonically: support index (lexicographic) times the
// per-support pattern count plus the pattern index.
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csslb/graph_model.hpp"
#include "csslb/rng.hpp"

namespace csslb {

inline constexpr double kDefaultF1Eps = 0.9448;  // sqrt(-4 ln 0.8)
inline constexpr double kDefaultF3Eps = 0.1;

enum class Family { f1, f2, f3 };

struct EnsembleSpec {
  Family family = Family::f2;
  SupportModel model;
  // F1 only: values scale with sigma*sqrt(n).
  int n = 1;
  double sigma = 1.0;
  double c0 = 1.0;
  // F1 concentration parameter in (0,1); F3 separation parameter > 0.
  double eps = kDefaultF1Eps;
};

// Level constants shared between the F1 construction and the noisy-standard
// mutual-information bound; deriving both from (c0, eps) keeps them in sync.
struct RecoveryConstants {
  double k1 = 0.0;   // c0 / sqrt(2(1-eps))
  double k2 = 0.0;   // c0 (1/sqrt(2(1-eps)) + 1/sqrt(1-eps))
  double v1 = 0.0;   // k1 * sigma * sqrt(n)
  double v2 = 0.0;   // k2 * sigma * sqrt(n)
  double sep = 0.0;  // v2 - v1 = c0 * sigma * sqrt(n) / sqrt(1-eps)

  static RecoveryConstants from(double c0, double eps, double sigma, int n);
};

struct Signal {
  Eigen::VectorXd values;  // dense; support = indices of nonzeros
  Support support() const;
};

class Ensemble {
 public:
  static Ensemble build(const EnsembleSpec& spec,
                        std::int64_t cap = kDefaultEnumerationCap);

  std::int64_t size() const { return cardinality_; }
  std::int64_t patterns_per_support() const { return patterns_; }
  const std::vector<Support>& supports() const { return supports_; }
  const EnsembleSpec& spec() const { return spec_; }

  // F1 only.
  std::optional<RecoveryConstants> constants() const { return constants_; }

  // The two admissible nonzero levels (low_value < high_value).
  double low_value() const { return low_; }
  double high_value() const { return high_; }

  Signal member(std::int64_t index) const;
  std::int64_t sample_index(Rng& rng) const;

  std::vector<Signal> members(std::int64_t cap = 100'000) const;

 private:
  EnsembleSpec spec_;
  std::vector<Support> supports_;
  std::int64_t patterns_ = 0;
  std::int64_t cardinality_ = 0;
  double low_ = 0.0;
  double high_ = 0.0;
  std::optional<RecoveryConstants> constants_;
};

Ensemble build_ensemble(const EnsembleSpec& spec,
                        std::int64_t cap = kDefaultEnumerationCap);

Signal sample_uniform(const Ensemble& e, Rng& rng);

// Minimum l2 distance over distinct member pairs. Brute force up to 10^3
// members, then a structure-aware shortcut (per-family closed forms over
// support pairs); throws TooLarge past 10^4 supports.
double min_pairwise_distance(const Ensemble& e);

// {"members":[{"support":[...],"values":[...]},...]} in canonical order.
std::string ensemble_to_json(const Ensemble& e, std::int64_t cap = 100'000);

}  // namespace csslb
