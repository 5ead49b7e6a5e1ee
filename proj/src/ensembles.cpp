#include "csslb/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "csslb/errors.hpp"

namespace csslb {

RecoveryConstants RecoveryConstants::from(double c0, double eps, double sigma, int n) {
  if (!(c0 > 0.0)) throw RejectedParams("c0 must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw RejectedParams("eps must lie in (0,1)");
  if (!(sigma > 0.0)) throw RejectedParams("sigma must be positive");
  if (n < 1) throw RejectedParams("n must be >= 1");
  RecoveryConstants rc;
  rc.k1 = c0 / std::sqrt(2.0 * (1.0 - eps));
  rc.k2 = c0 * (1.0 / std::sqrt(2.0 * (1.0 - eps)) + 1.0 / std::sqrt(1.0 - eps));
  const double scale = sigma * std::sqrt(static_cast<double>(n));
  rc.v1 = rc.k1 * scale;
  rc.v2 = rc.k2 * scale;
  rc.sep = c0 * scale / std::sqrt(1.0 - eps);
  return rc;
}

Support Signal::support() const {
  Support s;
  for (int i = 0; i < values.size(); ++i)
    if (values[i] != 0.0) s.push_back(i + 1);
  return s;
}

Ensemble Ensemble::build(const EnsembleSpec& spec, std::int64_t cap) {
  Ensemble e;
  e.spec_ = spec;
  const int s = spec.model.sparsity();
  switch (spec.family) {
    case Family::f1: {
      e.constants_ = RecoveryConstants::from(spec.c0, spec.eps, spec.sigma, spec.n);
      e.low_ = e.constants_->v1;
      e.high_ = e.constants_->v2;
      e.patterns_ = std::int64_t{1} << s;
      break;
    }
    case Family::f2: {
      e.low_ = -1.0;
      e.high_ = 1.0;
      e.patterns_ = std::int64_t{1} << s;
      break;
    }
    case Family::f3: {
      if (s % 2 != 0) throw RejectedParams("F3 needs even sparsity");
      if (!(spec.eps > 0.0)) throw RejectedParams("F3 eps must be positive");
      e.low_ = -spec.eps;
      e.high_ = std::sqrt(2.0 / s) + spec.eps;
      e.patterns_ = binomial_count(s, s / 2);
      break;
    }
  }
  if (s > 62) throw TooLarge("sparsity too large for pattern indexing");
  e.supports_ = enumerate_supports(spec.model, cap);
  if (e.supports_.empty()) throw RejectedParams("support model admits no supports");
  e.cardinality_ = static_cast<std::int64_t>(e.supports_.size()) * e.patterns_;
  return e;
}

Signal Ensemble::member(std::int64_t index) const {
  if (index < 0 || index >= cardinality_) throw RejectedParams("member index out of range");
  const std::int64_t support_idx = index / patterns_;
  std::int64_t pattern = index % patterns_;
  const Support& sup = supports_[static_cast<std::size_t>(support_idx)];
  const int s = static_cast<int>(sup.size());

  Signal sig;
  sig.values = Eigen::VectorXd::Zero(spec_.model.dimension());
  if (spec_.family == Family::f3) {
    // pattern ranks the size-s/2 low-level position sets in lexicographic
    // order (combinatorial number system unranking).
    int need = s / 2;
    std::vector<bool> low_pos(s, false);
    for (int pos = 0; pos < s && need > 0; ++pos) {
      const std::int64_t with_here = binomial_count(s - pos - 1, need - 1);
      if (pattern < with_here) {
        low_pos[pos] = true;
        --need;
      } else {
        pattern -= with_here;
      }
    }
    for (int k = 0; k < s; ++k) sig.values[sup[k] - 1] = low_pos[k] ? low_ : high_;
  } else {
    for (int k = 0; k < s; ++k)
      sig.values[sup[k] - 1] = ((pattern >> k) & 1) ? high_ : low_;
  }
  return sig;
}

std::int64_t Ensemble::sample_index(Rng& rng) const {
  return static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(cardinality_)));
}

std::vector<Signal> Ensemble::members(std::int64_t cap) const {
  if (cardinality_ > cap) throw TooLarge("ensemble too large to enumerate");
  std::vector<Signal> out;
  out.reserve(static_cast<std::size_t>(cardinality_));
  for (std::int64_t i = 0; i < cardinality_; ++i) out.push_back(member(i));
  return out;
}

Ensemble build_ensemble(const EnsembleSpec& spec, std::int64_t cap) {
  return Ensemble::build(spec, cap);
}

Signal sample_uniform(const Ensemble& e, Rng& rng) {
  return e.member(e.sample_index(rng));
}

namespace {

// Smallest one-sided support difference |S1 \ S2| over distinct support pairs.
int min_support_difference(const std::vector<Support>& sups) {
  const int s = static_cast<int>(sups.front().size());
  int best = s + 1;
  for (std::size_t i = 0; i < sups.size() && best > 1; ++i) {
    for (std::size_t j = i + 1; j < sups.size(); ++j) {
      std::vector<int> common;
      std::set_intersection(sups[i].begin(), sups[i].end(), sups[j].begin(),
                            sups[j].end(), std::back_inserter(common));
      best = std::min(best, s - static_cast<int>(common.size()));
      if (best == 1) break;
    }
  }
  return best;
}

}  // namespace

double min_pairwise_distance(const Ensemble& e) {
  if (e.size() < 2) throw RejectedParams("needs at least two members");

  if (e.size() <= 1000) {
    const auto all = e.members();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        best = std::min(best, (all[i].values - all[j].values).squaredNorm());
    return std::sqrt(best);
  }

  // Structure-aware shortcut: the family value sets make the per-pair minima
  // closed-form, leaving only the support-difference scan.
  if (static_cast<std::int64_t>(e.supports().size()) > 10'000)
    throw TooLarge("too many supports for pairwise distance scan");
  const int s = e.spec().model.sparsity();
  const double lo = e.low_value(), hi = e.high_value();

  double same_support;
  if (e.spec().family == Family::f3) {
    // A balanced-split change swaps at least two coordinates.
    same_support = std::sqrt(2.0) * (hi - lo);
  } else {
    same_support = hi - lo;  // one coordinate switches level
  }

  double best = same_support;
  if (e.supports().size() > 1) {
    const int a = min_support_difference(e.supports());
    double cross;
    if (e.spec().family == Family::f3) {
      // Shared coordinates can always match; differing ones take the low
      // magnitude until the balanced-split budget s/2 runs out.
      const int low_side = std::min(a, s / 2);
      cross = std::sqrt(2.0 * (low_side * lo * lo + (a - low_side) * hi * hi));
    } else {
      const double small = std::min(std::abs(lo), std::abs(hi));
      cross = std::sqrt(2.0 * a) * small;
    }
    best = std::min(best, cross);
  }
  return best;
}

std::string ensemble_to_json(const Ensemble& e, std::int64_t cap) {
  nlohmann::json j;
  auto& members = j["members"] = nlohmann::json::array();
  for (const auto& m : e.members(cap)) {
    nlohmann::json jm;
    const Support sup = m.support();
    jm["support"] = sup;
    std::vector<double> vals;
    for (int v : sup) vals.push_back(m.values[v - 1]);
    jm["values"] = vals;
    members.push_back(std::move(jm));
  }
  return j.dump();
}

}  // namespace csslb
