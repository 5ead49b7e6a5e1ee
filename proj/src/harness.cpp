#include "csslb/harness.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "csslb/errors.hpp"

namespace csslb {

namespace {
constexpr double kLn2 = 0.6931471805599453;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}
}  // namespace

DesignKind default_design(Setting setting) {
  return setting == Setting::std_noiseless ? DesignKind::bernoulli
                                           : DesignKind::gaussian;
}

Channel setting_channel(Setting setting) {
  return (setting == Setting::onebit_exact || setting == Setting::onebit_approx)
             ? Channel::onebit
             : Channel::linear;
}

Scenario make_scenario(Setting setting, EnsembleSpec ensemble, int n,
                       double sigma, std::uint64_t seed,
                       std::optional<DesignKind> design,
                       bool allow_design_mismatch) {
  if (n < 1) throw RejectedParams("scenario needs n >= 1");
  if (sigma < 0.0) throw RejectedParams("sigma must be >= 0");
  if (setting == Setting::std_noisy && sigma == 0.0)
    throw RejectedParams("std_noisy needs sigma > 0 (the failure predicate degenerates)");
  if (setting == Setting::std_noiseless && sigma != 0.0)
    throw RejectedParams("std_noiseless needs sigma = 0");
  const DesignKind chosen = design.value_or(default_design(setting));
  if (chosen != default_design(setting) && !allow_design_mismatch)
    throw RejectedParams("design kind does not match the setting; pass the override flag");
  if (ensemble.family == Family::f1) {
    // Keep the F1 level scale tied to the measurement channel.
    ensemble.sigma = sigma;
    ensemble.n = n;
  }
  Scenario sc;
  sc.setting = setting;
  sc.ensemble = std::move(ensemble);
  sc.design = chosen;
  sc.n = n;
  sc.sigma = sigma;
  sc.seed = seed;
  return sc;
}

WilsonInterval wilson_interval(int failures, int trials, double z) {
  if (trials < 1) throw RejectedParams("wilson interval needs trials >= 1");
  if (failures < 0 || failures > trials)
    throw RejectedParams("failures must lie in [0, trials]");
  const double t = trials;
  const double p = failures / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double center = (p + z2 / (2.0 * t)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

Ensemble build_scenario_ensemble(const Scenario& sc) {
  EnsembleSpec spec = sc.ensemble;
  if (spec.family == Family::f1) {
    spec.n = sc.n;
    spec.sigma = sc.sigma;
  }
  return Ensemble::build(spec);
}

}  // namespace

TrialOutcome run_trial(const Scenario& sc, const Ensemble& e,
                       std::int64_t trial_index) {
  Rng rng = Rng::stream(sc.seed, static_cast<std::uint64_t>(trial_index));
  TrialOutcome out;
  out.truth_index = e.sample_index(rng);
  const Signal truth = e.member(out.truth_index);
  const Eigen::MatrixXd x =
      make_design(sc.design, sc.n, sc.ensemble.model.dimension(), rng);
  const MeasurementSet ms =
      measure(x, truth, sc.sigma, setting_channel(sc.setting), rng);

  const DecodeResult dec =
      setting_channel(sc.setting) == Channel::onebit
          ? ml_decode_onebit(x, ms.y, e, sc.sigma, sc.agreement_decoder)
          : ml_decode_linear(x, ms.y, e);

  out.decoded_index = dec.index;
  out.distance = (dec.estimate.values - truth.values).norm();
  out.noise_norm = ms.noise.norm();
  switch (sc.setting) {
    case Setting::std_noisy: {
      const double c = sc.failure_c > 0.0 ? sc.failure_c : sc.ensemble.c0;
      out.failed = out.distance >= c * out.noise_norm;
      break;
    }
    case Setting::std_noiseless:
    case Setting::onebit_exact:
      out.failed = dec.index != out.truth_index;
      break;
    case Setting::onebit_approx: {
      const double norm_dist = (dec.estimate.values / dec.estimate.values.norm() -
                                truth.values / truth.values.norm())
                                   .norm();
      out.failed = norm_dist >= sc.ensemble.eps;
      break;
    }
  }
  return out;
}

namespace {

ErrorEstimate estimate_with_ensemble(const Scenario& sc, const Ensemble& e,
                                     int trials, int workers) {
  if (trials < 100) throw RejectedParams("error estimation needs trials >= 100");
  const int w = std::min(resolve_workers(workers), trials);
  std::vector<std::uint8_t> failed(static_cast<std::size_t>(trials), 0);

  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run_range = [&](int lo, int hi) {
    try {
      for (int t = lo; t < hi; ++t)
        failed[static_cast<std::size_t>(t)] = run_trial(sc, e, t).failed ? 1 : 0;
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (w <= 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (trials + w - 1) / w;
    for (int i = 0; i < w; ++i)
      pool.emplace_back(run_range, i * chunk, std::min(trials, (i + 1) * chunk));
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Trial outcomes live at fixed indices, so this fold is schedule-independent.
  const int failures =
      static_cast<int>(std::count(failed.begin(), failed.end(), 1));
  const WilsonInterval wi = wilson_interval(failures, trials);
  return {trials, failures, static_cast<double>(failures) / trials, wi.lo, wi.hi};
}

}  // namespace

ErrorEstimate estimate_error_probability(const Scenario& sc, int trials,
                                         int workers) {
  const Ensemble e = build_scenario_ensemble(sc);
  return estimate_with_ensemble(sc, e, trials, workers);
}

double scenario_error_bound(const Scenario& sc, const Ensemble& e, int n) {
  double k1 = 0.0, k2 = 0.0;
  if (sc.setting == Setting::std_noisy) {
    const auto rc = RecoveryConstants::from(sc.ensemble.c0, sc.ensemble.eps, 1.0, 1);
    k1 = rc.k1;
    k2 = rc.k2;
  }
  const double mi = mi_slope(sc.setting, sc.ensemble.model, k1, k2) * n;
  const double fano =
      fano_lower_bound(mi, std::log(static_cast<double>(e.size())));
  if (sc.setting == Setting::std_noisy)
    return fano * noise_concentration_bound(n, sc.ensemble.eps);
  return fano;
}

CurveTable phase_curve(const Scenario& sc, std::vector<int> n_grid, int trials,
                       int workers) {
  if (n_grid.empty()) throw RejectedParams("n grid must be nonempty");
  std::sort(n_grid.begin(), n_grid.end());
  n_grid.erase(std::unique(n_grid.begin(), n_grid.end()), n_grid.end());

  double k1 = 0.0, k2 = 0.0;
  if (sc.setting == Setting::std_noisy) {
    const auto rc = RecoveryConstants::from(sc.ensemble.c0, sc.ensemble.eps, 1.0, 1);
    k1 = rc.k1;
    k2 = rc.k2;
  }
  const SampleThreshold threshold =
      sample_threshold(sc.setting, sc.ensemble.model, k1, k2);

  CurveTable table;
  for (int n : n_grid) {
    Scenario point = sc;
    point.n = n;
    const Ensemble e = build_scenario_ensemble(point);
    const ErrorEstimate est = estimate_with_ensemble(point, e, trials, workers);
    CurveRow row;
    row.n = n;
    row.trials = est.trials;
    row.failures = est.failures;
    row.err_rate = est.err_rate;
    row.wilson_lo = est.wilson_lo;
    row.wilson_hi = est.wilson_hi;
    row.mi_bound = mi_slope(sc.setting, sc.ensemble.model, k1, k2) * n;
    row.fano_bound = scenario_error_bound(point, e, n);
    row.threshold_n = threshold.n;
    table.rows.push_back(row);
  }
  return table;
}

std::string curve_to_csv(const CurveTable& t) {
  std::string out =
      "n,trials,failures,err_rate,wilson_lo,wilson_hi,mi_bound,fano_bound,"
      "threshold_n\n";
  for (const auto& r : t.rows) {
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += std::to_string(r.failures);
    out += ',';
    out += format_double(r.err_rate);
    out += ',';
    out += format_double(r.wilson_lo);
    out += ',';
    out += format_double(r.wilson_hi);
    out += ',';
    out += format_double(r.mi_bound);
    out += ',';
    out += format_double(r.fano_bound);
    out += ',';
    out += format_double(r.threshold_n);
    out += '\n';
  }
  return out;
}

bool curve_fano_consistent(const CurveTable& t) {
  for (const auto& r : t.rows) {
    const double half = 0.5 * (r.wilson_hi - r.wilson_lo);
    if (r.err_rate + 3.0 * half < r.fano_bound) return false;
  }
  return true;
}

// --- empirical MI oracles ---------------------------------------------------

namespace {

// Entropy of the empirical distribution given by group counts.
double entropy_from_counts(const std::vector<int>& counts, int total) {
  double h = 0.0;
  for (int c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return h;
}

// Group equal rows of per-member key vectors; returns counts.
std::vector<int> group_counts(const std::vector<std::vector<double>>& keys) {
  std::vector<int> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::lexicographical_compare(keys[a].begin(), keys[a].end(),
                                        keys[b].begin(), keys[b].end());
  });
  std::vector<int> counts;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && keys[order[j]] == keys[order[i]]) ++j;
    counts.push_back(static_cast<int>(j - i));
    i = j;
  }
  return counts;
}

}  // namespace

double empirical_mi_onebit(const std::vector<Signal>& members, int n,
                           double sigma, int x_samples, Rng& rng) {
  if (members.empty()) throw RejectedParams("needs a nonempty family");
  if (members.size() > 1000) throw TooLarge("onebit MI oracle caps |F| at 1000");
  if (n < 1 || n > 10) throw TooLarge("onebit MI oracle caps n at 10");
  if (x_samples < 1) throw RejectedParams("needs x_samples >= 1");
  if (sigma < 0.0) throw RejectedParams("sigma must be >= 0");

  const int family = static_cast<int>(members.size());
  const int d = static_cast<int>(members.front().values.size());
  const int patterns = 1 << n;
  double total = 0.0;

  for (int t = 0; t < x_samples; ++t) {
    const Eigen::MatrixXd x = make_design(DesignKind::gaussian, n, d, rng);
    if (sigma == 0.0) {
      // Deterministic channel: I = H(y | X) over the uniform prior.
      std::vector<std::vector<double>> keys(members.size());
      for (std::size_t f = 0; f < members.size(); ++f) {
        const Eigen::VectorXd z = x * members[f].values;
        keys[f].resize(n);
        for (int i = 0; i < n; ++i) keys[f][i] = sign_pm(z[i]);
      }
      total += entropy_from_counts(group_counts(keys), family);
      continue;
    }
    // p(y_i = +1 | beta, X) per measurement, then exact discrete MI over y.
    std::vector<std::vector<double>> up(members.size(), std::vector<double>(n));
    for (std::size_t f = 0; f < members.size(); ++f) {
      const Eigen::VectorXd z = x * members[f].values;
      for (int i = 0; i < n; ++i)
        up[f][i] = 0.5 * std::erfc(-z[i] / (sigma * M_SQRT2));
    }
    double inner = 0.0;
    std::vector<double> like(members.size());
    for (int y = 0; y < patterns; ++y) {
      double marginal = 0.0;
      for (std::size_t f = 0; f < members.size(); ++f) {
        double p = 1.0;
        for (int i = 0; i < n; ++i)
          p *= ((y >> i) & 1) ? up[f][i] : 1.0 - up[f][i];
        like[f] = p;
        marginal += p;
      }
      marginal /= family;
      for (std::size_t f = 0; f < members.size(); ++f)
        if (like[f] > 0.0) inner += like[f] * std::log(like[f] / marginal);
    }
    total += inner / family;
  }
  return total / x_samples;
}

double empirical_mi_onebit(const Ensemble& e, int n, double sigma,
                           int x_samples, Rng& rng) {
  return empirical_mi_onebit(e.members(1000), n, sigma, x_samples, rng);
}

namespace {

// Two-level signals let each measurement be keyed by the exact integer pair
// (sum of signs over low-level coords, sum over high-level coords); the
// canonical double p*low + q*high then groups mathematically equal outputs.
struct TwoLevelMember {
  std::uint32_t low_mask = 0;   // 0-based coordinate bits
  std::uint32_t high_mask = 0;
  int low_count = 0;
  int high_count = 0;
  double low = 0.0;
  double high = 0.0;
};

double noiseless_entropy_for_mask(const std::vector<TwoLevelMember>& tl,
                                  std::uint64_t mask, int n, int d) {
  std::vector<std::vector<double>> keys(tl.size(), std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    const auto row =
        static_cast<std::uint32_t>((mask >> (i * d)) & ((1u << d) - 1));
    for (std::size_t f = 0; f < tl.size(); ++f) {
      const int p =
          2 * std::popcount(row & tl[f].low_mask) - tl[f].low_count;
      const int q =
          2 * std::popcount(row & tl[f].high_mask) - tl[f].high_count;
      keys[f][i] = p * tl[f].low + q * tl[f].high;
    }
  }
  return entropy_from_counts(group_counts(keys), static_cast<int>(tl.size()));
}

}  // namespace

double empirical_mi_noiseless_std(const std::vector<Signal>& members, int n,
                                  int d, int x_samples, Rng* rng) {
  if (members.empty()) throw RejectedParams("needs a nonempty family");
  if (members.size() > 10'000) throw TooLarge("noiseless MI oracle caps |F| at 10^4");
  if (n < 1) throw RejectedParams("needs n >= 1");
  if (d < 1 || d > 25) throw TooLarge("noiseless MI oracle caps d at 25");

  std::vector<TwoLevelMember> tl(members.size());
  for (std::size_t f = 0; f < members.size(); ++f) {
    double low = 0.0, high = 0.0;
    bool seen = false;
    for (int j = 0; j < d; ++j) {
      const double v = members[f].values[j];
      if (v == 0.0) continue;
      if (!seen) {
        low = high = v;
        seen = true;
      } else {
        low = std::min(low, v);
        high = std::max(high, v);
      }
    }
    tl[f].low = low;
    tl[f].high = high;
    for (int j = 0; j < d; ++j) {
      const double v = members[f].values[j];
      if (v == 0.0) continue;
      if (v == low) {
        tl[f].low_mask |= 1u << j;
        ++tl[f].low_count;
      } else if (v == high) {
        tl[f].high_mask |= 1u << j;
        ++tl[f].high_count;
      } else {
        throw RejectedParams("noiseless MI oracle expects two-level members");
      }
    }
  }

  const int bits = n * d;
  if (bits <= 20) {
    const std::uint64_t total = std::uint64_t{1} << bits;
    double acc = 0.0;
    for (std::uint64_t mask = 0; mask < total; ++mask)
      acc += noiseless_entropy_for_mask(tl, mask, n, d);
    return acc / static_cast<double>(total);
  }
  if (x_samples < 1 || rng == nullptr)
    throw TooLarge("n*d > 20: exact enumeration unavailable, pass x_samples and rng");
  double acc = 0.0;
  for (int t = 0; t < x_samples; ++t) {
    std::uint64_t mask = 0;
    for (int b = 0; b < bits; ++b)
      if (rng->coin()) mask |= std::uint64_t{1} << b;
    acc += noiseless_entropy_for_mask(tl, mask, n, d);
  }
  return acc / x_samples;
}

double empirical_mi_noiseless_std(const Ensemble& e, int n, int d,
                                  int x_samples, Rng* rng) {
  return empirical_mi_noiseless_std(e.members(10'000), n, d, x_samples, rng);
}

// --- lemma verification -----------------------------------------------------

bool LemmaReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const LemmaCheck& c) { return c.pass; });
}

LemmaReport verify_lemmas(const VerifyConfig& cfg) {
  LemmaReport rep;
  auto add = [&](std::string name, bool pass, double measured, double reference,
                 std::string note) {
    rep.checks.push_back(
        {std::move(name), pass, measured, reference, std::move(note)});
  };

  const SupportModel model = SupportModel::wgm(cfg.wgm);
  const auto supports = enumerate_supports(model);
  const int s = cfg.wgm.s;

  // Cardinality vs the closed-form counting bounds.
  const double support_bound = std::exp(
      log_cardinality_lower_bound(model, CardinalityVariant::standard).value -
      s * kLn2);
  add("support_count_vs_bound",
      static_cast<double>(supports.size()) >= support_bound * (1.0 - 1e-12),
      static_cast<double>(supports.size()), support_bound,
      "enumerated supports >= (d/g)^g (rho B g / 2(s-g)^2)^(s-g)");

  EnsembleSpec f2_spec{Family::f2, model, 1, 1.0, 1.0, kDefaultF1Eps};
  const Ensemble f2 = Ensemble::build(f2_spec);
  const double f2_expected =
      static_cast<double>(supports.size()) * std::pow(2.0, s);
  const double f2_bound = std::exp(
      log_cardinality_lower_bound(model, CardinalityVariant::standard).value);
  add("f2_cardinality",
      static_cast<double>(f2.size()) == f2_expected &&
          static_cast<double>(f2.size()) >= f2_bound * (1.0 - 1e-12),
      static_cast<double>(f2.size()), f2_bound,
      "|F2| = |M| 2^s and >= standard cardinality bound");

  EnsembleSpec f3_spec{Family::f3, model, 1, 1.0, 1.0, cfg.f3_eps};
  const Ensemble f3 = Ensemble::build(f3_spec);
  const double f3_expected = static_cast<double>(supports.size()) *
                             static_cast<double>(binomial_count(s, s / 2));
  const double f3_bound = std::exp(
      log_cardinality_lower_bound(model, CardinalityVariant::onebit).value);
  add("f3_cardinality",
      static_cast<double>(f3.size()) == f3_expected &&
          static_cast<double>(f3.size()) >= f3_bound * (1.0 - 1e-12),
      static_cast<double>(f3.size()), f3_bound,
      "|F3| = |M| C(s, s/2) and >= onebit cardinality bound");

  // F1 separation: min distance equals the separation constant.
  EnsembleSpec f1_spec{Family::f1, model, cfg.n, cfg.sigma, cfg.c0, cfg.f1_eps};
  const Ensemble f1 = Ensemble::build(f1_spec);
  const double f1_min = min_pairwise_distance(f1);
  const double sep = f1.constants()->sep;
  add("f1_min_distance", std::abs(f1_min - sep) <= 1e-9 * sep, f1_min, sep,
      "min pairwise distance = c0 sigma sqrt(n)/sqrt(1-eps)");

  // F3 separation and norm constancy.
  const double f3_min = min_pairwise_distance(f3);
  add("f3_min_distance", f3_min >= cfg.f3_eps, f3_min, cfg.f3_eps,
      "min pairwise distance >= eps");
  const double norm_expected =
      1.0 + cfg.f3_eps * std::sqrt(2.0 * s) + s * cfg.f3_eps * cfg.f3_eps;
  double norm_dev = 0.0;
  for (const auto& m : f3.members())
    norm_dev = std::max(norm_dev,
                        std::abs(m.values.squaredNorm() - norm_expected));
  add("f3_norm_constancy", norm_dev <= 1e-12, norm_dev, 1e-12,
      "||beta||^2 = 1 + eps sqrt(2s) + s eps^2 across all members");

  // Noise concentration: empirical quantile dominates the analytic bound.
  Rng rng(mix_seed(cfg.seed, 1));
  for (int n : cfg.concentration_n) {
    const double cutoff = cfg.sigma * cfg.sigma * n / (1.0 - cfg.f1_eps);
    int inside = 0;
    for (int t = 0; t < cfg.noise_draws; ++t) {
      double sq = 0.0;
      for (int i = 0; i < n; ++i) {
        const double e = cfg.sigma * rng.normal();
        sq += e * e;
      }
      if (sq <= cutoff) ++inside;
    }
    const double empirical = static_cast<double>(inside) / cfg.noise_draws;
    const double bound = noise_concentration_bound(n, cfg.f1_eps);
    add("noise_concentration_n" + std::to_string(n), empirical >= bound,
        empirical, bound, "P(||e||^2 <= sigma^2 n/(1-eps)) >= 1 - exp(-eps^2 n/4)");
  }

  // RIP expectation for both designs.
  {
    Rng rip_rng(mix_seed(cfg.seed, 2));
    Eigen::VectorXd beta(cfg.wgm.d);
    for (int i = 0; i < cfg.wgm.d; ++i) beta[i] = rip_rng.normal();
    for (DesignKind kind : {DesignKind::gaussian, DesignKind::bernoulli}) {
      const RipEstimate est =
          rip_expectation_check(kind, beta, cfg.n, cfg.rip_trials, rip_rng);
      const double err = std::abs(est.mean - beta.squaredNorm());
      add(kind == DesignKind::gaussian ? "rip_expectation_gaussian"
                                       : "rip_expectation_bernoulli",
          err <= 4.0 * est.std_error, err, 4.0 * est.std_error,
          "|mean ||X beta||^2 - ||beta||^2| <= 4 SE");
    }
  }

  // Joint-covariance determinant identities.
  {
    Rng det_rng(mix_seed(cfg.seed, 3));
    const double expected_det =
        cfg.sigma * cfg.sigma * std::pow(static_cast<double>(cfg.n), -cfg.wgm.d);
    double worst = 0.0;
    for (int t = 0; t < 3; ++t) {
      const Signal m = sample_uniform(f1, det_rng);
      const double det = joint_covariance(m.values, cfg.n, cfg.sigma).determinant();
      worst = std::max(worst, std::abs(det - expected_det) / expected_det);
    }
    add("sigma_beta_determinant", worst <= 1e-9, worst, 1e-9,
        "det(Sigma_beta) = sigma^2 / n^d, relative");

    const auto f1_members = f1.members();
    const double det_direct =
        averaged_covariance_det_direct(f1_members, cfg.n, cfg.sigma);
    const double det_generic =
        averaged_covariance(f1_members, cfg.n, cfg.sigma).determinant();
    add("averaged_covariance_det",
        std::abs(det_generic - det_direct) <= 1e-9 * std::abs(det_direct),
        det_generic, det_direct, "generic determinant matches block formula");

    const double mi_route = mi_from_covariance(f1_members, cfg.n, cfg.sigma);
    const auto rc = *f1.constants();
    const double mi_closed = mi_bound_std_noisy(cfg.n, s, cfg.wgm.d, rc.k1, rc.k2);
    add("averaged_covariance_mi",
        std::abs(mi_route - mi_closed) <= 1e-9 * std::max(1.0, std::abs(mi_closed)),
        mi_route, mi_closed, "covariance route reproduces the closed-form MI bound");
  }

  return rep;
}

std::string lemma_report_to_json(const LemmaReport& r) {
  nlohmann::json j;
  auto& checks = j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    jc["measured"] = c.measured;
    jc["reference"] = c.reference;
    jc["note"] = c.note;
    checks.push_back(std::move(jc));
  }
  j["all_pass"] = r.all_pass();
  return j.dump();
}

// --- config -----------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> grid;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (lo > hi) throw RejectedParams("n_grid range must be nondecreasing");
    for (int v = lo; v <= hi; ++v) grid.push_back(v);
    return grid;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) grid.push_back(std::stoi(item));
  }
  return grid;
}

}  // namespace

SimulateConfig parse_simulate_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw RejectedParams("config line is not key = value: " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  const std::vector<std::string> known = {
      "setting", "model",  "d",       "g",          "s",
      "B",       "rho",    "J",       "N",          "K",
      "family",  "eps",    "c0",      "sigma",      "design",
      "n_grid",  "trials", "seed",    "failure_c",  "decoder",
      "allow_design_mismatch"};
  for (const auto& [k, v] : kv)
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw RejectedParams("unknown config key: " + k);

  auto need = [&](const std::string& k) -> std::string {
    auto it = kv.find(k);
    if (it == kv.end()) throw RejectedParams("missing config key: " + k);
    return it->second;
  };
  auto get_int = [&](const std::string& k) { return std::stoi(need(k)); };
  auto opt_double = [&](const std::string& k, double dflt) {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : std::stod(it->second);
  };

  const std::string setting_str = need("setting");
  Setting setting;
  if (setting_str == "std_noisy") setting = Setting::std_noisy;
  else if (setting_str == "std_noiseless") setting = Setting::std_noiseless;
  else if (setting_str == "onebit_exact") setting = Setting::onebit_exact;
  else if (setting_str == "onebit_approx") setting = Setting::onebit_approx;
  else throw RejectedParams("unknown setting: " + setting_str);

  const std::string model_str = need("model");
  SupportModel model = [&] {
    if (model_str == "wgm")
      return SupportModel::wgm(WgmParams{get_int("d"), get_int("s"), get_int("g"),
                                         get_int("B"), get_int("rho")});
    if (model_str == "tree") return SupportModel::tree(get_int("d"), get_int("s"));
    if (model_str == "block")
      return SupportModel::block(get_int("J"), get_int("N"), get_int("K"));
    if (model_str == "regular")
      return SupportModel::regular(get_int("d"), get_int("s"));
    throw RejectedParams("unknown model: " + model_str);
  }();

  Family family;
  if (auto it = kv.find("family"); it != kv.end()) {
    if (it->second == "f1") family = Family::f1;
    else if (it->second == "f2") family = Family::f2;
    else if (it->second == "f3") family = Family::f3;
    else throw RejectedParams("unknown family: " + it->second);
  } else {
    family = setting == Setting::std_noisy        ? Family::f1
             : setting == Setting::std_noiseless  ? Family::f2
                                                  : Family::f3;
  }

  EnsembleSpec spec;
  spec.family = family;
  spec.model = std::move(model);
  spec.c0 = opt_double("c0", 1.0);
  spec.eps =
      opt_double("eps", family == Family::f3 ? kDefaultF3Eps : kDefaultF1Eps);

  const double default_sigma = setting == Setting::std_noisy ? 1.0 : 0.0;
  const double sigma = opt_double("sigma", default_sigma);

  std::optional<DesignKind> design;
  if (auto it = kv.find("design"); it != kv.end()) {
    if (it->second == "gaussian") design = DesignKind::gaussian;
    else if (it->second == "bernoulli") design = DesignKind::bernoulli;
    else throw RejectedParams("unknown design: " + it->second);
  }
  const bool allow_mismatch =
      kv.count("allow_design_mismatch") && kv["allow_design_mismatch"] == "true";

  SimulateConfig cfg;
  cfg.n_grid = parse_grid(need("n_grid"));
  if (cfg.n_grid.empty()) throw RejectedParams("n_grid is empty");
  cfg.trials = get_int("trials");
  cfg.scenario =
      make_scenario(setting, std::move(spec), cfg.n_grid.front(), sigma,
                    std::stoull(need("seed")), design, allow_mismatch);
  cfg.scenario.failure_c = opt_double("failure_c", 0.0);
  if (auto it = kv.find("decoder"); it != kv.end()) {
    if (it->second == "agreement") cfg.scenario.agreement_decoder = true;
    else if (it->second != "ml") throw RejectedParams("unknown decoder: " + it->second);
  }
  return cfg;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CSSLB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace csslb
