// harness.hpp — Monte Carlo experiment orchestration, empirical
// mutual-information oracles, lemma verification, and persistence.
//
// Per-trial randomness is a pure function of (master seed, trial index), so
// results are identical for any worker count. Worker count comes from the
// CSSLB_THREADS environment variable unless given explicitly.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csslb/bounds.hpp"
#include "csslb/decoders.hpp"
#include "csslb/ensembles.hpp"
#include "csslb/sensing.hpp"

namespace csslb {

DesignKind default_design(Setting setting);  // gaussian except std_noiseless
Channel setting_channel(Setting setting);

struct Scenario {
  Setting setting = Setting::onebit_exact;
  EnsembleSpec ensemble;
  DesignKind design = DesignKind::gaussian;
  int n = 1;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  // std_noisy failure predicate P(||bhat - b*|| >= C ||e||); 0 means C = c0.
  double failure_c = 0.0;
  bool agreement_decoder = false;  // one-bit: cheaper agreement-count decoder
};

// Fills defaults and enforces the design-matches-setting rule (override with
// allow_design_mismatch). Throws RejectedParams on inconsistent input.
Scenario make_scenario(Setting setting, EnsembleSpec ensemble, int n,
                       double sigma, std::uint64_t seed,
                       std::optional<DesignKind> design = std::nullopt,
                       bool allow_design_mismatch = false);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 0.0;
  double half_width() const { return 0.5 * (hi - lo); }
};

inline constexpr double kWilsonZ95 = 1.959963984540054;

WilsonInterval wilson_interval(int failures, int trials, double z = kWilsonZ95);

struct TrialOutcome {
  bool failed = false;
  std::int64_t truth_index = 0;
  std::int64_t decoded_index = 0;
  double distance = 0.0;        // ||bhat - b*||
  double noise_norm = 0.0;      // ||e||
};

// One full draw-measure-decode-judge round for the given trial index.
TrialOutcome run_trial(const Scenario& sc, const Ensemble& e,
                       std::int64_t trial_index);

struct ErrorEstimate {
  int trials = 0;
  int failures = 0;
  double err_rate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
};

// trials >= 100 enforced; workers <= 0 resolves CSSLB_THREADS (default 1).
ErrorEstimate estimate_error_probability(const Scenario& sc, int trials,
                                         int workers = 0);

struct CurveRow {
  int n = 0;
  int trials = 0;
  int failures = 0;
  double err_rate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  double mi_bound = 0.0;
  double fano_bound = 0.0;   // composed with noise concentration for std_noisy
  double threshold_n = 0.0;
};

struct CurveTable {
  std::vector<CurveRow> rows;  // sorted by n
};

CurveTable phase_curve(const Scenario& sc, std::vector<int> n_grid, int trials,
                       int workers = 0);

// Header row, LF endings, shortest round-trip doubles.
std::string curve_to_csv(const CurveTable& t);

// Every row: err_rate + 3 * Wilson half-width >= fano_bound.
bool curve_fano_consistent(const CurveTable& t);

// The analytic error lower bound an empirical rate must dominate: the Fano
// bound on P(mismatch), composed with noise concentration for std_noisy.
double scenario_error_bound(const Scenario& sc, const Ensemble& e, int n);

// --- empirical mutual-information oracles --------------------------------

// I(beta; (X,y)) for the sign channel, estimated by sampling Gaussian X and
// computing the inner discrete MI exactly over y in {-1,+1}^n.
// Caps: |F| <= 1000, n <= 10.
double empirical_mi_onebit(const std::vector<Signal>& members, int n,
                           double sigma, int x_samples, Rng& rng);
double empirical_mi_onebit(const Ensemble& e, int n, double sigma,
                           int x_samples, Rng& rng);

// Exact I(beta; (X,y)) for noiseless linear Bernoulli measurements by
// enumerating all 2^(n d) sign matrices when n*d <= 20; otherwise falls back
// to sampling x_samples matrices (rng required).
double empirical_mi_noiseless_std(const std::vector<Signal>& members, int n,
                                  int d, int x_samples = 0, Rng* rng = nullptr);
double empirical_mi_noiseless_std(const Ensemble& e, int n, int d,
                                  int x_samples = 0, Rng* rng = nullptr);

// --- lemma verification ----------------------------------------------------

struct LemmaCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double reference = 0.0;
  std::string note;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool all_pass() const;
};

struct VerifyConfig {
  WgmParams wgm{6, 4, 2, 2, 2};
  double c0 = 1.0;
  double f1_eps = kDefaultF1Eps;
  double f3_eps = kDefaultF3Eps;
  double sigma = 1.0;
  int n = 4;
  std::vector<int> concentration_n = {1, 4, 16};
  int noise_draws = 100'000;
  int rip_trials = 10'000;
  std::uint64_t seed = 20240901;
};

// Cardinality vs enumeration, separations, F3 norm constancy, noise
// concentration, RIP expectation, covariance determinant identities.
LemmaReport verify_lemmas(const VerifyConfig& cfg);

std::string lemma_report_to_json(const LemmaReport& r);

// --- flat key = value config ----------------------------------------------

struct SimulateConfig {
  Scenario scenario;
  std::vector<int> n_grid;
  int trials = 4000;
};

// Parses "key = value" lines ('#' comments). Required: setting, model
// parameters, n_grid, trials, seed. Throws RejectedParams on unknown keys or
// missing fields.
SimulateConfig parse_simulate_config(const std::string& text);

int resolve_workers(int requested);  // requested > 0 wins, else CSSLB_THREADS, else 1

}  // namespace csslb
