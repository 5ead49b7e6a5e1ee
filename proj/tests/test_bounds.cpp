#include <doctest.h>

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "csslb/bounds.hpp"
#include "csslb/errors.hpp"
#include "csslb/rng.hpp"
#include "oracles.hpp"

using namespace csslb;

TEST_CASE("noisy-standard MI bound") {
  CHECK(mi_bound_std_noisy(5.0, 3, 9, 0.0, 0.0) == 0.0);
  // s = d with equal levels collapses the argument to 1.
  CHECK(std::abs(mi_bound_std_noisy(4.0, 5, 5, 2.0, 2.0)) <= 1e-12);
  CHECK(mi_bound_std_noisy(2.0, 2, 8, 1.0, 2.0) ==
        doctest::Approx(1.5841201044498106).epsilon(1e-12));
  CHECK(mi_bound_std_noisy(2.0, 2, 8, 1.0, 2.0) ==
        doctest::Approx(std::log(4.875)).epsilon(1e-14));
  CHECK_THROWS_AS(mi_bound_std_noisy(1.0, 4, 3, 1.0, 1.0), RejectedParams);
}

TEST_CASE("noiseless-standard MI bound uses the derivation value") {
  CHECK(mi_bound_std_noiseless(2.0, 3) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(mi_bound_std_noiseless(1.0, 10) ==
        doctest::Approx(6.611918412977808).epsilon(1e-12));
  CHECK(mi_bound_std_noiseless(0.0, 5) == 0.0);
  CHECK_THROWS_AS(mi_bound_std_noiseless(1.0, 1), RejectedParams);
}

TEST_CASE("noiseless output count") {
  CHECK(count_noiseless_outputs(1) == 4);
  CHECK(count_noiseless_outputs(3) == 20);
  CHECK(count_noiseless_outputs(10) == 286);
  // C(s+3,3) <= e^3 s^3 / 27 from s = 3 on (it fails at s = 1, 2).
  for (int s = 3; s <= 40; ++s)
    CHECK(static_cast<double>(count_noiseless_outputs(s)) <=
          std::exp(3.0) * std::pow(static_cast<double>(s), 3) / 27.0 + 1e-9);
  CHECK(static_cast<double>(count_noiseless_outputs(2)) >
        std::exp(3.0) * 8.0 / 27.0);
  // Exhaustive check at s=1: one nonzero from two generic levels against a
  // sign row yields exactly four output values.
  const double a = 1.0, b = std::sqrt(2.0);
  std::set<double> outputs;
  for (double level : {a, b})
    for (double sign : {-1.0, 1.0}) outputs.insert(sign * level);
  CHECK(static_cast<std::int64_t>(outputs.size()) == count_noiseless_outputs(1));
}

TEST_CASE("one-bit MI bound") {
  CHECK(mi_bound_onebit(0.0) == 0.0);
  CHECK(mi_bound_onebit(10.0) == doctest::Approx(13.862943611198906).epsilon(1e-12));
  // Symmetric-channel KL term vanishes at p = 1/2 and sits below the bound.
  const double p = 0.5;
  const double kl = p * std::log(2 * p) + (1 - p) * std::log(2 * (1 - p));
  CHECK(kl == 0.0);
  CHECK(kl <= 2 * std::log(2.0));
}

TEST_CASE("fano lower bound") {
  CHECK(fano_lower_bound(0.0, std::log(4.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(fano_lower_bound(std::log(2.0), std::log(2.0)) == 0.0);
  CHECK(fano_lower_bound(8 * std::log(2.0), std::log(7776.0)) ==
        doctest::Approx(0.3036649469778251).epsilon(1e-12));
  CHECK_THROWS_AS(fano_lower_bound(1.0, 0.0), RejectedParams);
  CHECK_THROWS_AS(fano_lower_bound(-1.0, 1.0), RejectedParams);
}

TEST_CASE("fano monotonicity") {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    const double log_card = 0.5 + 4.0 * rng.uniform01();
    const double mi = 3.0 * rng.uniform01();
    const double bump = 0.5 * rng.uniform01();
    CHECK(fano_lower_bound(mi + bump, log_card) <= fano_lower_bound(mi, log_card));
    CHECK(fano_lower_bound(mi, log_card + bump) >= fano_lower_bound(mi, log_card));
  }
}

TEST_CASE("noise concentration bound") {
  CHECK(noise_concentration_bound(1.0, 0.9448) ==
        doctest::Approx(0.2000145668160105).epsilon(1e-12));
  CHECK(noise_concentration_bound(4.0, 0.9448) ==
        doctest::Approx(0.5904298320243816).epsilon(1e-12));
  double prev = 0.0;
  for (int n = 1; n <= 400; n *= 2) {
    const double b = noise_concentration_bound(n, 0.9448);
    CHECK(b > prev);
    prev = b;
  }
  CHECK(prev > 0.999);
  CHECK_THROWS_AS(noise_concentration_bound(1.0, 1.5), RejectedParams);
}

TEST_CASE("sample thresholds invert the Fano bound") {
  const auto fig3 = SupportModel::wgm(WgmParams{15, 10, 5, 5, 2});

  const auto onebit = sample_threshold(Setting::onebit_exact, fig3);
  CHECK(onebit.n == doctest::Approx(2.731203125901445).epsilon(1e-12));
  CHECK_FALSE(onebit.vacuous);

  const auto noiseless = sample_threshold(Setting::std_noiseless, fig3);
  CHECK(noiseless.n == doctest::Approx(0.8347228594165927).epsilon(1e-12));
  CHECK(noiseless.vacuous);

  // Self-consistency: the bound evaluates to exactly 1/2 at the threshold.
  for (Setting st : {Setting::onebit_exact, Setting::onebit_approx,
                     Setting::std_noiseless}) {
    const auto t = sample_threshold(st, fig3);
    const auto variant = (st == Setting::std_noiseless) ? CardinalityVariant::standard
                                                        : CardinalityVariant::onebit;
    const double log_card = log_cardinality_lower_bound(fig3, variant).value;
    const double fano = fano_lower_bound(mi_slope(st, fig3) * t.n, log_card);
    CHECK(fano == doctest::Approx(0.5).epsilon(1e-9));
  }
  {
    const auto rc = RecoveryConstants::from(1.0, 0.5, 1.0, 1);
    const auto t = sample_threshold(Setting::std_noisy, fig3, rc.k1, rc.k2);
    const double log_card =
        log_cardinality_lower_bound(fig3, CardinalityVariant::standard).value;
    const double fano = fano_lower_bound(
        mi_slope(Setting::std_noisy, fig3, rc.k1, rc.k2) * t.n, log_card);
    CHECK(fano == doctest::Approx(0.5).epsilon(1e-9));
  }

  // Thresholds grow with the model's log-cardinality at fixed MI slope.
  const auto small = SupportModel::wgm(WgmParams{6, 4, 2, 2, 2});
  CHECK(sample_threshold(Setting::onebit_exact, fig3).n >
        sample_threshold(Setting::onebit_exact, small).n);
}

TEST_CASE("bound report serializes all fields") {
  const auto model = SupportModel::wgm(WgmParams{15, 10, 5, 5, 2});
  const auto rep = make_bound_report(Setting::onebit_exact, model, 2.0);
  const std::string json = bound_report_to_json(rep);
  CHECK(json == bound_report_to_json(rep));  // byte stable
  const auto parsed = nlohmann::json::parse(json);
  CHECK(parsed["setting"] == "onebit_exact");
  CHECK(parsed["n"] == 2.0);
  CHECK(parsed["log_card"].get<double>() ==
        doctest::Approx(8.958797346140274).epsilon(1e-12));
  CHECK(parsed["mi"].get<double>() ==
        doctest::Approx(4 * std::log(2.0)).epsilon(1e-12));
  CHECK(parsed["fano"].get<double>() ==
        doctest::Approx(1.0 - 5 * std::log(2.0) / std::log(7776.0)).epsilon(1e-12));
  CHECK(parsed["threshold_n"].get<double>() ==
        doctest::Approx(2.731203125901445).epsilon(1e-12));
  CHECK(parsed["vacuous"] == false);
}

TEST_CASE("joint covariance determinant identity") {
  Rng rng(31);
  EnsembleSpec spec;
  spec.family = Family::f1;
  spec.model = SupportModel::regular(5, 2);
  spec.n = 4;
  spec.sigma = 0.8;
  spec.c0 = 1.0;
  spec.eps = 0.5;
  const Ensemble f1 = build_ensemble(spec);
  const double expected = 0.8 * 0.8 * std::pow(4.0, -5);
  for (int t = 0; t < 10; ++t) {
    const Signal m = sample_uniform(f1, rng);
    const double det = joint_covariance(m.values, 4, 0.8).determinant();
    CHECK(std::abs(det - expected) <= 1e-9 * expected);
  }
}

TEST_CASE("averaged covariance reproduces the closed-form MI bound") {
  // Vertex-transitive models make the averaging argument exact.
  for (auto model : {SupportModel::regular(4, 2),
                     SupportModel::wgm(WgmParams{6, 4, 2, 2, 2})}) {
    EnsembleSpec spec;
    spec.family = Family::f1;
    spec.model = model;
    spec.n = 3;
    spec.sigma = 1.1;
    spec.c0 = 0.9;
    spec.eps = 0.4;
    const Ensemble f1 = build_ensemble(spec);
    const auto members = f1.members();

    const double det_direct = averaged_covariance_det_direct(members, 3, 1.1);
    const double det_generic = averaged_covariance(members, 3, 1.1).determinant();
    CHECK(std::abs(det_generic - det_direct) <= 1e-9 * std::abs(det_direct));

    const auto rc = *f1.constants();
    const double closed =
        mi_bound_std_noisy(3.0, model.sparsity(), model.dimension(), rc.k1, rc.k2);
    const double via_cov = mi_from_covariance(members, 3, 1.1);
    CHECK(std::abs(via_cov - closed) <= 1e-9 * std::max(1.0, std::abs(closed)));
  }
}
