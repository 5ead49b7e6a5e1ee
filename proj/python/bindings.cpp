// Python bindings for the main operations: graph models, ensembles,
// measurement channels, analytic bounds, decoders, and the Monte Carlo
// harness.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "csslb/errors.hpp"
#include "csslb/harness.hpp"

namespace py = pybind11;
using namespace csslb;

namespace {

py::dict validation_to_dict(const ValidationReport& rep) {
  auto check = [](const RequirementCheck& c) {
    py::dict d;
    d["pass"] = c.pass;
    d["reason"] = c.reason;
    return d;
  };
  py::dict d;
  d["structural"] = check(rep.structural);
  d["r1"] = check(rep.r1);
  d["r2"] = check(rep.r2);
  d["r3"] = check(rep.r3);
  d["feasible"] = rep.feasible;
  return d;
}

py::dict report_to_dict(const LemmaReport& rep) {
  py::list checks;
  for (const auto& c : rep.checks) {
    py::dict d;
    d["name"] = c.name;
    d["pass"] = c.pass;
    d["measured"] = c.measured;
    d["reference"] = c.reference;
    d["note"] = c.note;
    checks.append(d);
  }
  py::dict d;
  d["checks"] = checks;
  d["all_pass"] = rep.all_pass();
  return d;
}

}  // namespace

PYBIND11_MODULE(_csslb, m) {
  m.doc() = "weighted-graph sparsity models, Fano lower bounds, and Monte "
            "Carlo verification";

  py::register_exception<RejectedParams>(m, "RejectedParams", PyExc_ValueError);
  py::register_exception<TooLarge>(m, "TooLarge", PyExc_RuntimeError);
  py::register_exception<Divergence>(m, "Divergence", PyExc_RuntimeError);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("stream", &Rng::stream, py::arg("master"), py::arg("stream_id"))
      .def("normal", &Rng::normal)
      .def("uniform01", &Rng::uniform01)
      .def("below", &Rng::below);

  py::class_<WgmParams>(m, "WgmParams")
      .def(py::init([](int d, int s, int g, int B, int rho) {
             return WgmParams{d, s, g, B, rho};
           }),
           py::arg("d"), py::arg("s"), py::arg("g"), py::arg("B"), py::arg("rho"))
      .def_readwrite("d", &WgmParams::d)
      .def_readwrite("s", &WgmParams::s)
      .def_readwrite("g", &WgmParams::g)
      .def_readwrite("B", &WgmParams::B)
      .def_readwrite("rho", &WgmParams::rho);

  py::class_<WeightedGraph>(m, "WeightedGraph")
      .def_readonly("vertex_count", &WeightedGraph::vertex_count)
      .def_property_readonly("edges",
                             [](const WeightedGraph& g) {
                               py::list out;
                               for (const auto& e : g.edges)
                                 out.append(py::make_tuple(e.u, e.v, e.w));
                               return out;
                             })
      .def("to_json", &graph_to_json);

  m.def("make_graph",
        [](int d, const std::vector<std::tuple<int, int, int>>& edges) {
          std::vector<WeightedEdge> es;
          for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
          return make_graph(d, std::move(es));
        },
        py::arg("vertex_count"), py::arg("edges"));
  m.def("weight_degree", &weight_degree);
  m.def("validate_requirements",
        [](const WgmParams& p) { return validation_to_dict(validate_requirements(p)); });
  m.def("build_construction_graph", &build_construction_graph);
  m.def("min_weight_forest",
        [](const WeightedGraph& g, const Support& s, int target) -> py::object {
          const auto r = min_weight_forest(g, s, target);
          if (!r) return py::none();
          py::list edges;
          for (const auto& e : r->forest.edges)
            edges.append(py::make_tuple(e.u, e.v, e.w));
          py::dict d;
          d["weight"] = r->weight;
          d["edges"] = edges;
          d["components"] = r->forest.components();
          return d;
        },
        py::arg("graph"), py::arg("support"), py::arg("components"));
  m.def("feasible_parameter_search",
        [](int s, int g, int B, int d_max, int rho_max) {
          py::list out;
          for (const auto& p : feasible_parameter_search(s, g, B, d_max, rho_max))
            out.append(py::make_tuple(p.d, p.rho));
          return out;
        },
        py::arg("s"), py::arg("g"), py::arg("B"), py::arg("d_max"), py::arg("rho_max"));

  py::class_<SupportModel>(m, "SupportModel")
      .def_static("wgm", py::overload_cast<const WgmParams&>(&SupportModel::wgm))
      .def_static("wgm_on_graph",
                  py::overload_cast<WeightedGraph, const WgmParams&>(&SupportModel::wgm))
      .def_static("tree", &SupportModel::tree, py::arg("d"), py::arg("s"))
      .def_static("block", &SupportModel::block, py::arg("J"), py::arg("N"), py::arg("K"))
      .def_static("regular", &SupportModel::regular, py::arg("d"), py::arg("s"))
      .def_property_readonly("dimension", &SupportModel::dimension)
      .def_property_readonly("sparsity", &SupportModel::sparsity)
      .def("admits", &SupportModel::admits);

  m.def("enumerate_supports", &enumerate_supports, py::arg("model"),
        py::arg("cap") = kDefaultEnumerationCap);
  m.def("supports_to_json", &supports_to_json);

  py::enum_<CardinalityVariant>(m, "CardinalityVariant")
      .value("standard", CardinalityVariant::standard)
      .value("onebit", CardinalityVariant::onebit);
  m.def("log_cardinality_lower_bound",
        [](const SupportModel& model, CardinalityVariant v) {
          const auto b = log_cardinality_lower_bound(model, v);
          return py::make_tuple(b.value, b.weak);
        });

  py::enum_<Family>(m, "Family")
      .value("f1", Family::f1)
      .value("f2", Family::f2)
      .value("f3", Family::f3);

  py::class_<EnsembleSpec>(m, "EnsembleSpec")
      .def(py::init([](Family family, SupportModel model, int n, double sigma,
                       double c0, double eps) {
             EnsembleSpec spec;
             spec.family = family;
             spec.model = std::move(model);
             spec.n = n;
             spec.sigma = sigma;
             spec.c0 = c0;
             spec.eps = eps;
             return spec;
           }),
           py::arg("family"), py::arg("model"), py::arg("n") = 1,
           py::arg("sigma") = 1.0, py::arg("c0") = 1.0,
           py::arg("eps") = kDefaultF1Eps)
      .def_readwrite("n", &EnsembleSpec::n)
      .def_readwrite("sigma", &EnsembleSpec::sigma)
      .def_readwrite("c0", &EnsembleSpec::c0)
      .def_readwrite("eps", &EnsembleSpec::eps);

  py::class_<Signal>(m, "Signal")
      .def_property_readonly("values",
                             [](const Signal& s) { return s.values; })
      .def_property_readonly("support", &Signal::support);

  py::class_<RecoveryConstants>(m, "RecoveryConstants")
      .def_static("from_parameters", &RecoveryConstants::from, py::arg("c0"),
                  py::arg("eps"), py::arg("sigma"), py::arg("n"))
      .def_readonly("k1", &RecoveryConstants::k1)
      .def_readonly("k2", &RecoveryConstants::k2)
      .def_readonly("v1", &RecoveryConstants::v1)
      .def_readonly("v2", &RecoveryConstants::v2)
      .def_readonly("sep", &RecoveryConstants::sep);

  py::class_<Ensemble>(m, "Ensemble")
      .def_property_readonly("size", &Ensemble::size)
      .def_property_readonly("patterns_per_support", &Ensemble::patterns_per_support)
      .def_property_readonly("supports", &Ensemble::supports)
      .def("member", &Ensemble::member)
      .def("sample_index", &Ensemble::sample_index)
      .def("constants", [](const Ensemble& e) -> py::object {
        if (!e.constants()) return py::none();
        return py::cast(*e.constants());
      });
  m.def("build_ensemble", &build_ensemble, py::arg("spec"),
        py::arg("cap") = kDefaultEnumerationCap);
  m.def("sample_uniform", &sample_uniform);
  m.def("min_pairwise_distance", &min_pairwise_distance);

  py::enum_<DesignKind>(m, "DesignKind")
      .value("gaussian", DesignKind::gaussian)
      .value("bernoulli", DesignKind::bernoulli);
  py::enum_<Channel>(m, "Channel")
      .value("linear", Channel::linear)
      .value("onebit", Channel::onebit);
  m.def("make_design", &make_design, py::arg("kind"), py::arg("n"), py::arg("d"),
        py::arg("rng"));
  py::class_<MeasurementSet>(m, "MeasurementSet")
      .def_readonly("y", &MeasurementSet::y)
      .def_readonly("noise", &MeasurementSet::noise)
      .def_readonly("sigma", &MeasurementSet::sigma);
  m.def("measure", &measure, py::arg("x"), py::arg("beta"), py::arg("sigma"),
        py::arg("channel"), py::arg("rng"));
  m.def("rip_expectation_check",
        [](DesignKind kind, const Eigen::VectorXd& beta, int n, int trials,
           Rng& rng) {
          const auto r = rip_expectation_check(kind, beta, n, trials, rng);
          return py::make_tuple(r.mean, r.std_error);
        },
        py::arg("kind"), py::arg("beta"), py::arg("n"), py::arg("trials"),
        py::arg("rng"));

  py::enum_<Setting>(m, "Setting")
      .value("std_noisy", Setting::std_noisy)
      .value("std_noiseless", Setting::std_noiseless)
      .value("onebit_exact", Setting::onebit_exact)
      .value("onebit_approx", Setting::onebit_approx);

  m.def("mi_bound_std_noisy", &mi_bound_std_noisy, py::arg("n"), py::arg("s"),
        py::arg("d"), py::arg("k1"), py::arg("k2"));
  m.def("mi_bound_std_noiseless", &mi_bound_std_noiseless, py::arg("n"), py::arg("s"));
  m.def("count_noiseless_outputs", &count_noiseless_outputs);
  m.def("mi_bound_onebit", &mi_bound_onebit);
  m.def("fano_lower_bound", &fano_lower_bound, py::arg("mi_upper"), py::arg("log_card"));
  m.def("noise_concentration_bound", &noise_concentration_bound, py::arg("n"),
        py::arg("eps"));
  m.def("sample_threshold",
        [](Setting st, const SupportModel& model, double k1, double k2) {
          const auto t = sample_threshold(st, model, k1, k2);
          return py::make_tuple(t.n, t.vacuous);
        },
        py::arg("setting"), py::arg("model"), py::arg("k1") = 0.0,
        py::arg("k2") = 0.0);
  m.def("bound_report_json",
        [](Setting st, const SupportModel& model, double n, double k1, double k2) {
          return bound_report_to_json(make_bound_report(st, model, n, k1, k2));
        },
        py::arg("setting"), py::arg("model"), py::arg("n"), py::arg("k1") = 0.0,
        py::arg("k2") = 0.0);
  m.def("joint_covariance", &joint_covariance);
  m.def("mi_from_covariance", &mi_from_covariance);

  py::class_<DecodeResult>(m, "DecodeResult")
      .def_readonly("estimate", &DecodeResult::estimate)
      .def_readonly("index", &DecodeResult::index)
      .def_readonly("score", &DecodeResult::score)
      .def_readonly("ties", &DecodeResult::ties);
  m.def("ml_decode_linear", &ml_decode_linear);
  m.def("ml_decode_onebit", &ml_decode_onebit, py::arg("x"), py::arg("y"),
        py::arg("ensemble"), py::arg("sigma"), py::arg("agreement_only") = false);
  m.def("model_project",
        py::overload_cast<const Eigen::VectorXd&, const SupportModel&, std::int64_t>(
            &model_project),
        py::arg("v"), py::arg("model"), py::arg("cap") = kDefaultEnumerationCap);
  m.def("model_iht", &model_iht, py::arg("x"), py::arg("y"), py::arg("model"),
        py::arg("iterations"), py::arg("step") = 1.0,
        py::arg("cap") = kDefaultEnumerationCap);
  m.def("log_normal_cdf", &log_normal_cdf);

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("n", &Scenario::n)
      .def_readwrite("sigma", &Scenario::sigma)
      .def_readwrite("seed", &Scenario::seed)
      .def_readwrite("failure_c", &Scenario::failure_c)
      .def_readwrite("agreement_decoder", &Scenario::agreement_decoder);
  m.def("make_scenario", &make_scenario, py::arg("setting"), py::arg("ensemble"),
        py::arg("n"), py::arg("sigma"), py::arg("seed"),
        py::arg("design") = std::nullopt,
        py::arg("allow_design_mismatch") = false);
  m.def("estimate_error_probability",
        [](const Scenario& sc, int trials, int workers) {
          const auto est = estimate_error_probability(sc, trials, workers);
          py::dict d;
          d["trials"] = est.trials;
          d["failures"] = est.failures;
          d["err_rate"] = est.err_rate;
          d["wilson_lo"] = est.wilson_lo;
          d["wilson_hi"] = est.wilson_hi;
          return d;
        },
        py::arg("scenario"), py::arg("trials"), py::arg("workers") = 0);
  m.def("phase_curve_csv",
        [](const Scenario& sc, std::vector<int> n_grid, int trials, int workers) {
          return curve_to_csv(phase_curve(sc, std::move(n_grid), trials, workers));
        },
        py::arg("scenario"), py::arg("n_grid"), py::arg("trials"),
        py::arg("workers") = 0);
  m.def("wilson_interval",
        [](int failures, int trials) {
          const auto w = wilson_interval(failures, trials);
          return py::make_tuple(w.lo, w.hi);
        },
        py::arg("failures"), py::arg("trials"));
  m.def("empirical_mi_onebit",
        [](const Ensemble& e, int n, double sigma, int x_samples, Rng& rng) {
          return empirical_mi_onebit(e, n, sigma, x_samples, rng);
        },
        py::arg("ensemble"), py::arg("n"), py::arg("sigma"), py::arg("x_samples"),
        py::arg("rng"));
  m.def("empirical_mi_noiseless_std",
        [](const Ensemble& e, int n, int d) {
          return empirical_mi_noiseless_std(e, n, d);
        },
        py::arg("ensemble"), py::arg("n"), py::arg("d"));
  m.def("verify_lemmas",
        [](const WgmParams& wgm, std::uint64_t seed) {
          VerifyConfig cfg;
          cfg.wgm = wgm;
          cfg.seed = seed;
          return report_to_dict(verify_lemmas(cfg));
        },
        py::arg("wgm"), py::arg("seed") = 20240901);
}
