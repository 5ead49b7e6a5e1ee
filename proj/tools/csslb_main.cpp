// csslb — weighted-graph sparsity models, restricted ensembles, Fano bounds,
// and Monte Carlo verification at desk scale.
//
// Exit codes: 0 success, 1 check failure (verify/simulate), 2 bad arguments.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "csslb/errors.hpp"
#include "csslb/harness.hpp"

using namespace csslb;

namespace {

struct ModelOptions {
  std::string model = "wgm";
  int d = 0, g = 0, s = 0, B = 0, rho = 0;
  int J = 0, N = 0, K = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "wgm | tree | block | regular")
        ->check(CLI::IsMember({"wgm", "tree", "block", "regular"}));
    cmd->add_option("--d", d, "dimension");
    cmd->add_option("--g", g, "component count (wgm)");
    cmd->add_option("--s", s, "sparsity");
    cmd->add_option("--B", B, "weight budget (wgm)");
    cmd->add_option("--rho", rho, "weight degree (wgm, even)");
    cmd->add_option("--J", J, "entries per block (block)");
    cmd->add_option("--N", N, "total blocks (block)");
    cmd->add_option("--K", K, "selected blocks (block)");
  }

  SupportModel build() const {
    if (model == "wgm") return SupportModel::wgm(WgmParams{d, s, g, B, rho});
    if (model == "tree") return SupportModel::tree(d, s);
    if (model == "block") return SupportModel::block(J, N, K);
    return SupportModel::regular(d, s);
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RejectedParams("cannot open output file: " + path);
  out << text;
}

std::string validation_to_json(const WgmParams& p) {
  const auto rep = validate_requirements(p);
  nlohmann::json j;
  auto put = [&](const char* key, const RequirementCheck& c) {
    j[key] = {{"pass", c.pass}, {"reason", c.reason}};
  };
  put("structural", rep.structural);
  put("r1", rep.r1);
  put("r2", rep.r2);
  put("r3", rep.r3);
  j["feasible"] = rep.feasible;
  return j.dump(2);
}

Setting parse_setting(const std::string& name) {
  if (name == "std_noisy") return Setting::std_noisy;
  if (name == "std_noiseless") return Setting::std_noiseless;
  if (name == "onebit_exact") return Setting::onebit_exact;
  if (name == "onebit_approx") return Setting::onebit_approx;
  throw RejectedParams("unknown setting: " + name);
}

int run(int argc, char** argv) {
  CLI::App app{"weighted-graph sparsity lower-bound toolkit"};
  app.require_subcommand(1);

  // validate
  auto* validate = app.add_subcommand("validate", "check WGM requirements R1-R3");
  WgmParams vp;
  validate->add_option("--d", vp.d)->required();
  validate->add_option("--g", vp.g)->required();
  validate->add_option("--s", vp.s)->required();
  validate->add_option("--B", vp.B)->required();
  validate->add_option("--rho", vp.rho)->required();
  std::string validate_out;
  validate->add_option("--out", validate_out, "output file (default stdout)");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "list admissible supports as JSON");
  ModelOptions em;
  em.attach(enumerate);
  std::int64_t enum_cap = kDefaultEnumerationCap;
  std::string enum_out, graph_out;
  enumerate->add_option("--cap", enum_cap, "subset enumeration cap");
  enumerate->add_option("--out", enum_out, "supports JSON file (default stdout)");
  enumerate->add_option("--graph-out", graph_out, "also write the graph JSON (wgm)");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "analytic bound report as JSON");
  ModelOptions bm;
  bm.attach(bounds);
  std::string bounds_setting = "onebit_exact";
  double bounds_n = 1.0, bounds_c0 = 1.0, bounds_eps = kDefaultF1Eps;
  std::string bounds_out;
  bounds->add_option("--setting", bounds_setting,
                     "std_noisy | std_noiseless | onebit_exact | onebit_approx");
  bounds->add_option("--n", bounds_n, "sample count");
  bounds->add_option("--c0", bounds_c0, "recovery constant (std_noisy)");
  bounds->add_option("--eps", bounds_eps, "concentration parameter (std_noisy)");
  bounds->add_option("--out", bounds_out, "output file (default stdout)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo phase curve to CSV");
  std::string sim_config, sim_out;
  int sim_workers = 0;
  simulate->add_option("--config", sim_config, "key = value config file")->required();
  simulate->add_option("--out", sim_out, "CSV file (default stdout)");
  simulate->add_option("--workers", sim_workers,
                       "worker threads (default CSSLB_THREADS or 1)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the lemma verification suite");
  VerifyConfig vc;
  verify->add_option("--d", vc.wgm.d);
  verify->add_option("--g", vc.wgm.g);
  verify->add_option("--s", vc.wgm.s);
  verify->add_option("--B", vc.wgm.B);
  verify->add_option("--rho", vc.wgm.rho);
  verify->add_option("--n", vc.n);
  verify->add_option("--sigma", vc.sigma);
  verify->add_option("--c0", vc.c0);
  verify->add_option("--f1-eps", vc.f1_eps);
  verify->add_option("--f3-eps", vc.f3_eps);
  verify->add_option("--noise-draws", vc.noise_draws);
  verify->add_option("--rip-trials", vc.rip_trials);
  verify->add_option("--seed", vc.seed);
  std::string verify_out;
  verify->add_option("--out", verify_out, "output file (default stdout)");

  // mi
  auto* mi = app.add_subcommand("mi", "empirical mutual-information oracles");
  ModelOptions mm;
  mm.attach(mi);
  std::string mi_oracle = "onebit", mi_family, mi_out;
  int mi_n = 1, mi_x_samples = 32;
  double mi_sigma = 0.0, mi_eps = -1.0, mi_c0 = 1.0;
  std::uint64_t mi_seed = 1;
  mi->add_option("--oracle", mi_oracle, "onebit | noiseless_std")
      ->check(CLI::IsMember({"onebit", "noiseless_std"}));
  mi->add_option("--family", mi_family, "f1 | f2 | f3 (defaults per oracle)");
  mi->add_option("--n", mi_n, "sample count");
  mi->add_option("--sigma", mi_sigma, "noise level (onebit oracle)");
  mi->add_option("--x-samples", mi_x_samples, "design draws");
  mi->add_option("--eps", mi_eps, "ensemble parameter");
  mi->add_option("--c0", mi_c0, "recovery constant (f1)");
  mi->add_option("--seed", mi_seed, "rng seed");
  mi->add_option("--out", mi_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (validate->parsed()) {
    emit(validation_to_json(vp), validate_out);
    return 0;
  }

  if (enumerate->parsed()) {
    const SupportModel model = em.build();
    emit(supports_to_json(enumerate_supports(model, enum_cap)), enum_out);
    if (!graph_out.empty()) {
      const auto* wgm = std::get_if<WgmModel>(&model.kind);
      if (!wgm) throw RejectedParams("--graph-out needs --model wgm");
      emit(graph_to_json(wgm->graph), graph_out);
    }
    return 0;
  }

  if (bounds->parsed()) {
    const Setting setting = parse_setting(bounds_setting);
    double k1 = 0.0, k2 = 0.0;
    if (setting == Setting::std_noisy) {
      const auto rc = RecoveryConstants::from(bounds_c0, bounds_eps, 1.0, 1);
      k1 = rc.k1;
      k2 = rc.k2;
    }
    emit(bound_report_to_json(make_bound_report(setting, bm.build(), bounds_n, k1, k2)),
         bounds_out);
    return 0;
  }

  if (simulate->parsed()) {
    std::ifstream in(sim_config);
    if (!in) throw RejectedParams("cannot read config file: " + sim_config);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const SimulateConfig cfg = parse_simulate_config(buffer.str());
    const CurveTable table =
        phase_curve(cfg.scenario, cfg.n_grid, cfg.trials, sim_workers);
    emit(curve_to_csv(table), sim_out);
    if (!curve_fano_consistent(table)) {
      std::cerr << "fano consistency violated: some err_rate + 3*half_width "
                   "fell below the analytic bound\n";
      return 1;
    }
    return 0;
  }

  if (verify->parsed()) {
    const LemmaReport rep = verify_lemmas(vc);
    emit(lemma_report_to_json(rep), verify_out);
    return rep.all_pass() ? 0 : 1;
  }

  if (mi->parsed()) {
    const SupportModel model = mm.build();
    EnsembleSpec spec;
    spec.model = model;
    const bool onebit = mi_oracle == "onebit";
    if (mi_family.empty()) mi_family = onebit ? "f3" : "f2";
    if (mi_family == "f1") {
      spec.family = Family::f1;
      spec.n = mi_n;
      spec.sigma = mi_sigma > 0 ? mi_sigma : 1.0;
      spec.c0 = mi_c0;
      spec.eps = mi_eps > 0 ? mi_eps : 0.5;
    } else if (mi_family == "f2") {
      spec.family = Family::f2;
    } else if (mi_family == "f3") {
      spec.family = Family::f3;
      spec.eps = mi_eps > 0 ? mi_eps : kDefaultF3Eps;
    } else {
      throw RejectedParams("unknown family: " + mi_family);
    }
    const Ensemble e = Ensemble::build(spec);
    Rng rng(mi_seed);
    nlohmann::json j;
    j["oracle"] = mi_oracle;
    j["n"] = mi_n;
    j["cardinality"] = e.size();
    j["ln_cardinality"] = std::log(static_cast<double>(e.size()));
    if (onebit) {
      j["sigma"] = mi_sigma;
      j["value"] = empirical_mi_onebit(e, mi_n, mi_sigma, mi_x_samples, rng);
      j["analytic_bound"] = mi_bound_onebit(mi_n);
    } else {
      const int nd = mi_n * model.dimension();
      j["value"] = nd <= 20
                       ? empirical_mi_noiseless_std(e, mi_n, model.dimension())
                       : empirical_mi_noiseless_std(e, mi_n, model.dimension(),
                                                    mi_x_samples, &rng);
      j["analytic_bound"] = mi_bound_std_noiseless(mi_n, model.sparsity());
      j["output_count_bound"] =
          mi_n * std::log(static_cast<double>(count_noiseless_outputs(model.sparsity())));
    }
    emit(j.dump(2), mi_out);
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const RejectedParams& e) {
    std::cerr << "rejected parameters: " << e.what() << "\n";
    return 2;
  } catch (const TooLarge& e) {
    std::cerr << "instance too large: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
