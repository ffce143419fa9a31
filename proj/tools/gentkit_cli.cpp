// Command-line front end: loads algebras, states, maps and cones from JSON,
// runs the toolkit computations and emits text, JSON or CSV reports.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical non-convergence in
// strict mode.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include <Eigen/QR>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gentkit/cones.hpp"
#include "gentkit/coherence.hpp"
#include "gentkit/io.hpp"
#include "gentkit/maps.hpp"
#include "gentkit/measures.hpp"
#include "gentkit/registry.hpp"

using nlohmann::json;
using namespace gentkit;

namespace {

struct CommonOptions {
  std::string algebra_path;
  std::string state_path;
  std::string output_path;
  std::string format = "text";
  int restarts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  bool strict = false;
};

void emit(const CommonOptions& opts, const json& report, const std::string& text) {
  std::string payload;
  if (opts.format == "json") {
    payload = report.dump(2) + "\n";
  } else if (opts.format == "csv") {
    std::ostringstream csv;
    csv << "key,value\n";
    for (auto it = report.begin(); it != report.end(); ++it) {
      if (it.value().is_primitive()) csv << it.key() << "," << it.value().dump() << "\n";
    }
    payload = csv.str();
  } else {
    payload = text;
  }
  if (opts.output_path.empty()) {
    std::cout << payload;
  } else {
    io::write_text_atomic(opts.output_path, payload);
  }
}

std::shared_ptr<const AlgebraRep> load_algebra(const std::string& path) {
  AlgebraSpec spec = io::algebra_spec_from_json(io::load_json_file(path));
  return std::make_shared<const AlgebraRep>(build_algebra(spec));
}

io::StateInput load_state(const std::string& path) {
  return io::state_from_json(io::load_json_file(path));
}

int cmd_purity(const CommonOptions& opts) {
  auto alg = load_algebra(opts.algebra_path);
  io::StateInput state = load_state(opts.state_path);
  double purity = h_purity(*alg, state.as_density().matrix());

  PurityOptions popts;
  popts.restarts = opts.restarts;
  popts.seed = opts.seed;
  MaxPurityResult maxp = max_purity(*alg, popts);
  if (opts.strict && !maxp.converged) return 3;

  json report{{"command", "purity"},
              {"purity", purity},
              {"max_purity", maxp.value},
              {"seed", opts.seed}};
  std::ostringstream text;
  text << std::fixed << std::setprecision(6);
  text << "purity " << purity << ", max purity " << maxp.value;
  if (state.pure) {
    CoherenceOptions copts;
    copts.tol = opts.tol;
    copts.purity = popts;
    copts.max_purity_hint = maxp.value;
    CoherenceReport rep = is_coherent(*alg, *state.pure, copts);
    report["coherent"] = rep.is_coherent;
    text << ", coherent: " << (rep.is_coherent ? "yes" : "no");
    if (rep.witness) {
      HermitianSpectrum s = eig_hermitian(*rep.witness);
      json spectrum = json::array();
      for (int i = 0; i < s.eigenvalues.size(); ++i) spectrum.push_back(s.eigenvalues(i));
      report["witness_spectrum"] = spectrum;
      text << "\nwitness spectrum:";
      for (int i = 0; i < s.eigenvalues.size(); ++i) text << " " << s.eigenvalues(i);
    }
  }
  text << "\n";
  emit(opts, report, text.str());
  return 0;
}

int cmd_measure(const CommonOptions& opts, const std::string& measure,
                const std::string& fn_name, const std::string& outer_path) {
  auto alg = load_algebra(opts.algebra_path);
  io::StateInput state = load_state(opts.state_path);
  SchurConcaveFn fn = SchurConcaveFn::by_name(fn_name);

  json report{{"command", "measure"}, {"measure", measure}, {"fn", fn_name},
              {"seed", opts.seed}};
  std::ostringstream text;
  text << std::fixed << std::setprecision(6);
  bool converged = true;

  if (measure == "pure" || measure == "cartan") {
    if (!state.pure) throw InvalidInput("measure " + measure + " needs a pure state");
    if (measure == "pure") {
      double v = s_pure(*alg, *state.pure, fn);
      report["value"] = v;
      text << "s_pure = " << v << "\n";
    } else {
      SCartanResult r = s_cartan_detailed(*alg, *state.pure, fn, 4, opts.seed);
      report["value"] = r.value;
      report["per_seed"] = r.per_seed;
      report["seed_variance"] = r.variance;
      text << "s_cartan = " << r.value << " (variance across seeds " << r.variance
           << ")\n";
    }
  } else if (measure == "roof" || measure == "purity-roof") {
    std::shared_ptr<const AlgebraRep> outer;
    if (!outer_path.empty()) {
      outer = load_algebra(outer_path);
    } else {
      AlgebraSpec full;
      full.kind = AlgebraSpec::Kind::FullMatrix;
      full.dims = {alg->hilbert_dim()};
      outer = std::make_shared<const AlgebraRep>(build_algebra(full));
    }
    RoofOptions ropts;
    ropts.restarts = opts.restarts;
    ropts.seed = opts.seed;
    RoofResult r = measure == "roof"
                       ? s_roof(*outer, *alg, state.as_density(), fn, ropts)
                       : purity_measure(*outer, *alg, state.as_density(), ropts);
    converged = r.converged;
    report["value"] = r.value;
    report["converged"] = r.converged;
    report["sweeps"] = r.iterations;
    json decomposition = json::array();
    for (const auto& [w, psi] : r.decomposition)
      decomposition.push_back(
          {{"weight", w}, {"state", io::vector_to_json(psi.amplitudes())}});
    report["decomposition"] = decomposition;
    text << (measure == "roof" ? "s_roof = " : "purity_measure = ") << r.value
         << (r.converged ? "" : "  [not converged]") << "\n";
  } else if (measure == "amplitude") {
    if (!state.pure) throw InvalidInput("measure amplitude needs a pure state");
    AmplitudeOptions aopts;
    aopts.restarts = opts.restarts;
    aopts.seed = opts.seed;
    double v = s_amplitude(*alg, *state.pure, fn, aopts);
    report["value"] = v;
    text << "s_amplitude = " << v << " (upper bound)\n";
  } else if (measure == "hrank") {
    if (!state.pure) throw InvalidInput("measure hrank needs a pure state");
    AmplitudeOptions aopts;
    aopts.restarts = opts.restarts;
    aopts.seed = opts.seed;
    int r = h_rank(*alg, *state.pure, aopts);
    report["value"] = r;
    text << "h_rank = " << r << "\n";
  } else {
    throw InvalidInput("unknown measure: " + measure);
  }
  if (opts.strict && !converged) return 3;
  emit(opts, report, text.str());
  return 0;
}

int cmd_maps(const CommonOptions& opts, const std::string& map_path) {
  auto alg = load_algebra(opts.algebra_path);
  ExplicitMap m = io::map_from_json(io::load_json_file(map_path));

  LiftReport lift = lifts_to(m, *alg);
  std::vector<SeparableVerdict> verdicts = separable_certificate(m, *alg);

  json report{{"command", "maps"},
              {"quantum_map", is_quantum_map(m)},
              {"liftable", lift.liftable},
              {"lift_residual", lift.residual}};
  json verdicts_json = json::array();
  std::ostringstream text;
  text << "quantum map: " << (is_quantum_map(m) ? "yes" : "no") << "\n";
  text << std::scientific << std::setprecision(3);
  text << "liftable: " << (lift.liftable ? "yes" : "no") << ", residual "
       << lift.residual << "\n";
  for (std::size_t k = 0; k < verdicts.size(); ++k) {
    const char* v = verdicts[k] == SeparableVerdict::CertifiedByConstruction
                        ? "certified_by_construction"
                    : verdicts[k] == SeparableVerdict::CertifiedNumerically
                        ? "certified_numerically"
                        : "uncertified";
    verdicts_json.push_back(v);
    text << "operator " << k << ": " << v << "\n";
  }
  report["separable_verdicts"] = verdicts_json;
  emit(opts, report, text.str());
  return 0;
}

int cmd_protocol(const CommonOptions& opts, const std::string& protocol_path,
                 const std::string& mode, bool omit_last_round) {
  io::StateInput state = load_state(opts.state_path);
  ProtocolNode root = io::protocol_from_json(io::load_json_file(protocol_path));
  ComplexityMode cmode =
      mode == "count" ? ComplexityMode::LogCount : ComplexityMode::Entropy;

  double total =
      communication_complexity(root, state.as_density(), cmode, omit_last_round);
  // per-round table: walk the first level explicitly
  json report{{"command", "protocol"},
              {"mode", mode},
              {"omit_last_round", omit_last_round},
              {"total_bits", total}};
  std::ostringstream text;
  text << std::fixed << std::setprecision(3);
  ProtocolNode head{root.map, {}};
  double first_round =
      root.children.empty() && omit_last_round
          ? 0.0
          : communication_complexity(head, state.as_density(), cmode, false);
  text << "round 1: " << first_round << " bits; total: " << total << "\n";
  report["round_1_bits"] = first_round;
  emit(opts, report, text.str());
  return 0;
}

int cmd_cones(const CommonOptions& opts, const std::string& cone_path,
              const std::string& vector_path, const std::string& fn_name) {
  json spec = io::load_json_file(cone_path);
  cones::Cone d = io::cone_from_json(spec);
  std::optional<cones::PiMap> pi = io::pi_from_json(spec);
  std::optional<cones::Cone> inner;
  if (spec.contains("inner")) inner = io::cone_from_json(spec["inner"]);

  json report{{"command", "cones"}, {"generators", d.size()}};
  std::ostringstream text;
  text << std::setprecision(6);
  text << "D: " << d.size() << " generators in R^" << d.ambient_dim() << "\n";

  if (inner && pi) {
    cones::Cone dsep = cones::separable_cone(d, *inner, *pi);
    report["separable_generators"] = dsep.size();
    text << "D_sep: " << dsep.size() << " generators\n";
  }
  if (!vector_path.empty()) {
    json vj = io::load_json_file(vector_path);
    RealVector x = io::real_vector_from_json(vj.contains("vector") ? vj["vector"] : vj);
    bool member = cones::contains(d, x);
    report["contains"] = member;
    text << "contains: " << (member ? "yes" : "no") << "\n";
    if (member) {
      SchurConcaveFn fn = SchurConcaveFn::by_name(fn_name);
      cones::ConeOptions copts;
      copts.seed = opts.seed;
      double s = cones::cone_S(d, x, fn, copts);
      report["cone_S"] = s;
      text << "S(x) = " << s << "\n";
      if (inner && pi) {
        double rel = cones::cone_S_relative(d, *inner, *pi, x, fn, copts);
        report["cone_S_relative"] = rel;
        text << "S(x;C) = " << rel << "\n";
      }
    }
  }
  emit(opts, report, text.str());
  return 0;
}

int cmd_campaign(const CommonOptions& opts, const std::string& dims_arg, int samples) {
  std::vector<int> dims;
  {
    std::stringstream ss(dims_arg);
    std::string part;
    while (std::getline(ss, part, ',')) dims.push_back(std::stoi(part));
  }
  if (dims.size() != 2) throw InvalidInput("campaign: --dims expects two parts, e.g. 2,2");

  AlgebraSpec hspec;
  hspec.kind = AlgebraSpec::Kind::BipartiteLocal;
  hspec.dims = dims;
  auto h_alg = std::make_shared<const AlgebraRep>(build_algebra(hspec));
  AlgebraSpec gspec;
  gspec.kind = AlgebraSpec::Kind::FullMatrix;
  gspec.dims = {dims[0] * dims[1]};
  auto g_alg = std::make_shared<const AlgebraRep>(build_algebra(gspec));

  const int n = dims[0] * dims[1];
  std::vector<PureState> extra;
  for (int k = 0; k < 12; ++k) extra.push_back(random_pure(n, opts.seed + 1000 + k));
  cones::LieConePair pair =
      cones::lie_cone_pair(g_alg, h_alg, extra, 12, opts.seed + 7);

  // trace-preserving family of product-unitary conjugations
  std::vector<cones::ConeMap> maps;
  std::mt19937_64 rng(opts.seed ^ 0x2b67883bull);
  std::normal_distribution<double> gauss;
  auto random_unitary = [&](int dim) {
    Matrix g(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    return Matrix(qr.householderQ());
  };
  double weights[3] = {0.5, 0.3, 0.2};
  for (double w : weights)
    maps.push_back(pair.conjugation_map(
        kron(random_unitary(dims[0]), random_unitary(dims[1])), w));
  cones::close_under_maps(pair.d, maps, 1);
  pair.c.generators = pair.pi.matrix * pair.d.generators;

  cones::ConeOptions copts;
  copts.seed = opts.seed;
  cones::MonotonicityReport rep = cones::monotonicity_trial(
      maps, pair.d, pair.c, pair.pi, SchurConcaveFn::shannon(), samples, opts.seed,
      copts);

  json report{{"command", "campaign"},
              {"samples", rep.samples_run},
              {"preconditions_ok", rep.preconditions_ok},
              {"max_violation", rep.max_violation},
              {"max_composed_violation", rep.max_composed_violation}};
  if (!rep.preconditions_ok) report["precondition_failure"] = rep.precondition_failure;
  json ces = json::array();
  for (const RealVector& x : rep.counterexamples) ces.push_back(io::real_vector_to_json(x));
  report["counterexamples"] = ces;

  std::ostringstream text;
  text << std::scientific << std::setprecision(3);
  if (!rep.preconditions_ok) {
    text << "precondition failed: " << rep.precondition_failure << "\n";
  } else {
    text << "samples: " << rep.samples_run << "\n"
         << "max violation <= " << rep.max_violation << "\n"
         << "max composed violation <= " << rep.max_composed_violation << "\n";
  }
  emit(opts, report, text.str());
  return rep.preconditions_ok || !opts.strict ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gentkit: generalized-entanglement numerics toolkit"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string measure = "pure", fn_name = "shannon", outer_path;
  std::string map_path, protocol_path, cone_path, vector_path;
  std::string mode = "entropy", dims_arg = "2,2";
  int samples = 100;
  bool omit_last_round = false;

  auto add_common = [&](CLI::App* sub, bool needs_algebra, bool needs_state) {
    auto* a = sub->add_option("--algebra", opts.algebra_path, "algebra spec JSON");
    if (needs_algebra) a->required();
    auto* s = sub->add_option("--state", opts.state_path, "state JSON");
    if (needs_state) s->required();
    sub->add_option("--restarts", opts.restarts, "optimizer restarts");
    sub->add_option("--seed", opts.seed, "random seed (default 0)");
    sub->add_option("--tol", opts.tol, "decision tolerance");
    sub->add_option("--format", opts.format, "text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--output", opts.output_path, "write report to file (atomic)");
    sub->add_flag("--strict", opts.strict, "exit 3 on non-convergence");
  };

  CLI::App* purity = app.add_subcommand("purity", "h-purity and coherence verdict");
  add_common(purity, true, true);

  CLI::App* measure_cmd = app.add_subcommand("measure", "entanglement measures");
  add_common(measure_cmd, true, true);
  measure_cmd->add_option("--measure", measure, "pure|cartan|roof|amplitude|hrank|purity-roof")
      ->check(CLI::IsMember({"pure", "cartan", "roof", "amplitude", "hrank", "purity-roof"}));
  measure_cmd->add_option("--fn", fn_name, "shannon|renyi2|rank")
      ->check(CLI::IsMember({"shannon", "renyi2", "rank"}));
  measure_cmd->add_option("--outer", outer_path, "outer algebra JSON (default: full)");

  CLI::App* maps_cmd = app.add_subcommand("maps", "liftability and separability reports");
  add_common(maps_cmd, true, false);
  maps_cmd->add_option("--map", map_path, "explicit map JSON")->required();

  CLI::App* protocol_cmd =
      app.add_subcommand("protocol", "communication complexity of a protocol tree");
  add_common(protocol_cmd, false, true);
  protocol_cmd->add_option("--protocol", protocol_path, "protocol tree JSON")->required();
  protocol_cmd->add_option("--mode", mode, "entropy|count")
      ->check(CLI::IsMember({"entropy", "count"}));
  protocol_cmd->add_flag("--omit-last-round", omit_last_round,
                         "drop the last round's contribution");

  CLI::App* cones_cmd = app.add_subcommand("cones", "cone membership and measures");
  add_common(cones_cmd, false, false);
  cones_cmd->add_option("--cone", cone_path, "cone JSON (generators/trace/pi/inner)")
      ->required();
  cones_cmd->add_option("--vector", vector_path, "state vector JSON");
  cones_cmd->add_option("--fn", fn_name, "shannon|renyi2|rank")
      ->check(CLI::IsMember({"shannon", "renyi2", "rank"}));

  CLI::App* campaign_cmd =
      app.add_subcommand("campaign", "monotonicity trial campaign on a Lie instantiation");
  add_common(campaign_cmd, false, false);
  campaign_cmd->add_option("--dims", dims_arg, "bipartite dimensions, e.g. 2,2");
  campaign_cmd->add_option("--samples", samples, "number of sampled states");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (purity->parsed()) return cmd_purity(opts);
    if (measure_cmd->parsed()) return cmd_measure(opts, measure, fn_name, outer_path);
    if (maps_cmd->parsed()) return cmd_maps(opts, map_path);
    if (protocol_cmd->parsed())
      return cmd_protocol(opts, protocol_path, mode, omit_last_round);
    if (cones_cmd->parsed()) return cmd_cones(opts, cone_path, vector_path, fn_name);
    if (campaign_cmd->parsed()) return cmd_campaign(opts, dims_arg, samples);
  } catch (const InvalidInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
