#include "unipd/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace unipd::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("expected a numeric array");
  Vec v(Index(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[Index(i)] = j[i].get<double>();
  return v;
}

json vec_to_json(const Vec& v) {
  json j = json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

GeneratorSpec generator_from_json(const json& j, std::uint64_t default_seed) {
  GeneratorSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  spec.seed = j.value("seed", default_seed);
  if (spec.kind == "qt") {
    spec.qubits = j.at("qubits").get<int>();
    spec.measurements = j.value("measurements", Index(0));
  } else if (spec.kind == "mc") {
    spec.rows = j.at("rows").get<Index>();
    spec.cols = j.at("cols").get<Index>();
    spec.rank = j.at("rank").get<Index>();
    spec.sample_fraction = j.at("sample_fraction").get<double>();
    spec.noise = j.value("noise", 0.0);
    spec.formulation = j.value("formulation", std::string("ball"));
    spec.kappa = j.value("kappa", 0.0);
  } else {
    throw ConfigError("unknown generator kind: " + spec.kind);
  }
  return spec;
}

json generator_to_json(const GeneratorSpec& spec) {
  json j;
  j["kind"] = spec.kind;
  j["seed"] = spec.seed;
  if (spec.kind == "qt") {
    j["qubits"] = spec.qubits;
    if (spec.measurements > 0) j["measurements"] = spec.measurements;
  } else {
    j["rows"] = spec.rows;
    j["cols"] = spec.cols;
    j["rank"] = spec.rank;
    j["sample_fraction"] = spec.sample_fraction;
    j["noise"] = spec.noise;
    j["formulation"] = spec.formulation;
    if (spec.kappa > 0) j["kappa"] = spec.kappa;
  }
  return j;
}

LinearMapPtr operator_from_json(const json& j);

LinearMapPtr operator_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "dense") {
    Index rows = j.at("rows").get<Index>();
    Index cols = j.at("cols").get<Index>();
    const json& data = j.at("data");
    if (Index(data.size()) != rows * cols)
      throw ConfigError("dense operator: data size mismatch");
    Mat a(rows, cols);
    for (Index r = 0; r < rows; ++r)  // row-major payload
      for (Index c = 0; c < cols; ++c)
        a(r, c) = data[size_t(r * cols + c)].get<double>();
    return std::make_shared<DenseMap>(std::move(a));
  }
  if (kind == "sparse") {
    Index rows = j.at("rows").get<Index>();
    Index cols = j.at("cols").get<Index>();
    std::vector<Eigen::Triplet<double>> trips;
    for (const json& t : j.at("triplets")) {
      if (!t.is_array() || t.size() != 3)
        throw ConfigError("sparse operator: triplets must be [i, j, value]");
      trips.emplace_back(t[0].get<Index>(), t[1].get<Index>(),
                         t[2].get<double>());
    }
    SpMat a(rows, cols);
    a.setFromTriplets(trips.begin(), trips.end());
    return std::make_shared<SparseMap>(std::move(a));
  }
  if (kind == "sampling") {
    Index input_dim = j.at("input_dim").get<Index>();
    std::vector<Index> idx;
    for (const json& t : j.at("indices")) idx.push_back(t.get<Index>());
    return std::make_shared<SamplingMap>(input_dim, std::move(idx));
  }
  if (kind == "tensor-ensemble") {
    return std::make_shared<TensorProductEnsembleMap>(
        j.at("qubits").get<int>(), j.at("rows").get<Index>(),
        j.at("seed").get<std::uint64_t>());
  }
  if (kind == "composition") {
    LinearMapPtr outer = operator_from_json(j.at("outer"));
    LinearMapPtr inner;
    if (j.contains("inner") && !j.at("inner").is_null())
      inner = operator_from_json(j.at("inner"));
    return std::make_shared<CompositionMap>(outer, inner,
                                            j.value("scale", 1.0));
  }
  throw ConfigError("unknown operator kind: " + kind);
}

json operator_to_json(const LinearMap& map) {
  json j;
  if (map.kind() == "dense") {
    const auto& m = dynamic_cast<const DenseMap&>(map).matrix();
    j["kind"] = "dense";
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    json data = json::array();
    for (Index r = 0; r < m.rows(); ++r)
      for (Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    j["data"] = std::move(data);
    return j;
  }
  if (map.kind() == "sparse") {
    const auto& m = dynamic_cast<const SparseMap&>(map).matrix();
    j["kind"] = "sparse";
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    json trips = json::array();
    for (int k = 0; k < m.outerSize(); ++k)
      for (SpMat::InnerIterator it(m, k); it; ++it)
        trips.push_back({it.row(), it.col(), it.value()});
    j["triplets"] = std::move(trips);
    return j;
  }
  if (map.kind() == "sampling") {
    const auto& s = dynamic_cast<const SamplingMap&>(map);
    j["kind"] = "sampling";
    j["input_dim"] = s.input_dim();
    j["indices"] = s.indices();
    return j;
  }
  if (map.kind() == "tensor-ensemble") {
    const auto& e = dynamic_cast<const TensorProductEnsembleMap&>(map);
    j["kind"] = "tensor-ensemble";
    j["qubits"] = e.qubits();
    j["rows"] = e.output_dim();
    j["seed"] = e.seed();
    return j;
  }
  if (map.kind() == "composition") {
    const auto& c = dynamic_cast<const CompositionMap&>(map);
    j["kind"] = "composition";
    j["scale"] = c.scale();
    j["outer"] = operator_to_json(*c.outer());
    if (c.inner()) j["inner"] = operator_to_json(*c.inner());
    return j;
  }
  throw ConfigError("operator kind not serializable: " + map.kind());
}

ObjectiveDescriptor objective_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return ObjectiveDescriptor::zero();
  if (kind == "quadratic-slack") return ObjectiveDescriptor::quadratic_slack();
  if (kind == "squared-nuclear")
    return ObjectiveDescriptor::squared_nuclear(j.value("n", 0.0));
  if (kind == "separable-quadratic")
    return ObjectiveDescriptor::separable_quadratic(
        vec_from_json(j.at("center")));
  throw ConfigError("unknown objective kind: " + kind);
}

json objective_to_json(const ObjectiveDescriptor& f) {
  json j;
  j["kind"] = f.name();
  if (f.kind == ObjectiveKind::SquaredNuclear && f.nuclear_scale > 0)
    j["n"] = f.nuclear_scale;
  if (f.kind == ObjectiveKind::SeparableQuadratic)
    j["center"] = vec_to_json(f.center);
  return j;
}

DomainDescriptor domain_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "whole-space")
    return DomainDescriptor::whole_space(j.at("dim").get<Index>(),
                                         j.value("rows", Index(0)),
                                         j.value("cols", Index(0)));
  if (kind == "l1-ball")
    return DomainDescriptor::l1_ball(j.at("dim").get<Index>(),
                                     j.at("radius").get<double>());
  if (kind == "l2-ball")
    return DomainDescriptor::l2_ball(j.at("dim").get<Index>(),
                                     j.at("radius").get<double>());
  if (kind == "nuclear-ball")
    return DomainDescriptor::nuclear_ball(j.at("rows").get<Index>(),
                                          j.at("cols").get<Index>(),
                                          j.at("radius").get<double>());
  if (kind == "spectrahedron")
    return DomainDescriptor::spectrahedron(j.at("side").get<Index>());
  if (kind == "simplex")
    return DomainDescriptor::simplex(j.at("dim").get<Index>());
  throw ConfigError("unknown domain kind: " + kind);
}

json domain_to_json(const DomainDescriptor& d) {
  json j;
  j["kind"] = d.name();
  switch (d.kind) {
    case DomainKind::WholeSpace:
      j["dim"] = d.dim;
      if (d.rows > 0) {
        j["rows"] = d.rows;
        j["cols"] = d.cols;
      }
      break;
    case DomainKind::L1Ball:
    case DomainKind::L2Ball:
      j["dim"] = d.dim;
      j["radius"] = d.radius;
      break;
    case DomainKind::NuclearBall:
      j["rows"] = d.rows;
      j["cols"] = d.cols;
      j["radius"] = d.radius;
      break;
    case DomainKind::Spectrahedron:
      j["side"] = d.rows;
      break;
    case DomainKind::Simplex:
      j["dim"] = d.dim;
      break;
  }
  return j;
}

ConstraintSetDescriptor constraint_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero-point") return ConstraintSetDescriptor::zero_point();
  if (kind == "l2-ball")
    return ConstraintSetDescriptor::l2_ball(j.at("radius").get<double>());
  if (kind == "l1-ball")
    return ConstraintSetDescriptor::l1_ball(j.at("radius").get<double>());
  if (kind == "nonnegative-orthant")
    return ConstraintSetDescriptor::nonneg_orthant();
  if (kind == "psd-cone")
    return ConstraintSetDescriptor::psd_cone(j.at("side").get<Index>());
  throw ConfigError("unknown constraint kind: " + kind);
}

json constraint_to_json(const ConstraintSetDescriptor& k) {
  json j;
  j["kind"] = k.name();
  if (k.kind == ConstraintKind::L2Ball || k.kind == ConstraintKind::L1Ball)
    j["radius"] = k.radius;
  if (k.kind == ConstraintKind::PsdCone) j["side"] = k.side;
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ProblemInstance instantiate(const GeneratorSpec& spec) {
  if (spec.kind == "qt")
    return gen_qt(spec.qubits, spec.seed, spec.measurements).to_problem();
  if (spec.kind == "mc") {
    McInstance inst = gen_mc(spec.rows, spec.cols, spec.rank,
                             spec.sample_fraction, spec.noise, spec.seed);
    McFormulation f = spec.formulation == "parameter-free"
                          ? McFormulation::ParameterFree
                          : McFormulation::BallConstrained;
    return inst.to_problem(f, spec.kappa);
  }
  throw ConfigError("unknown generator kind: " + spec.kind);
}

ProblemInstance load_problem_file(const std::string& path) {
  json j = load_json(path);
  try {
    if (j.contains("generator"))
      return instantiate(generator_from_json(j.at("generator"), 0));
    ProblemInstance prob;
    prob.objective = objective_from_json(j.at("objective"));
    prob.domain = domain_from_json(j.at("domain"));
    prob.constraint = j.contains("constraint")
                          ? constraint_from_json(j.at("constraint"))
                          : ConstraintSetDescriptor::zero_point();
    prob.map = operator_from_json(j.at("operator"));
    prob.b = vec_from_json(j.at("b"));
    prob.validate();
    return prob;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_generator_problem_file(const std::string& path,
                                  const GeneratorSpec& spec) {
  instantiate(spec);  // validate parameters before writing
  json j;
  j["generator"] = generator_to_json(spec);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write: " + path);
  out << j.dump(2) << "\n";
}

void write_problem_file(const std::string& path, const ProblemInstance& prob) {
  json j;
  j["objective"] = objective_to_json(prob.objective);
  j["domain"] = domain_to_json(prob.domain);
  j["constraint"] = constraint_to_json(prob.constraint);
  j["operator"] = operator_to_json(*prob.map);
  j["b"] = vec_to_json(prob.b);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write: " + path);
  out << j.dump(2) << "\n";
}

ProblemInstance RunConfig::load_problem() const {
  if (generator) return instantiate(*generator);
  if (!problem_file.empty()) return load_problem_file(problem_file);
  if (!ratings_train.empty()) {
    McInstance inst =
        load_ratings(ratings_train, ratings_test, ratings_delimiter);
    McFormulation f = ratings_formulation == "ball"
                          ? McFormulation::BallConstrained
                          : McFormulation::ParameterFree;
    return inst.to_problem(f, ratings_kappa);
  }
  throw ConfigError("config: no problem source");
}

RunConfig parse_run_config(const std::string& path) {
  json j = load_json(path);
  RunConfig cfg;
  try {
    int sources = 0;
    if (j.contains("problem")) {
      const json& p = j.at("problem");
      if (p.contains("file")) {
        cfg.problem_file = p.at("file").get<std::string>();
        ++sources;
      }
      if (p.contains("generator")) {
        cfg.generator = generator_from_json(p.at("generator"),
                                            j.value("seed", std::uint64_t(0)));
        ++sources;
      }
      if (p.contains("ratings")) {
        const json& r = p.at("ratings");
        cfg.ratings_train = r.at("train").get<std::string>();
        cfg.ratings_test = r.value("test", std::string());
        std::string d = r.value("delimiter", std::string("\t"));
        cfg.ratings_delimiter = d.empty() ? '\t' : d[0];
        cfg.ratings_formulation =
            r.value("formulation", std::string("parameter-free"));
        cfg.ratings_kappa = r.value("kappa", 0.0);
        ++sources;
      }
    }
    if (sources != 1)
      throw ConfigError("config: exactly one problem source required");

    cfg.solvers = j.value("solvers", std::vector<std::string>{"unipd"});
    if (cfg.solvers.empty())
      throw ConfigError("config: no solvers selected");

    cfg.solver.epsilon = j.value("epsilon", 1e-3);
    cfg.solver.m_init = j.value("m_init", 0.0);
    cfg.solver.k_max = j.value("k_max", 1000);
    cfg.solver.i_max = j.value("i_max", 60);
    cfg.solver.spectral_tol = j.value("spectral_tol", 1e-5);
    cfg.solver.seed = j.value("seed", std::uint64_t(0));
    cfg.solver.practical_stop = j.value("practical_stop", true);
    if (j.contains("lambda0"))
      cfg.solver.lambda0 = vec_from_json(j.at("lambda0"));

    std::string step = j.value("step_mode", std::string("backtracking"));
    if (step == "backtracking")
      cfg.solver.step_mode = StepMode::Backtracking;
    else if (step == "analytic-quadratic")
      cfg.solver.step_mode = StepMode::AnalyticQuadratic;
    else if (step == "fixed-mbar")
      cfg.solver.step_mode = StepMode::FixedMBar;
    else
      throw ConfigError("config: unknown step_mode " + step);

    std::string weight = j.value("weight_mode", std::string("theoretical"));
    if (weight == "theoretical")
      cfg.solver.weight_mode = WeightMode::Theoretical;
    else if (weight == "greedy-objective")
      cfg.solver.weight_mode = WeightMode::GreedyObjective;
    else if (weight == "greedy-feasibility")
      cfg.solver.weight_mode = WeightMode::GreedyFeasibility;
    else
      throw ConfigError("config: unknown weight_mode " + weight);

    if (j.contains("holder")) {
      cfg.solver.holder.nu = j.at("holder").at("nu").get<double>();
      cfg.solver.holder.m_nu = j.at("holder").at("m_nu").get<double>();
    }
    cfg.output_dir = j.value("output", std::string("."));
    cfg.record_timing = j.value("record_timing", false);
    cfg.reference = j.value("reference", std::string("none"));
    cfg.reference_accuracy = j.value("reference_accuracy", 1e-6);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (const char* env = std::getenv("UNIPD_SEED")) {
    cfg.solver.seed = std::strtoull(env, nullptr, 10);
    if (cfg.generator) cfg.generator->seed = cfg.solver.seed;
  }
  return cfg;
}

void write_trace_csv(const std::string& path, const Trace& trace,
                     const std::optional<double>& f_star,
                     bool record_timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write trace: " + path);
  if (f_star)
    out << "k,M_k,i_k,obj,obj_residual,feas,g_value,queries,elapsed_s\n";
  else
    out << "k,M_k,i_k,obj,feas,g_value,queries,elapsed_s\n";
  for (const TraceRow& r : trace.rows) {
    out << r.k << ',' << format_double(r.m_k) << ',' << r.i_k << ','
        << format_double(r.objective) << ',';
    if (f_star) out << format_double(std::abs(r.objective - *f_star)) << ',';
    out << format_double(r.feasibility) << ',' << format_double(r.g_value)
        << ',' << r.queries << ',';
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f",
                  record_timing ? r.elapsed_s : 0.0);
    out << buf << '\n';
  }
}

SolveResult dispatch_solver(const std::string& name,
                            const ProblemInstance& prob,
                            const SolverConfig& cfg) {
  if (name == "unipd") return unipd_grad(prob, cfg);
  if (name == "acc-unipd") return acc_unipd_grad(prob, cfg);
  if (name == "fw-harmonic")
    return frank_wolfe(prob, FwStepRule::Harmonic, cfg);
  if (name == "fw-linesearch")
    return frank_wolfe(prob, FwStepRule::ExactLineSearch, cfg);
  throw ConfigError("unknown solver: " + name);
}

namespace {

int cmd_solve(const std::string& config_path) {
  RunConfig cfg = parse_run_config(config_path);
  ProblemInstance prob = cfg.load_problem();
  fs::create_directories(cfg.output_dir);

  std::optional<double> f_star;
  if (cfg.reference == "auto") {
    ReferenceSolution ref = reference_solve(prob, cfg.reference_accuracy);
    f_star = ref.f_star;
    std::printf("reference: f* = %.12g (%s%s)\n", ref.f_star,
                ref.method.c_str(), ref.reliable ? "" : ", best effort");
  }

  std::printf("%-14s %8s %14s %14s %10s %10s  %s\n", "solver", "iters", "obj",
              "feas", "queries", "elapsed", "status");
  for (const std::string& name : cfg.solvers) {
    SolveResult res = dispatch_solver(name, prob, cfg.solver);
    std::string path = cfg.output_dir + "/" + name + ".csv";
    write_trace_csv(path, res.trace, f_star, cfg.record_timing);
    const TraceRow* last =
        res.trace.rows.empty() ? nullptr : &res.trace.rows.back();
    std::printf("%-14s %8zu %14.6g %14.6g %10lld %9.3fs  %s\n", name.c_str(),
                res.trace.rows.size(), last ? last->objective : 0.0,
                last ? last->feasibility : 0.0, last ? last->queries : 0,
                last ? last->elapsed_s : 0.0, to_string(res.trace.status));
    if (res.trace.status == SolveStatus::LineSearchFailure)
      throw std::runtime_error(name + ": " + res.trace.message);
  }
  return 0;
}

int cmd_check(const std::string& config_path, const std::string& ref_mode) {
  RunConfig cfg = parse_run_config(config_path);
  ProblemInstance prob = cfg.load_problem();
  std::string mode = ref_mode.empty() ? cfg.reference : ref_mode;

  std::optional<ReferenceSolution> ref;
  if (mode == "auto") {
    ReferenceSolution r = reference_solve(prob, cfg.reference_accuracy);
    if (r.reliable || r.method == "kkt-linear-solve") ref = std::move(r);
  }
  if (!ref) std::printf("reference unavailable; bound checks skipped\n");

  HolderModel holder = cfg.solver.holder;
  if (!holder.known() &&
      prob.objective.kind == ObjectiveKind::SeparableQuadratic &&
      prob.domain.kind == DomainKind::WholeSpace) {
    holder = HolderModel::from_strong_convexity(
        1.0, 2.0, operator_norm(*prob.map, 1e-10, cfg.solver.seed));
  }
  if (!holder.known())
    std::printf("holder model unavailable; bound checks skipped\n");

  for (const std::string& name : cfg.solvers) {
    if (name != "unipd" && name != "acc-unipd") {
      std::printf("%-14s no certificate for this solver\n", name.c_str());
      continue;
    }
    SolverConfig scfg = cfg.solver;
    scfg.practical_stop = false;
    SolveResult res = dispatch_solver(name, prob, scfg);
    double iters = double(res.trace.rows.size());
    double avg_queries =
        iters > 0 ? double(res.trace.rows.back().queries) / iters : 0.0;
    std::printf("%-14s iters=%zu avg-queries/iter=%.3f\n", name.c_str(),
                res.trace.rows.size(), avg_queries);
    if (ref && holder.known()) {
      double m_bar = holder.m_bar(scfg.epsilon);
      BoundReport rep = theorem_bound_check(
          res.trace, prob, ref->lambda_star, ref->f_star, m_bar, holder.nu,
          scfg.epsilon, name == "unipd" ? TheoremId::Thm1 : TheoremId::Thm2);
      std::printf(
          "  %s: max violations obj_upper=%.3e obj_lower=%.3e feas=%.3e "
          "(verbatim %s%s)\n",
          name == "unipd" ? "theorem-1" : "theorem-2",
          rep.max_obj_upper_violation, rep.max_obj_lower_violation,
          rep.max_feas_violation, rep.verbatim_holds ? "holds" : "VIOLATED",
          !rep.verbatim_holds && rep.supplement_variant_holds
              ? "; supplement-constant variant holds"
              : "");
    }
  }
  return 0;
}

int cmd_gen(const std::string& kind, const GeneratorSpec& spec,
            const std::string& out_path) {
  GeneratorSpec s = spec;
  s.kind = kind;
  write_generator_problem_file(out_path, s);
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"universal primal-dual gradient solvers"};
  app.require_subcommand(1);

  std::string solve_config;
  CLI::App* solve = app.add_subcommand("solve", "run solvers from a config");
  solve->add_option("config", solve_config, "run config (JSON)")->required();

  std::string check_config, check_ref;
  CLI::App* check =
      app.add_subcommand("check", "verify theorem bounds and query counts");
  check->add_option("config", check_config, "run config (JSON)")->required();
  check->add_option("--reference", check_ref, "auto|none");

  CLI::App* gen = app.add_subcommand("gen", "generate a problem file");
  GeneratorSpec gspec;
  std::string gen_out;
  CLI::App* gen_qt_cmd = gen->add_subcommand("qt", "tomography-style instance");
  gen_qt_cmd->add_option("--qubits", gspec.qubits)->required();
  gen_qt_cmd->add_option("--seed", gspec.seed);
  gen_qt_cmd->add_option("--measurements", gspec.measurements);
  gen_qt_cmd->add_option("--out", gen_out)->required();
  CLI::App* gen_mc_cmd =
      gen->add_subcommand("mc", "matrix-completion-style instance");
  gen_mc_cmd->add_option("--rows", gspec.rows)->required();
  gen_mc_cmd->add_option("--cols", gspec.cols)->required();
  gen_mc_cmd->add_option("--rank", gspec.rank)->required();
  gen_mc_cmd->add_option("--frac", gspec.sample_fraction)->required();
  gen_mc_cmd->add_option("--noise", gspec.noise);
  gen_mc_cmd->add_option("--seed", gspec.seed);
  gen_mc_cmd->add_option("--formulation", gspec.formulation)
      ->check(CLI::IsMember({"ball", "parameter-free"}));
  gen_mc_cmd->add_option("--kappa", gspec.kappa);
  gen_mc_cmd->add_option("--out", gen_out)->required();
  gen->require_subcommand(1);

  try {
    std::vector<const char*> argv;
    argv.push_back("unipd");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_config);
    if (check->parsed()) return cmd_check(check_config, check_ref);
    if (gen->parsed()) {
      if (gen_qt_cmd->parsed()) return cmd_gen("qt", gspec, gen_out);
      if (gen_mc_cmd->parsed()) return cmd_gen("mc", gspec, gen_out);
    }
    std::fprintf(stderr, "no command\n");
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 1;
  }
}

}  // namespace unipd::cli
