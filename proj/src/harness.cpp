#include "unipd/harness.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace unipd {

ProblemInstance QtInstance::to_problem() const {
  return make_problem(ObjectiveDescriptor::quadratic_slack(), ensemble, b,
                      DomainDescriptor::spectrahedron(side),
                      ConstraintSetDescriptor::zero_point());
}

QtInstance gen_qt(int qubits, std::uint64_t seed, Index measurements) {
  if (qubits < 1 || qubits > 8)
    throw std::invalid_argument("gen_qt: qubits must be in [1, 8]");
  QtInstance inst;
  inst.qubits = qubits;
  inst.side = Index(1) << qubits;
  double p = double(inst.side);
  inst.n = measurements > 0
               ? measurements
               : Index(std::floor(2.0 * p * std::log(p)));
  inst.seed = seed;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(inst.side);
  for (Index i = 0; i < inst.side; ++i) v[i] = normal(rng);
  v /= v.norm();
  Mat x_true = v * v.transpose();
  inst.ground_truth = as_vector(x_true);
  inst.ensemble = std::make_shared<TensorProductEnsembleMap>(
      qubits, inst.n, seed ^ 0x517ac0deULL);
  inst.b = inst.ensemble->apply(inst.ground_truth);
  return inst;
}

Vec McInstance::train_values() const {
  Vec b(Index(train.size()));
  for (size_t i = 0; i < train.size(); ++i) b[Index(i)] = train[i].value;
  return b;
}

std::shared_ptr<const SamplingMap> McInstance::train_map() const {
  std::vector<Index> idx(train.size());
  for (size_t i = 0; i < train.size(); ++i)
    idx[i] = train[i].col * rows + train[i].row;  // column-major vec
  return std::make_shared<SamplingMap>(rows * cols, std::move(idx));
}

ProblemInstance McInstance::to_problem(McFormulation f, double kappa) const {
  if (train.empty()) throw std::invalid_argument("McInstance: no observations");
  auto mask = train_map();
  Vec b = train_values();
  double n = double(train.size());
  if (f == McFormulation::ParameterFree) {
    return make_problem(ObjectiveDescriptor::squared_nuclear(n), mask, b,
                        DomainDescriptor::whole_space(rows * cols, rows, cols),
                        ConstraintSetDescriptor::zero_point());
  }
  double k = kappa > 0 ? kappa : kappa_truth;
  if (k <= 0)
    throw std::invalid_argument(
        "McInstance: ball formulation needs a positive kappa");
  // (1/n)||A x - b||^2 = 1/2 ||A' x - b'||^2 with A', b' scaled by sqrt(2/n).
  double scale = std::sqrt(2.0 / n);
  auto scaled = std::make_shared<CompositionMap>(mask, nullptr, scale);
  return make_problem(ObjectiveDescriptor::quadratic_slack(), scaled,
                      Vec(scale * b),
                      DomainDescriptor::nuclear_ball(rows, cols, k),
                      ConstraintSetDescriptor::zero_point());
}

McInstance gen_mc(Index rows, Index cols, Index rank, double sample_fraction,
                  double noise, std::uint64_t seed) {
  if (rows < 1 || cols < 1 || rank < 0 || rank > std::min(rows, cols))
    throw std::invalid_argument("gen_mc: bad shape or rank");
  if (sample_fraction <= 0.0 || sample_fraction > 1.0)
    throw std::invalid_argument("gen_mc: sample_fraction must be in (0, 1]");
  if (noise < 0.0) throw std::invalid_argument("gen_mc: negative noise");

  McInstance inst;
  inst.rows = rows;
  inst.cols = cols;
  inst.rank = rank;
  inst.seed = seed;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat x = Mat::Zero(rows, cols);
  if (rank > 0) {
    Mat lf(rows, rank), rf(cols, rank);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < rank; ++j) lf(i, j) = normal(rng);
    for (Index i = 0; i < cols; ++i)
      for (Index j = 0; j < rank; ++j) rf(i, j) = normal(rng);
    x = lf * rf.transpose();
  }
  Eigen::BDCSVD<Mat> svd(x);
  inst.kappa_truth = svd.singularValues().sum();

  std::vector<Index> all(size_t(rows * cols));
  for (size_t i = 0; i < all.size(); ++i) all[i] = Index(i);
  std::shuffle(all.begin(), all.end(), rng);
  Index m = Index(std::floor(sample_fraction * double(rows * cols)));
  m = std::max<Index>(m, 1);

  inst.train.reserve(size_t(m));
  for (Index i = 0; i < m; ++i) {
    Index flat = all[size_t(i)];
    RatedEntry e;
    e.row = flat % rows;
    e.col = flat / rows;
    e.value = x(e.row, e.col) + (noise > 0 ? noise * normal(rng) : 0.0);
    inst.train.push_back(e);
  }
  for (size_t i = size_t(m); i < all.size(); ++i) {
    Index flat = all[i];
    RatedEntry e;
    e.row = flat % rows;
    e.col = flat / rows;
    e.value = x(e.row, e.col);
    inst.test.push_back(e);
  }
  return inst;
}

namespace {

std::vector<RatedEntry> parse_ratings_file(const std::string& path,
                                           char delimiter, Index& max_row,
                                           Index& max_col) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open ratings file: " + path);
  std::vector<RatedEntry> out;
  std::set<std::pair<Index, Index>> seen;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    long fields[3];
    double rating = 0.0;
    for (int f = 0; f < 3; ++f) {
      if (!std::getline(ls, tok, delimiter))
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": expected user, item, rating");
      try {
        if (f < 2)
          fields[f] = std::stol(tok);
        else
          rating = std::stod(tok);
      } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": malformed field '" + tok + "'");
      }
    }
    if (fields[0] < 1 || fields[1] < 1)
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": indices are 1-based");
    RatedEntry e;
    e.row = Index(fields[0] - 1);
    e.col = Index(fields[1] - 1);
    e.value = rating;
    if (!seen.insert({e.row, e.col}).second)
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": duplicate (user, item) pair");
    max_row = std::max(max_row, e.row + 1);
    max_col = std::max(max_col, e.col + 1);
    out.push_back(e);
  }
  return out;
}

}  // namespace

McInstance load_ratings(const std::string& train_path,
                        const std::string& test_path, char delimiter) {
  McInstance inst;
  Index max_row = 0, max_col = 0;
  inst.train = parse_ratings_file(train_path, delimiter, max_row, max_col);
  if (!test_path.empty())
    inst.test = parse_ratings_file(test_path, delimiter, max_row, max_col);
  if (inst.train.empty()) throw ParseError(train_path + ": no ratings");
  inst.rows = max_row;
  inst.cols = max_col;
  return inst;
}

double rmse(const Vec& x, Index rows, Index cols,
            const std::vector<RatedEntry>& test) {
  if (test.empty()) throw std::invalid_argument("rmse: empty test set");
  if (x.size() < rows * cols) throw std::invalid_argument("rmse: bad matrix");
  double acc = 0.0;
  for (const RatedEntry& e : test) {
    double d = x[e.col * rows + e.row] - e.value;
    acc += d * d;
  }
  return std::sqrt(acc / double(test.size()));
}

ReferenceSolution reference_solve(const ProblemInstance& prob,
                                  double accuracy) {
  if (accuracy <= 0) throw std::invalid_argument("reference_solve: accuracy");
  ReferenceSolution ref;
  if (prob.objective.kind == ObjectiveKind::SeparableQuadratic &&
      prob.domain.kind == DomainKind::WholeSpace &&
      prob.constraint.kind == ConstraintKind::ZeroPoint) {
    // KKT system of min 1/2||x - c||^2 s.t. Ax = b:
    //   x = c - A^T lambda,  A A^T lambda = A c - b.
    Mat a = materialize(*prob.map);
    Vec rhs = a * prob.objective.center - prob.b;
    // minimum-norm dual solution; tolerates row-rank deficiency
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(a * a.transpose());
    ref.lambda_star = cod.solve(rhs);
    ref.x_star = prob.objective.center - a.transpose() * ref.lambda_star;
    ref.f_star = 0.5 * (ref.x_star - prob.objective.center).squaredNorm();
    ref.method = "kkt-linear-solve";
    ref.accuracy = (a * ref.x_star - prob.b).norm();
    ref.reliable = ref.accuracy <= accuracy;
    return ref;
  }

  if (prob.slack_form()) {
    // Primal projected FISTA on min 1/2||Ax - b||^2 over X. The dual of the
    // slack template is nonsmooth whenever the domain constraint is active,
    // so a dual run cannot certify tight references; the primal route can,
    // through the duality gap at lambda = b - A x.
    const LinearMap& a = *prob.map;
    double lip = operator_norm(a, 1e-8, 1);
    lip = lip * lip;
    Vec x = project_domain(Vec::Zero(prob.domain.dim), prob.domain);
    Vec x_prev = x;
    double t = 1.0;
    int iters = std::max(5000, int(std::ceil(4.0 / std::sqrt(accuracy))));
    iters = std::min(iters, 400000);
    for (int k = 0; k < iters; ++k) {
      double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      Vec y = x + ((t - 1.0) / t_next) * (x - x_prev);
      Vec grad = a.adjoint_apply(a.apply(y) - prob.b);
      x_prev = x;
      x = project_domain(y - grad / lip, prob.domain);
      t = t_next;
      if (k % 100 == 99 && (x - x_prev).norm() <= 1e-15 * std::max(1.0, x.norm()))
        break;
    }
    Vec residual = a.apply(x) - prob.b;
    ref.x_star.resize(prob.primal_dim());
    ref.x_star.head(prob.domain.dim) = x;
    ref.x_star.tail(prob.n()) = residual;
    ref.f_star = 0.5 * residual.squaredNorm();
    ref.lambda_star = -residual;  // r*(lambda) = -lambda at the optimum
    // duality gap certificate: f(x*) + G(lambda*)
    double dual_value = eval_g(ref.lambda_star, prob, 1e-9) +
                        eval_h(ref.lambda_star, prob.constraint);
    ref.method = "fista-primal";
    ref.accuracy = std::abs(ref.f_star + dual_value);
    ref.reliable = ref.accuracy <= accuracy;
    return ref;
  }

  SolverConfig cfg;
  cfg.epsilon = accuracy / 100.0;
  cfg.k_max = 5000;
  cfg.practical_stop = false;
  cfg.record_duals = true;
  SolveResult run = acc_unipd_grad(prob, cfg);
  ref.x_star = run.x;
  ref.lambda_star = run.trace.lambda_final;
  // -min_k G(lambda_k) lower-bounds f*; pair it with the primal value.
  double best_g = std::numeric_limits<double>::infinity();
  for (double g : run.trace.dual_g_values) best_g = std::min(best_g, g);
  double primal = prob.objective_value(run.x);
  ref.f_star = std::isfinite(best_g) ? -best_g : primal;
  ref.method = "acc-unipd-long-run";
  ref.accuracy = std::abs(primal - ref.f_star) +
                 prob.feasibility_gap(run.x) * ref.lambda_star.norm();
  ref.reliable = ref.accuracy <= accuracy;
  return ref;
}

}  // namespace unipd
