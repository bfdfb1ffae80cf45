#include <doctest.h>

#include "unipd/solvers.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace unipd;

namespace {

std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(seed); }

Vec random_vec(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

Mat random_mat(Index r, Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = normal(rng);
  return m;
}

// min 1/2 x^2 s.t. x = 1: x* = 1, f* = 1/2, lambda* = -1, nu = 1, M_1 = 1.
ProblemInstance kkt_1d() {
  Mat a(1, 1);
  a << 1.0;
  Vec b(1);
  b << 1.0;
  return make_problem(ObjectiveDescriptor::separable_quadratic(Vec::Zero(1)),
                      std::make_shared<DenseMap>(a), b,
                      DomainDescriptor::whole_space(1),
                      ConstraintSetDescriptor::zero_point());
}

// g for a scalar problem with Lipschitz constant L = a^2 (smooth quadratic).
ProblemInstance scalar_quadratic(double a_val) {
  Mat a(1, 1);
  a << a_val;
  Vec b(1);
  b << 1.0;
  return make_problem(ObjectiveDescriptor::separable_quadratic(Vec::Zero(1)),
                      std::make_shared<DenseMap>(a), b,
                      DomainDescriptor::whole_space(1),
                      ConstraintSetDescriptor::zero_point());
}

std::vector<long double> t_sequence(int count) {
  std::vector<long double> t{1.0L};
  for (int k = 1; k < count; ++k)
    t.push_back(0.5L * (1.0L + std::sqrt(1.0L + 4.0L * t.back() * t.back())));
  return t;
}

}  // namespace

TEST_CASE("surrogate_Q basics") {
  Vec anchor = Vec::Zero(3);
  Vec grad(3);
  grad << 1, -1, 0;
  CHECK(surrogate_Q(anchor, anchor, 2.5, grad, 1.0) == 2.5);
  Vec e1 = Vec::Unit(3, 0);
  CHECK(surrogate_Q(e1, anchor, 2.5, Vec::Zero(3), 2.0) ==
        doctest::Approx(3.5));
  auto rng = rng_for(1);
  for (int t = 0; t < 20; ++t) {
    Vec l = random_vec(3, rng), h = random_vec(3, rng), g = random_vec(3, rng);
    double gval = random_vec(1, rng)[0], m = std::exp(random_vec(1, rng)[0]);
    double direct =
        gval + g.dot(l - h) + 0.5 * m * (l - h).squaredNorm();
    CHECK(surrogate_Q(l, h, gval, g, m) == direct);
  }
}

TEST_CASE("m_bar_eps closed forms") {
  CHECK(m_bar_eps(1.0, 3.7, 1e-3) == 3.7);
  CHECK(m_bar_eps(1.0, 3.7, 1e-9) == 3.7);
  CHECK(m_bar_eps(0.0, 2.0, 0.1) == doctest::Approx(40.0).epsilon(1e-14));
  // high-precision evaluation of [1/3 * 10]^{1/3} * 2^{4/3}
  CHECK(m_bar_eps(0.5, 2.0, 0.1) ==
        doctest::Approx(3.764144115524114).epsilon(1e-14));
}

TEST_CASE("holder model derivations") {
  HolderModel h = HolderModel::from_strong_convexity(2.0, 2.0, 3.0);
  CHECK(h.nu == 1.0);
  CHECK(h.m_nu == doctest::Approx(4.5));
  HolderModel h4 = HolderModel::from_strong_convexity(1.0, 3.0, 2.0);
  CHECK(h4.nu == doctest::Approx(0.5));
  CHECK(h4.m_nu == doctest::Approx(2.0));  // (4/1)^{1/2}
  HolderModel hb = HolderModel::from_bounded_domain(5.0);
  CHECK(hb.nu == 0.0);
  CHECK(hb.m_nu == 10.0);
}

TEST_CASE("complexity bounds: bracket value and scalings") {
  // ||l*|| = 1: inner bracket of the Alg-1 bound is [4 sqrt2 / 2]^2 = 8
  ComplexityBounds cb = complexity_bounds(0.0, 1.0, 1.0, 1.0);
  CHECK(cb.k_max_alg1 == doctest::Approx(8.0));
  // nu = 1: Alg 1 scales as M/eps, Alg 2 as sqrt(M/eps)
  ComplexityBounds c1 = complexity_bounds(1.0, 1.0, 1e-6, 1.0);
  ComplexityBounds c2 = complexity_bounds(1.0, 1.0, 4e-6, 1.0);
  CHECK(c1.k_max_alg1 / c2.k_max_alg1 == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(c1.k_max_alg2 / c2.k_max_alg2 == doctest::Approx(2.0).epsilon(1e-3));
  // monotone: non-increasing in eps, non-decreasing in M_nu
  for (double nu : {0.0, 0.3, 1.0}) {
    double prev1 = std::numeric_limits<double>::infinity(), prev2 = prev1;
    for (double eps : {1e-5, 1e-4, 1e-3, 1e-2}) {
      ComplexityBounds c = complexity_bounds(nu, 2.0, eps, 3.0);
      CHECK(c.k_max_alg1 <= prev1);
      CHECK(c.k_max_alg2 <= prev2);
      prev1 = c.k_max_alg1;
      prev2 = c.k_max_alg2;
    }
    double last1 = 0, last2 = 0;
    for (double m : {0.5, 1.0, 2.0, 8.0}) {
      ComplexityBounds c = complexity_bounds(nu, m, 1e-3, 3.0);
      CHECK(c.k_max_alg1 >= last1);
      CHECK(c.k_max_alg2 >= last2);
      last1 = c.k_max_alg1;
      last2 = c.k_max_alg2;
    }
  }
}

TEST_CASE("line search accepts immediately when M_start covers L") {
  ProblemInstance prob = scalar_quadratic(2.0);  // L = 4
  SolverConfig cfg;
  Trace trace;
  Vec anchor(1);
  anchor << 0.7;
  DualEval at = eval_dual(anchor, prob);
  LineSearchResult res = line_search(prob, anchor, at, 1e-16, 5.0, cfg, trace);
  CHECK(res.i == 0);
  CHECK(res.m == 5.0);
  CHECK(trace.g_queries == 1);
}

TEST_CASE("line search doubles from 1 to the Lipschitz constant 4") {
  ProblemInstance prob = scalar_quadratic(2.0);  // L = 4
  SolverConfig cfg;
  Trace trace;
  Vec anchor(1);
  anchor << -0.3;
  DualEval at = eval_dual(anchor, prob);
  LineSearchResult res = line_search(prob, anchor, at, 1e-15, 1.0, cfg, trace);
  // exact quadratic: first admissible power of two from 1 is 4 (8 if
  // rounding spoils the boundary case)
  CHECK((res.m == 4.0 || res.m == 8.0));
  CHECK(res.i == (res.m == 4.0 ? 2 : 3));
  CHECK(trace.g_queries == res.i + 1);
}

TEST_CASE("accepted line-search pairs re-verify on independent re-evaluation") {
  auto rng = rng_for(3);
  Mat a = random_mat(3, 4, rng);
  Vec b = random_vec(3, rng);
  ProblemInstance prob = make_problem(
      ObjectiveDescriptor::quadratic_slack(), std::make_shared<DenseMap>(a), b,
      DomainDescriptor::l2_ball(4, 1.0), ConstraintSetDescriptor::zero_point());
  SolverConfig cfg;
  Trace trace;
  for (int t = 0; t < 50; ++t) {
    Vec anchor = random_vec(3, rng);
    DualEval at = eval_dual(anchor, prob);
    double delta = 1e-3;
    LineSearchResult res =
        line_search(prob, anchor, at, delta, 0.25, cfg, trace);
    DualEval fresh_anchor = eval_dual(anchor, prob);
    double g_fresh = eval_g(res.lambda_next, prob);
    double q = surrogate_Q(res.lambda_next, anchor, fresh_anchor.g,
                           fresh_anchor.grad, res.m);
    CHECK(g_fresh <= q + 0.5 * delta);
  }
}

TEST_CASE("line search failure carries diagnostics") {
  ProblemInstance prob = scalar_quadratic(100.0);  // L = 1e4
  SolverConfig cfg;
  cfg.i_max = 2;
  Trace trace;
  Vec anchor(1);
  anchor << 1.0;
  DualEval at = eval_dual(anchor, prob);
  CHECK_THROWS_AS(line_search(prob, anchor, at, 1e-14, 1e-6, cfg, trace),
                  LineSearchError);
}

TEST_CASE("analytic step: P = 0 degenerate root and tiny-delta limit") {
  auto rng = rng_for(4);
  Mat a = random_mat(2, 3, rng);
  Vec b = random_vec(2, rng);
  ProblemInstance prob = make_problem(
      ObjectiveDescriptor::quadratic_slack(), std::make_shared<DenseMap>(a), b,
      DomainDescriptor::l2_ball(3, 0.8), ConstraintSetDescriptor::zero_point());
  Vec anchor = random_vec(2, rng);
  Vec grad = grad_g(anchor, prob);
  double gn2 = grad.squaredNorm();
  double support = sharp(-a.transpose() * grad, prob.domain,
                         ObjectiveDescriptor::zero())
                       .support_value;
  double p_val = gn2 + 2.0 * support - 2.0 * (anchor - b).dot(grad);
  // alpha solves gn2 a^2 + P a - delta = 0; for delta -> 0 with P > 0 the
  // root collapses to 0, and at P = 0 it is sqrt(delta)/||grad||
  double delta = 1e-3;
  double alpha = *analytic_step_quadratic(anchor, grad, delta, prob);
  CHECK(gn2 * alpha * alpha + p_val * alpha - delta ==
        doctest::Approx(0.0).epsilon(1e-12));
  if (p_val > 0) {
    double tiny = *analytic_step_quadratic(anchor, grad, 1e-18, prob);
    CHECK(tiny <= 1e-12);
  }
  CHECK((-p_val + std::sqrt(p_val * p_val)) == doctest::Approx(0.0));
}

TEST_CASE("analytic step satisfies the surrogate condition exactly") {
  auto rng = rng_for(5);
  for (int inst = 0; inst < 10; ++inst) {
    Mat a = random_mat(3, 4, rng);
    Vec b = random_vec(3, rng);
    double kappa = 0.5 + 0.2 * inst;
    ProblemInstance prob = make_problem(ObjectiveDescriptor::quadratic_slack(),
                                        std::make_shared<DenseMap>(a), b,
                                        DomainDescriptor::l2_ball(4, kappa),
                                        ConstraintSetDescriptor::zero_point());
    Vec anchor = random_vec(3, rng);
    DualEval at = eval_dual(anchor, prob);
    double delta = 1e-4;
    double alpha = *analytic_step_quadratic(anchor, at.grad, delta, prob);
    // U(alpha) hits the target g - alpha/2 ||grad||^2 + delta/2 exactly
    double support = sharp(-a.transpose() * at.grad, prob.domain,
                           ObjectiveDescriptor::zero())
                         .support_value;
    double u = at.g + 0.5 * alpha * alpha * at.grad.squaredNorm() -
               alpha * (anchor - b).dot(at.grad) + alpha * support;
    double target = at.g - 0.5 * alpha * at.grad.squaredNorm() + 0.5 * delta;
    CHECK(std::abs(u - target) <= 1e-12 * std::max(1.0, std::abs(target)));
    // and therefore the line-search condition at M = 1/alpha
    Vec next = anchor - alpha * at.grad;
    double q = surrogate_Q(next, anchor, at.g, at.grad, 1.0 / alpha);
    CHECK(eval_g(next, prob) <= q + 0.5 * delta + 1e-12);
  }
}

TEST_CASE("greedy weight: conventions and grid-search agreement") {
  auto rng = rng_for(6);
  Mat a = random_mat(3, 4, rng);
  Vec b = random_vec(3, rng);
  ProblemInstance prob = make_problem(
      ObjectiveDescriptor::quadratic_slack(), std::make_shared<DenseMap>(a), b,
      DomainDescriptor::l2_ball(4, 1.0), ConstraintSetDescriptor::zero_point());
  Vec z = random_vec(7, rng);
  CHECK(greedy_weight(z, z, prob, WeightMode::GreedyObjective) == 0.0);
  // a strictly decreasing objective metric clamps to 1
  Vec origin = Vec::Zero(7);
  Vec better = origin;
  better.tail(3) << 0, 0, 0;
  Vec worse = origin;
  worse.tail(3) << 3, 3, 3;
  CHECK(greedy_weight(worse, better, prob, WeightMode::GreedyObjective) == 1.0);
  for (int t = 0; t < 20; ++t) {
    Vec zp = random_vec(7, rng), atom = random_vec(7, rng);
    for (WeightMode mode :
         {WeightMode::GreedyObjective, WeightMode::GreedyFeasibility}) {
      double got = greedy_weight(zp, atom, prob, mode);
      double best = 1e30, best_g = 0;
      for (double g = 0.0; g <= 1.0; g += 1e-5) {
        Vec cand = (1 - g) * zp + g * atom;
        double metric = mode == WeightMode::GreedyObjective
                            ? prob.objective_value(cand)
                            : prob.feasibility_gap(cand);
        if (metric < best) {
          best = metric;
          best_g = g;
        }
      }
      CHECK(std::abs(got - best_g) <= 1e-4);
    }
  }
}

TEST_CASE("unipd_grad solves the 1-D KKT problem within Theorem 1 bounds") {
  ProblemInstance prob = kkt_1d();
  SolverConfig cfg;
  cfg.epsilon = 1e-3;
  cfg.k_max = 1000;
  cfg.m_init = 1.0;  // = M_1 = M̄_eps
  cfg.practical_stop = false;
  SolveResult res = unipd_grad(prob, cfg);
  REQUIRE(res.trace.rows.size() == 1000);
  Vec lambda_star(1);
  lambda_star << -1.0;
  BoundReport rep = theorem_bound_check(res.trace, prob, lambda_star, 0.5, 1.0,
                                        1.0, cfg.epsilon, TheoremId::Thm1);
  CHECK(rep.max_violation <= 1e-9);
  CHECK(rep.verbatim_holds);
  CHECK(std::abs(res.x[0] - 1.0) <= 2e-3);
}

TEST_CASE("unipd_grad is exact on a singleton domain") {
  Mat a(2, 1);
  a << 3.0, -1.0;
  Vec xhat(1);
  xhat << 1.0;
  ProblemInstance prob = make_problem(
      ObjectiveDescriptor::zero(), std::make_shared<DenseMap>(a), Vec(a * xhat),
      DomainDescriptor::spectrahedron(1), ConstraintSetDescriptor::zero_point());
  SolverConfig cfg;
  cfg.k_max = 50;
  SolveResult res = unipd_grad(prob, cfg);
  CHECK(res.trace.status == SolveStatus::Converged);  // practical stop
  CHECK(res.x[0] == 1.0);
  CHECK(res.trace.message.find("stationary") != std::string::npos);
  for (const TraceRow& row : res.trace.rows) CHECK(row.feasibility == 0.0);
}

TEST_CASE("unipd_grad matches a projected-gradient reference on a ball") {
  auto rng = rng_for(7);
  Mat a = random_mat(3, 2, rng);
  Vec b = random_vec(3, rng);
  b *= 3.0;  // push the solution onto the boundary
  ProblemInstance prob = make_problem(
      ObjectiveDescriptor::quadratic_slack(), std::make_shared<DenseMap>(a), b,
      DomainDescriptor::l2_ball(2, 1.0), ConstraintSetDescriptor::zero_point());
  // independent oracle: projected gradient on min 1/2||Ax-b||^2, ||x|| <= 1
  Mat ata = a.transpose() * a;
  double lip = ata.operatorNorm();
  Vec x = Vec::Zero(2);
  for (int t = 0; t < 200000; ++t) {
    Vec g = a.transpose() * (a * x - b);
    x -= g / lip;
    if (x.norm() > 1.0) x /= x.norm();
  }
  SolverConfig cfg;
  cfg.epsilon = 1e-5;
  cfg.k_max = 10000;
  cfg.practical_stop = false;
  SolveResult res = unipd_grad(prob, cfg);
  CHECK((res.x.head(2) - x).norm() <= 1e-2);
}

TEST_CASE("unipd_grad query counter reproduces the doubling identity") {
  ProblemInstance prob = kkt_1d();
  SolverConfig cfg;
  cfg.epsilon = 1e-4;
  cfg.m_init = 0.37;
  cfg.k_max = 200;
  cfg.practical_stop = false;
  SolveResult res = unipd_grad(prob, cfg);
  long long sum_i_plus_1 = 0;
  for (const TraceRow& row : res.trace.rows) {
    sum_i_plus_1 += row.i_k + 1;
    CHECK(row.queries == sum_i_plus_1);
  }
  const TraceRow& last = res.trace.rows.back();
  double identity =
      2.0 * (last.k + 1) + std::log2(last.m_k / cfg.m_init);
  CHECK(double(last.queries) == doctest::Approx(identity).epsilon(1e-12));
}

TEST_CASE("fixed-M̄ mode keeps M_k = M̄ and passes at i = 0") {
  ProblemInstance prob = kkt_1d();
  SolverConfig cfg;
  cfg.epsilon = 1e-3;
  cfg.step_mode = StepMode::FixedMBar;
  cfg.holder = HolderModel{1.0, 1.0};
  cfg.k_max = 100;
  cfg.practical_stop = false;
  SolveResult res = unipd_grad(prob, cfg);
  for (const TraceRow& row : res.trace.rows) {
    CHECK(row.m_k == 1.0);
    CHECK(row.i_k == 0);
  }
}

TEST_CASE("backtracking keeps M_k <= 2 M̄ and S_k >= (k+1)/(2 M̄)") {
  ProblemInstance prob = kkt_1d();
  double m_bar = 1.0;  // nu = 1, M_1 = 1
  SolverConfig cfg;
  cfg.epsilon = 1e-3;
  cfg.m_init = 0.3 * m_bar;
  cfg.k_max = 500;
  cfg.practical_stop = false;
  SolveResult res = unipd_grad(prob, cfg);
  for (const TraceRow& row : res.trace.rows) {
    CHECK(row.m_k <= 2.0 * m_bar + 1e-12);
    CHECK(row.s_k >= (row.k + 1) / (2.0 * m_bar) - 1e-12);
  }
}

TEST_CASE("acc_unipd_grad t-sequence and weight-sum lower bound") {
  std::vector<long double> t = t_sequence(4);
  CHECK(double(t[1]) == doctest::Approx(1.618033988749895).epsilon(1e-15));
  CHECK(double(t[2]) == doctest::Approx(2.193527085331054).epsilon(1e-15));
  // momentum coefficient (t_0 - 1)/t_1 degenerates to zero
  CHECK((double(t[0]) - 1.0) / double(t[1]) == 0.0);

  ProblemInstance prob = kkt_1d();
  SolverConfig cfg;
  cfg.epsilon = 1e-3;
  cfg.m_init = 1.0;
  cfg.k_max = 500;
  cfg.practical_stop = false;
  SolveResult res = acc_unipd_grad(prob, cfg);
  std::vector<long double> ts = t_sequence(int(res.trace.rows.size()));
  double m_bar = 1.0;
  double m_prev = 0.0;
  for (const TraceRow& row : res.trace.rows) {
    CHECK(row.m_k >= m_prev);  // monotone line-search start
    m_prev = row.m_k;
    CHECK(row.t_k == doctest::Approx(double(ts[size_t(row.k)])).epsilon(1e-12));
    // hat-S_k >= (k+2)^((1+3nu)/(1+nu)) / (8 M̄) at nu = 1
    double bound = std::pow(row.k + 2.0, 2.0) / (8.0 * m_bar);
    CHECK(row.s_k >= bound - 1e-9);
  }
}

TEST_CASE("acc_unipd_grad satisfies Theorem 2 bounds on the 1-D KKT problem") {
  ProblemInstance prob = kkt_1d();
  SolverConfig cfg;
  cfg.epsilon = 1e-3;
  cfg.m_init = 1.0;
  cfg.k_max = 1000;
  cfg.practical_stop = false;
  SolveResult res = acc_unipd_grad(prob, cfg);
  Vec lambda_star(1);
  lambda_star << -1.0;
  BoundReport rep = theorem_bound_check(res.trace, prob, lambda_star, 0.5, 1.0,
                                        1.0, cfg.epsilon, TheoremId::Thm2);
  CHECK(rep.max_violation <= 1e-9);
  // query counter: sum (i_j + 2)
  long long acc = 0;
  for (const TraceRow& row : res.trace.rows) {
    acc += row.i_k + 2;
    CHECK(row.queries == acc);
  }
}

TEST_CASE("theorem_bound_check flags corrupted constants") {
  ProblemInstance prob = kkt_1d();
  SolverConfig cfg;
  cfg.epsilon = 1e-3;
  cfg.m_init = 1.0;
  cfg.k_max = 1000;
  cfg.practical_stop = false;
  SolveResult res = unipd_grad(prob, cfg);
  Vec lambda_star(1);
  lambda_star << -1.0;
  BoundReport bad = theorem_bound_check(res.trace, prob, lambda_star, 0.5,
                                        1e-3 /* M̄ off by 1e-3 */, 1.0,
                                        cfg.epsilon, TheoremId::Thm1);
  CHECK(bad.max_violation > 1e-9);
  CHECK_FALSE(bad.verbatim_holds);
}

TEST_CASE("dual averaging bound of Theorem 3 holds at probe points") {
  ProblemInstance prob = kkt_1d();
  SolverConfig cfg;
  cfg.epsilon = 1e-3;
  cfg.m_init = 1.0;
  cfg.k_max = 300;
  cfg.practical_stop = false;
  cfg.record_duals = true;
  SolveResult res = unipd_grad(prob, cfg);
  auto rng = rng_for(8);
  REQUIRE(res.trace.dual_g_values.size() == res.trace.rows.size());
  for (int probe = 0; probe < 10; ++probe) {
    Vec lam = random_vec(1, rng);
    double g_probe = eval_g(lam, prob);
    double weighted = 0.0;
    for (size_t i = 0; i < res.trace.rows.size(); ++i) {
      weighted += res.trace.dual_g_values[i] / res.trace.rows[i].m_k;
      double s_k = res.trace.rows[i].s_k;
      double g_bar = weighted / s_k;
      double bound = (res.trace.lambda0 - lam).squaredNorm() / (2.0 * s_k) +
                     0.5 * cfg.epsilon;
      CHECK(g_bar - g_probe <= bound + 1e-9);
    }
  }
}

TEST_CASE("frank_wolfe gamma sequence and first step") {
  auto rng = rng_for(9);
  Mat a = random_mat(4, 3, rng);
  Vec b = random_vec(4, rng);
  ProblemInstance prob = make_problem(
      ObjectiveDescriptor::quadratic_slack(), std::make_shared<DenseMap>(a), b,
      DomainDescriptor::l2_ball(3, 1.0), ConstraintSetDescriptor::zero_point());
  SolverConfig cfg;
  cfg.k_max = 5;
  cfg.practical_stop = false;
  SolveResult res = frank_wolfe(prob, FwStepRule::Harmonic, cfg);
  REQUIRE(res.trace.rows.size() == 5);
  CHECK(res.trace.rows[0].gamma_k == 1.0);
  CHECK(res.trace.rows[1].gamma_k == doctest::Approx(2.0 / 3.0));
  CHECK(res.trace.rows[2].gamma_k == doctest::Approx(0.5));
  // after one step the iterate is the first LMO atom (unit norm here)
  SolverConfig cfg1 = cfg;
  cfg1.k_max = 1;
  SolveResult first = frank_wolfe(prob, FwStepRule::Harmonic, cfg1);
  CHECK(first.x.head(3).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frank_wolfe gap envelope on a quadratic over the l2 ball") {
  auto rng = rng_for(10);
  Mat a = random_mat(4, 3, rng);
  Vec b = random_vec(4, rng);
  b *= 2.0;
  ProblemInstance prob = make_problem(
      ObjectiveDescriptor::quadratic_slack(), std::make_shared<DenseMap>(a), b,
      DomainDescriptor::l2_ball(3, 1.0), ConstraintSetDescriptor::zero_point());
  double lip = (a.transpose() * a).operatorNorm();
  double diam = 2.0;
  SolverConfig cfg;
  cfg.k_max = 300;
  cfg.practical_stop = false;
  for (FwStepRule rule : {FwStepRule::Harmonic, FwStepRule::ExactLineSearch}) {
    SolveResult res = frank_wolfe(prob, rule, cfg);
    for (const TraceRow& row : res.trace.rows)
      CHECK(row.g_value <= 8.0 * lip * diam * diam / (row.k + 2.0));
  }
  CHECK_THROWS_AS(frank_wolfe(kkt_1d(), FwStepRule::Harmonic, cfg),
                  UnsupportedOracleError);
}

TEST_CASE("analytic and backtracking modes agree on the final objective") {
  auto rng = rng_for(11);
  Mat a = random_mat(4, 5, rng);
  Vec b = random_vec(4, rng);
  ProblemInstance prob = make_problem(
      ObjectiveDescriptor::quadratic_slack(), std::make_shared<DenseMap>(a), b,
      DomainDescriptor::l2_ball(5, 1.0), ConstraintSetDescriptor::zero_point());
  SolverConfig cfg;
  cfg.epsilon = 1e-4;
  cfg.k_max = 3000;
  cfg.practical_stop = false;
  SolveResult back = unipd_grad(prob, cfg);
  cfg.step_mode = StepMode::AnalyticQuadratic;
  SolveResult ana = unipd_grad(prob, cfg);
  double fb = back.trace.rows.back().objective;
  double fa = ana.trace.rows.back().objective;
  CHECK(std::abs(fa - fb) <= 0.05 * std::max({std::abs(fa), std::abs(fb), 1e-6}));
}

TEST_CASE("solver runs are deterministic") {
  auto rng = rng_for(12);
  Mat a = random_mat(3, 4, rng);
  Vec b = random_vec(3, rng);
  ProblemInstance prob = make_problem(
      ObjectiveDescriptor::quadratic_slack(), std::make_shared<DenseMap>(a), b,
      DomainDescriptor::l1_ball(4, 1.0), ConstraintSetDescriptor::zero_point());
  SolverConfig cfg;
  cfg.k_max = 100;
  cfg.seed = 42;
  SolveResult r1 = unipd_grad(prob, cfg);
  SolveResult r2 = unipd_grad(prob, cfg);
  REQUIRE(r1.trace.rows.size() == r2.trace.rows.size());
  CHECK((r1.x - r2.x).norm() == 0.0);
  for (size_t i = 0; i < r1.trace.rows.size(); ++i) {
    CHECK(r1.trace.rows[i].m_k == r2.trace.rows[i].m_k);
    CHECK(r1.trace.rows[i].objective == r2.trace.rows[i].objective);
    CHECK(r1.trace.rows[i].feasibility == r2.trace.rows[i].feasibility);
    CHECK(r1.trace.rows[i].g_value == r2.trace.rows[i].g_value);
  }
}

TEST_CASE("primal averages stay inside the domain") {
  auto rng = rng_for(13);
  Mat a = random_mat(3, 4, rng);
  Vec b = random_vec(3, rng);
  for (const DomainDescriptor& dom :
       {DomainDescriptor::l1_ball(4, 1.0), DomainDescriptor::l2_ball(4, 2.0),
        DomainDescriptor::simplex(4)}) {
    ProblemInstance prob =
        make_problem(ObjectiveDescriptor::quadratic_slack(),
                     std::make_shared<DenseMap>(a), b, dom,
                     ConstraintSetDescriptor::zero_point());
    SolverConfig cfg;
    cfg.k_max = 60;
    cfg.practical_stop = false;
    for (auto solver : {unipd_grad, acc_unipd_grad}) {
      SolveResult res = solver(prob, cfg);
      CHECK(prob.domain_member(res.x, 1e-9));
    }
  }
}

TEST_CASE("psd-cone constraints solve against the projection closed form") {
  // min 1/2 ||x - c||^2 s.t. mat(x) - B >= 0 has x* = B + proj_psd(C - B)
  auto rng = rng_for(14);
  Mat raw_c = random_mat(2, 2, rng), raw_b = random_mat(2, 2, rng);
  Mat cm = 0.5 * (raw_c + raw_c.transpose());
  Mat bm = 0.5 * (raw_b + raw_b.transpose());
  ProblemInstance prob = make_problem(
      ObjectiveDescriptor::separable_quadratic(as_vector(cm)),
      std::make_shared<DenseMap>(Mat::Identity(4, 4)), as_vector(bm),
      DomainDescriptor::whole_space(4), ConstraintSetDescriptor::psd_cone(2));
  SolverConfig cfg;
  cfg.epsilon = 1e-6;
  cfg.k_max = 20000;
  cfg.practical_stop = false;
  SolveResult res = unipd_grad(prob, cfg);
  Mat diff = cm - bm;
  Eigen::SelfAdjointEigenSolver<Mat> es(diff);
  Mat pos = es.eigenvectors() *
            es.eigenvalues().cwiseMax(0.0).asDiagonal() *
            es.eigenvectors().transpose();
  Vec x_star = as_vector(Mat(bm + pos));
  CHECK((res.x - x_star).norm() <= 1e-3);
}

TEST_CASE("line-search failure surfaces as a solver status") {
  ProblemInstance prob = scalar_quadratic(100.0);
  SolverConfig cfg;
  cfg.i_max = 1;
  cfg.m_init = 1e-6;
  cfg.k_max = 10;
  SolveResult res = unipd_grad(prob, cfg);
  CHECK(res.trace.status == SolveStatus::LineSearchFailure);
  CHECK(!res.trace.message.empty());
}
