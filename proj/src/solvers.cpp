#include "unipd/solvers.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace unipd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Vec initial_dual(const ProblemInstance& prob, const SolverConfig& cfg) {
  if (cfg.lambda0.size() == 0) return Vec::Zero(prob.n());
  if (cfg.lambda0.size() != prob.n())
    throw std::invalid_argument("solver: lambda0 dimension mismatch");
  return cfg.lambda0;
}

// M_{-1} estimate from one finite-difference probe of grad g, clamped to
// [1e-6, 1e6]. The halving restart of Algorithm 1 self-corrects overshoot.
double probe_m_init(const ProblemInstance& prob, const SolverConfig& cfg,
                    const Vec& lambda0) {
  if (cfg.m_init > 0) return cfg.m_init;
  std::mt19937_64 rng(cfg.seed ^ 0xabcdef12ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec u(lambda0.size());
  for (Index i = 0; i < u.size(); ++i) u[i] = normal(rng);
  double nu_ = u.norm();
  if (nu_ == 0.0) return 1.0;
  u *= 1e-3 * std::max(1.0, lambda0.norm()) / nu_;
  Vec g0 = grad_g(lambda0, prob, cfg.spectral_tol);
  Vec g1 = grad_g(lambda0 + u, prob, cfg.spectral_tol);
  double m = (g1 - g0).norm() / u.norm();
  return std::min(std::max(m, 1e-6), 1e6);
}

struct StopRule {
  double eps;
  double f_prev = std::numeric_limits<double>::quiet_NaN();
  int stable = 0;

  bool update(double f, double feas) {
    bool flat = std::isfinite(f_prev) &&
                std::abs(f - f_prev) <= eps * std::max(1.0, std::abs(f));
    f_prev = f;
    if (feas <= eps && flat)
      ++stable;
    else
      stable = 0;
    return stable >= 10;
  }
};

Vec fw_start_point(const DomainDescriptor& X) {
  switch (X.kind) {
    case DomainKind::Spectrahedron: {
      Mat m = Mat::Identity(X.rows, X.cols) / double(X.rows);
      return as_vector(m);
    }
    case DomainKind::Simplex:
      return Vec::Constant(X.dim, 1.0 / double(X.dim));
    case DomainKind::L1Ball:
    case DomainKind::L2Ball:
    case DomainKind::NuclearBall:
      return Vec::Zero(X.dim);
    case DomainKind::WholeSpace:
      throw UnsupportedOracleError("frank_wolfe: domain must be bounded");
  }
  throw UnsupportedOracleError("frank_wolfe: unknown domain");
}

}  // namespace

double m_bar_eps(double nu, double m_nu, double eps) {
  if (nu < 0.0 || nu > 1.0)
    throw std::invalid_argument("m_bar_eps: nu outside [0,1]");
  if (m_nu <= 0.0 || eps <= 0.0)
    throw std::invalid_argument("m_bar_eps: M_nu and eps must be positive");
  if (nu == 1.0) return m_nu;
  double ratio = (1.0 - nu) / (1.0 + nu);
  return std::pow(ratio / eps, ratio) * std::pow(m_nu, 2.0 / (1.0 + nu));
}

double HolderModel::m_bar(double eps) const {
  if (!known()) throw std::invalid_argument("HolderModel: parameters unknown");
  return m_bar_eps(nu, m_nu, eps);
}

HolderModel HolderModel::from_strong_convexity(double mu_f, double q_degree,
                                               double a_norm) {
  if (mu_f <= 0 || q_degree < 2 || a_norm < 0)
    throw std::invalid_argument("HolderModel: bad strong-convexity inputs");
  HolderModel h;
  h.nu = 1.0 / (q_degree - 1.0);
  h.m_nu = std::pow(a_norm * a_norm / mu_f, 1.0 / (q_degree - 1.0));
  return h;
}

HolderModel HolderModel::from_bounded_domain(double d_xa) {
  if (d_xa <= 0) throw std::invalid_argument("HolderModel: bad diameter");
  HolderModel h;
  h.nu = 0.0;
  h.m_nu = 2.0 * d_xa;
  return h;
}

ComplexityBounds complexity_bounds(double nu, double m_nu, double eps,
                                   double lambda_star_norm) {
  if (nu < 0 || nu > 1 || m_nu <= 0 || eps <= 0 || lambda_star_norm < 0)
    throw std::invalid_argument("complexity_bounds: bad inputs");
  double l = lambda_star_norm;
  double l1 = std::max(l, 1.0);
  double denom = -1.0 + std::sqrt(1.0 + 8.0 * l / l1);
  double bracket1, bracket2;
  if (l < 1e-12 || denom < 1e-12) {
    bracket1 = std::sqrt(2.0) * l1;  // series limit of the 0/0 form
    bracket2 = 2.0 * std::sqrt(2.0) * l1;
  } else {
    bracket1 = 4.0 * std::sqrt(2.0) * l / denom;
    bracket2 = 8.0 * std::sqrt(2.0) * l / denom;
  }
  ComplexityBounds out;
  out.k_max_alg1 =
      std::floor(bracket1 * bracket1 * std::pow(m_nu / eps, 2.0 / (1.0 + nu)));
  out.k_max_alg2 =
      std::floor(std::pow(bracket2, (2.0 + 2.0 * nu) / (1.0 + 3.0 * nu)) *
                 std::pow(m_nu / eps, 2.0 / (1.0 + 3.0 * nu)));
  return out;
}

double surrogate_Q(const Vec& lambda, const Vec& anchor, double g_at_anchor,
                   const Vec& grad_at_anchor, double m) {
  if (m <= 0) throw std::invalid_argument("surrogate_Q: M <= 0");
  Vec d = lambda - anchor;
  return g_at_anchor + grad_at_anchor.dot(d) + 0.5 * m * d.squaredNorm();
}

void SolverConfig::validate() const {
  if (epsilon <= 0) throw std::invalid_argument("config: epsilon <= 0");
  if (k_max < 1) throw std::invalid_argument("config: k_max < 1");
  if (i_max < 1) throw std::invalid_argument("config: i_max < 1");
  if (spectral_tol <= 0) throw std::invalid_argument("config: spectral_tol <= 0");
  if (step_mode == StepMode::FixedMBar && !holder.known())
    throw std::invalid_argument("config: fixed-M̄ mode needs a HolderModel");
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::Converged: return "converged";
    case SolveStatus::LineSearchFailure: return "line-search-failure";
    case SolveStatus::StationaryDual: return "stationary-dual";
    case SolveStatus::Unsupported: return "unsupported";
  }
  return "?";
}

LineSearchResult line_search(const ProblemInstance& prob, const Vec& anchor,
                             const DualEval& at_anchor, double delta,
                             double m_start, const SolverConfig& cfg,
                             Trace& trace) {
  if (delta <= 0 || m_start <= 0)
    throw std::invalid_argument("line_search: delta and M_start must be > 0");
  double m = m_start;
  Vec trial;
  for (int i = 0; i <= cfg.i_max; ++i, m *= 2.0) {
    if (m > 1e30)
      throw LineSearchError("line_search: M exceeded 1e30", trial, m);
    trial = prox_h(anchor - at_anchor.grad / m, 1.0 / m, prob.constraint);
    DualEval ev = eval_dual(trial, prob, cfg.spectral_tol);
    ++trace.g_queries;
    double q = surrogate_Q(trial, anchor, at_anchor.g, at_anchor.grad, m);
    if (ev.g <= q + 0.5 * delta)
      return LineSearchResult{trial, std::move(ev), m, i};
  }
  throw LineSearchError(
      "line_search: no acceptable M within i_max trials "
      "(M_init too small for i_max, or the smoothness assumption fails)",
      trial, m / 2.0);
}

std::optional<double> analytic_step_quadratic(const Vec& anchor,
                                              const Vec& grad, double delta,
                                              const ProblemInstance& prob,
                                              double spectral_tol) {
  if (!prob.slack_form())
    throw UnsupportedOracleError(
        "analytic step: quadratic-cost problems only");
  if (prob.domain.kind == DomainKind::WholeSpace)
    throw UnsupportedOracleError("analytic step: domain must be bounded");
  if (delta <= 0) throw std::invalid_argument("analytic step: delta <= 0");
  double gn2 = grad.squaredNorm();
  if (gn2 == 0.0) return std::nullopt;  // dual stationary point
  // sigma_X(-A^T grad): kappa ||A^T grad||_* for norm balls.
  double support = sharp(-prob.map->adjoint_apply(grad), prob.domain,
                         ObjectiveDescriptor::zero(), spectral_tol)
                       .support_value;
  double p = gn2 + 2.0 * support - 2.0 * (anchor - prob.b).dot(grad);
  return (-p + std::sqrt(p * p + 4.0 * delta * gn2)) / (2.0 * gn2);
}

double greedy_weight(const Vec& x_prev, const Vec& atom,
                     const ProblemInstance& prob, WeightMode mode) {
  if (mode == WeightMode::Theoretical)
    throw std::invalid_argument("greedy_weight: pick a greedy mode");
  double a = 0.0, b = 0.0;
  if (mode == WeightMode::GreedyObjective) {
    switch (prob.objective.kind) {
      case ObjectiveKind::QuadraticSlack: {
        Index n = prob.n();
        Vec r_prev = x_prev.tail(n);
        Vec d = atom.tail(n) - r_prev;
        a = 0.5 * d.squaredNorm();
        b = r_prev.dot(d);
        break;
      }
      case ObjectiveKind::SeparableQuadratic: {
        Vec d = atom - x_prev;
        a = 0.5 * d.squaredNorm();
        b = (x_prev - prob.objective.center).dot(d);
        break;
      }
      case ObjectiveKind::Zero:
        break;  // constant metric
      case ObjectiveKind::SquaredNuclear:
        throw UnsupportedOracleError(
            "greedy_weight: squared-nuclear objective is not quadratic "
            "along the segment");
    }
  } else {
    if (prob.constraint.kind != ConstraintKind::ZeroPoint &&
        prob.constraint.kind != ConstraintKind::L2Ball)
      throw UnsupportedOracleError(
          "greedy_weight: feasibility mode needs K = {0} or an l2 ball");
    Vec u_prev = prob.residual(x_prev);
    Vec d = prob.residual(atom) - u_prev;
    a = d.squaredNorm();
    b = 2.0 * u_prev.dot(d);
  }
  if (a <= 0.0) return b < 0.0 ? 1.0 : 0.0;
  return std::min(1.0, std::max(0.0, -b / (2.0 * a)));
}

namespace {

struct StepOutcome {
  Vec lambda_next;
  DualEval eval_next;
  double m = 0.0;
  int i = 0;
  bool stationary = false;
};

// One dual step in the configured mode. delta is eps (Alg. 1) or eps/t_k.
StepOutcome dual_step(const ProblemInstance& prob, const SolverConfig& cfg,
                      const Vec& lambda_hat, const DualEval& at_hat,
                      double delta, double m_start, double m_floor,
                      Trace& trace) {
  StepOutcome out;
  switch (cfg.step_mode) {
    case StepMode::Backtracking: {
      LineSearchResult ls =
          line_search(prob, lambda_hat, at_hat, delta, m_start, cfg, trace);
      out.lambda_next = std::move(ls.lambda_next);
      out.eval_next = std::move(ls.eval_next);
      out.m = ls.m;
      out.i = ls.i;
      return out;
    }
    case StepMode::FixedMBar: {
      double m = std::max(m_floor, cfg.holder.m_bar(delta));
      Vec trial =
          prox_h(lambda_hat - at_hat.grad / m, 1.0 / m, prob.constraint);
      DualEval ev = eval_dual(trial, prob, cfg.spectral_tol);
      ++trace.g_queries;
      double q = surrogate_Q(trial, lambda_hat, at_hat.g, at_hat.grad, m);
      if (ev.g > q + 0.5 * delta)
        throw LineSearchError("fixed-M̄ step violates the surrogate condition",
                              trial, m);
      out.lambda_next = std::move(trial);
      out.eval_next = std::move(ev);
      out.m = m;
      out.i = 0;
      return out;
    }
    case StepMode::AnalyticQuadratic: {
      auto alpha = analytic_step_quadratic(lambda_hat, at_hat.grad, delta,
                                           prob, cfg.spectral_tol);
      if (!alpha) {
        out.stationary = true;
        return out;
      }
      out.lambda_next = lambda_hat - *alpha * at_hat.grad;
      out.eval_next = eval_dual(out.lambda_next, prob, cfg.spectral_tol);
      ++trace.g_queries;
      out.m = 1.0 / *alpha;
      out.i = 0;
      return out;
    }
  }
  throw std::logic_error("dual_step: unknown step mode");
}

}  // namespace

SolveResult unipd_grad(const ProblemInstance& prob, const SolverConfig& cfg) {
  cfg.validate();
  prob.validate();
  auto t0 = Clock::now();

  Vec lambda = initial_dual(prob, cfg);
  Trace trace;
  trace.lambda0 = lambda;
  double m_prev = cfg.step_mode == StepMode::FixedMBar
                      ? cfg.holder.m_bar(cfg.epsilon)
                      : probe_m_init(prob, cfg, lambda);
  // The oracle value at lambda_0 is a warm-up; N_1(k) counts line-search
  // trials only, each accepted trial being reused as the next anchor.
  DualEval cur = eval_dual(lambda, prob, cfg.spectral_tol);

  Vec xbar = Vec::Zero(prob.primal_dim());
  double s_sum = 0.0;
  StopRule stop{cfg.epsilon};
  SolveResult result;
  trace.status = SolveStatus::MaxIterations;

  for (int k = 0; k < cfg.k_max; ++k) {
    if (trace.message.empty() && cur.grad.norm() == 0.0)
      trace.message = "dual stationary point reached at k=" + std::to_string(k);
    StepOutcome step;
    try {
      // the halving start would underflow once the dual is stationary
      double m_start = std::max(0.5 * m_prev, 1e-30);
      step = dual_step(prob, cfg, lambda, cur, cfg.epsilon, m_start, m_prev,
                       trace);
    } catch (const LineSearchError& e) {
      trace.status = SolveStatus::LineSearchFailure;
      trace.message = e.what();
      break;
    }
    if (step.stationary) {  // analytic mode cannot form a step
      trace.status = SolveStatus::StationaryDual;
      break;
    }
    if (cfg.record_steps)
      trace.accepted_steps.push_back(
          {lambda, step.lambda_next, step.m, cfg.epsilon});
    ++trace.grad_queries;

    m_prev = step.m;
    double w = 1.0 / step.m;
    s_sum += w;
    double gamma = w / s_sum;
    if (k == 0 && gamma != 1.0)
      throw std::logic_error("unipd_grad: gamma_0 must be 1");
    if (k > 0 && cfg.weight_mode != WeightMode::Theoretical)
      gamma = greedy_weight(xbar, cur.atom, prob, cfg.weight_mode);
    xbar = (1.0 - gamma) * xbar + gamma * cur.atom;

    TraceRow row;
    row.k = k;
    row.m_k = step.m;
    row.i_k = step.i;
    row.objective = prob.objective_value(xbar);
    row.feasibility = prob.feasibility_gap(xbar);
    row.g_value = step.eval_next.g;
    row.queries = trace.g_queries;
    row.elapsed_s = seconds_since(t0);
    row.s_k = s_sum;
    row.t_k = 0.0;
    row.gamma_k = gamma;
    trace.rows.push_back(row);
    if (cfg.record_duals) {
      trace.dual_iterates.push_back(step.lambda_next);
      trace.dual_g_values.push_back(
          step.eval_next.g + eval_h(step.lambda_next, prob.constraint));
    }
    if (cfg.record_primal) trace.primal_iterates.push_back(xbar);

    lambda = std::move(step.lambda_next);
    cur = std::move(step.eval_next);
    trace.lambda_final = lambda;

    if (cfg.practical_stop && stop.update(row.objective, row.feasibility)) {
      trace.status = SolveStatus::Converged;
      break;
    }
  }
  result.x = std::move(xbar);
  result.trace = std::move(trace);
  return result;
}

SolveResult acc_unipd_grad(const ProblemInstance& prob,
                           const SolverConfig& cfg) {
  cfg.validate();
  prob.validate();
  auto t0 = Clock::now();

  Vec lambda = initial_dual(prob, cfg);
  Vec lambda_hat = lambda;
  Trace trace;
  trace.lambda0 = lambda;
  double m_prev = cfg.step_mode == StepMode::FixedMBar
                      ? cfg.holder.m_bar(cfg.epsilon)
                      : probe_m_init(prob, cfg, lambda);
  // N_2(k) = sum (i_j + 2): every oracle point lambdâ_k costs a fresh
  // evaluation here, so the initial one is part of the count.
  DualEval cur = eval_dual(lambda_hat, prob, cfg.spectral_tol);
  ++trace.g_queries;

  Vec xbar = Vec::Zero(prob.primal_dim());
  double s_sum = 0.0;
  long double t = 1.0L;
  StopRule stop{cfg.epsilon};
  trace.status = SolveStatus::MaxIterations;

  for (int k = 0; k < cfg.k_max; ++k) {
    double delta = cfg.epsilon / double(t);
    StepOutcome step;
    try {
      step = dual_step(prob, cfg, lambda_hat, cur, delta, m_prev, m_prev,
                       trace);
    } catch (const LineSearchError& e) {
      trace.status = SolveStatus::LineSearchFailure;
      trace.message = e.what();
      break;
    }
    if (step.stationary) {  // analytic mode cannot form a step
      trace.status = SolveStatus::StationaryDual;
      break;
    }
    if (cfg.record_steps)
      trace.accepted_steps.push_back(
          {lambda_hat, step.lambda_next, step.m, delta});
    ++trace.grad_queries;

    m_prev = std::max(m_prev, step.m);  // monotone by construction
    double w = double(t) / step.m;
    s_sum += w;
    double gamma = w / s_sum;
    if (k == 0 && gamma != 1.0)
      throw std::logic_error("acc_unipd_grad: gamma_0 must be 1");
    if (k > 0 && cfg.weight_mode != WeightMode::Theoretical)
      gamma = greedy_weight(xbar, cur.atom, prob, cfg.weight_mode);
    xbar = (1.0 - gamma) * xbar + gamma * cur.atom;

    long double t_next = 0.5L * (1.0L + std::sqrt(1.0L + 4.0L * t * t));
    Vec lambda_next = step.lambda_next;
    Vec lambda_hat_next =
        lambda_next + (double(t) - 1.0) / double(t_next) * (lambda_next - lambda);

    // Row k now carries sum_{j<=k} (i_j + 2): the initial evaluation plus
    // the k momentum-point evaluations of earlier iterations are in the
    // counter already; this iteration's momentum evaluation belongs to the
    // next row.
    TraceRow row;
    row.k = k;
    row.m_k = step.m;
    row.i_k = step.i;
    row.objective = prob.objective_value(xbar);
    row.feasibility = prob.feasibility_gap(xbar);
    row.g_value = step.eval_next.g;
    row.queries = trace.g_queries;
    row.elapsed_s = seconds_since(t0);
    row.s_k = s_sum;
    row.t_k = double(t);
    row.gamma_k = gamma;
    trace.rows.push_back(row);
    if (cfg.record_duals) {
      trace.dual_iterates.push_back(lambda_next);
      trace.dual_g_values.push_back(
          step.eval_next.g + eval_h(lambda_next, prob.constraint));
    }
    if (cfg.record_primal) trace.primal_iterates.push_back(xbar);

    lambda = std::move(lambda_next);
    lambda_hat = std::move(lambda_hat_next);
    t = t_next;
    trace.lambda_final = lambda;

    if (cfg.practical_stop && stop.update(row.objective, row.feasibility)) {
      trace.status = SolveStatus::Converged;
      break;
    }
    if (k + 1 < cfg.k_max) {
      cur = eval_dual(lambda_hat, prob, cfg.spectral_tol);
      ++trace.g_queries;
    }
  }
  SolveResult result;
  result.x = std::move(xbar);
  result.trace = std::move(trace);
  return result;
}

SolveResult frank_wolfe(const ProblemInstance& prob, FwStepRule rule,
                        const SolverConfig& cfg) {
  cfg.validate();
  prob.validate();
  if (!prob.slack_form())
    throw UnsupportedOracleError(
        "frank_wolfe: supports quadratic-cost objectives only");
  auto t0 = Clock::now();

  Trace trace;
  trace.lambda0 = Vec::Zero(prob.n());
  Vec x = fw_start_point(prob.domain);
  Vec r = prob.map->apply(x) - prob.b;

  auto lmo = [&](const Vec& grad_phi) {
    ++trace.g_queries;
    return sharp(-grad_phi, prob.domain, ObjectiveDescriptor::zero(),
                 cfg.spectral_tol)
        .x_star;
  };
  Vec grad_phi = prob.map->adjoint_apply(r);
  Vec atom = lmo(grad_phi);
  trace.status = SolveStatus::MaxIterations;

  for (int k = 0; k < cfg.k_max; ++k) {
    double gamma;
    if (rule == FwStepRule::Harmonic) {
      gamma = 2.0 / double(k + 2);
    } else {
      Vec d = prob.map->apply(atom) - prob.b - r;
      double dn = d.squaredNorm();
      gamma = dn > 0.0 ? std::min(1.0, std::max(0.0, -r.dot(d) / dn)) : 0.0;
    }
    x += gamma * (atom - x);
    r = prob.map->apply(x) - prob.b;
    grad_phi = prob.map->adjoint_apply(r);
    atom = lmo(grad_phi);
    double gap = grad_phi.dot(x - atom);

    TraceRow row;
    row.k = k;
    row.m_k = gamma;
    row.i_k = 0;
    row.objective = 0.5 * r.squaredNorm();
    row.feasibility = 0.0;  // [x; Ax - b] is feasible for the slack template
    row.g_value = gap;
    row.queries = trace.g_queries;
    row.elapsed_s = seconds_since(t0);
    row.s_k = 0.0;
    row.t_k = 0.0;
    row.gamma_k = gamma;
    trace.rows.push_back(row);
    ++trace.grad_queries;

    if (cfg.practical_stop && gap <= cfg.epsilon) {
      trace.status = SolveStatus::Converged;
      break;
    }
  }
  SolveResult result;
  result.x.resize(prob.primal_dim());
  result.x.head(prob.domain.dim) = x;
  result.x.tail(prob.n()) = r;
  result.trace = std::move(trace);
  return result;
}

BoundReport theorem_bound_check(const Trace& trace,
                                const ProblemInstance& prob,
                                const Vec& lambda_star, double f_star,
                                double m_bar, double nu, double eps,
                                TheoremId which) {
  (void)prob;
  BoundReport rep;
  double l0sq = trace.lambda0.squaredNorm();
  double dist0 = (trace.lambda0 - lambda_star).norm();
  double lstar = lambda_star.norm();
  double neg_inf = -std::numeric_limits<double>::infinity();
  rep.max_obj_upper_violation = neg_inf;
  rep.max_obj_lower_violation = neg_inf;
  rep.max_feas_violation = neg_inf;
  double supp_max = neg_inf;

  for (const TraceRow& row : trace.rows) {
    double obj_res = row.objective - f_star;
    double upper, feas_bound;
    if (which == TheoremId::Thm1) {
      double kp1 = double(row.k + 1);
      upper = m_bar * l0sq / kp1 + 0.5 * eps;
      feas_bound = 4.0 * m_bar * dist0 / kp1 + std::sqrt(2.0 * m_bar * eps / kp1);
    } else {
      double pw = std::pow(double(row.k + 2), (1.0 + 3.0 * nu) / (1.0 + nu));
      upper = 0.5 * eps + 4.0 * m_bar * l0sq / pw;
      feas_bound = 16.0 * m_bar * dist0 / pw + std::sqrt(8.0 * m_bar * eps / pw);
    }
    double lower = -lstar * row.feasibility;
    rep.max_obj_upper_violation =
        std::max(rep.max_obj_upper_violation, obj_res - upper);
    rep.max_obj_lower_violation =
        std::max(rep.max_obj_lower_violation, lower - obj_res);
    rep.max_feas_violation =
        std::max(rep.max_feas_violation, row.feasibility - feas_bound);

    // Proof-side variants through the recorded weight sums.
    if (row.s_k > 0) {
      double upper_s = 0.5 * eps + l0sq / (2.0 * row.s_k);
      double feas_s =
          which == TheoremId::Thm1
              ? (2.0 * dist0 + std::sqrt(row.s_k * eps)) / row.s_k
              : 2.0 * dist0 / row.s_k + std::sqrt(eps / row.s_k);
      supp_max = std::max(supp_max, obj_res - upper_s);
      supp_max = std::max(supp_max, lower - obj_res);
      supp_max = std::max(supp_max, row.feasibility - feas_s);
    }
    ++rep.rows_checked;
  }
  rep.max_violation = std::max({rep.max_obj_upper_violation,
                                rep.max_obj_lower_violation,
                                rep.max_feas_violation});
  const double slack = 1e-9;
  rep.verbatim_holds = rep.rows_checked > 0 && rep.max_violation <= slack;
  rep.supplement_variant_holds = rep.rows_checked > 0 && supp_max <= slack;
  return rep;
}

}  // namespace unipd
