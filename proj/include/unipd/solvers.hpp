#pragma once

#include "unipd/oracles.hpp"

#include <optional>

namespace unipd {

/// Hölder smoothness model of the dual gradient:
/// ||grad g(l) - grad g(l')|| <= M_nu ||l - l'||^nu.
struct HolderModel {
  double nu = 0.0;
  double m_nu = 0.0;  // <= 0 means unknown (universal mode)

  bool known() const { return m_nu > 0.0; }
  double m_bar(double eps) const;

  /// Uniform convexity of f with parameter mu_f and degree q >= 2 gives
  /// nu = 1/(q-1), M_nu = (||A||^2 / mu_f)^{1/(q-1)}.
  static HolderModel from_strong_convexity(double mu_f, double q_degree,
                                           double a_norm);
  /// Bounded domain gives nu = 0, M_0 = 2 sup ||b - A x||.
  static HolderModel from_bounded_domain(double d_xa);
};

/// M̄_eps = [(1-nu)/(1+nu) * 1/eps]^{(1-nu)/(1+nu)} * M_nu^{2/(1+nu)}.
double m_bar_eps(double nu, double m_nu, double eps);

/// Iteration caps that certify an eps-solution for Algorithms 1 and 2
/// (floored closed forms; ||l*||_[1] = max(||l*||, 1)).
struct ComplexityBounds {
  double k_max_alg1 = 0;
  double k_max_alg2 = 0;
};
ComplexityBounds complexity_bounds(double nu, double m_nu, double eps,
                                   double lambda_star_norm);

/// Quadratic surrogate Q_M(l; l̂) = g(l̂) + <grad, l - l̂> + M/2 ||l - l̂||^2.
double surrogate_Q(const Vec& lambda, const Vec& anchor, double g_at_anchor,
                   const Vec& grad_at_anchor, double m);

enum class StepMode { Backtracking, AnalyticQuadratic, FixedMBar };
enum class WeightMode { Theoretical, GreedyObjective, GreedyFeasibility };

struct SolverConfig {
  double epsilon = 1e-3;
  double m_init = 0.0;  // <= 0: probe a finite-difference estimate
  int k_max = 1000;
  int i_max = 60;
  StepMode step_mode = StepMode::Backtracking;
  WeightMode weight_mode = WeightMode::Theoretical;
  Vec lambda0;  // empty: zeros
  double spectral_tol = 1e-5;
  std::uint64_t seed = 0;
  HolderModel holder;          // required for FixedMBar
  bool record_duals = false;   // keep lambda_{k+1} and G(lambda_{k+1})
  bool record_steps = false;   // keep accepted line-search tuples
  bool record_primal = false;  // keep every primal average
  bool practical_stop = true;  // stop early on the feasibility/objective rule

  void validate() const;
};

enum class SolveStatus {
  MaxIterations,
  Converged,
  LineSearchFailure,
  StationaryDual,
  Unsupported,
};

const char* to_string(SolveStatus s);

struct TraceRow {
  int k = 0;
  double m_k = 0.0;
  int i_k = 0;
  double objective = 0.0;
  double feasibility = 0.0;
  double g_value = 0.0;  // g at the accepted dual point (FW: duality gap)
  long long queries = 0;
  double elapsed_s = 0.0;
  double s_k = 0.0;      // running weight sum (S_k / Ŝ_k)
  double t_k = 0.0;      // acceleration scalar (Algorithm 2)
  double gamma_k = 0.0;
};

/// Accepted line-search step, kept for independent re-verification.
struct AcceptedStep {
  Vec anchor;
  Vec next;
  double m = 0.0;
  double delta = 0.0;
};

struct Trace {
  std::vector<TraceRow> rows;
  SolveStatus status = SolveStatus::MaxIterations;
  std::string message;
  long long g_queries = 0;     // N(k): sum of (i_j + c) line-search accounting
  long long grad_queries = 0;  // gradient formations
  Vec lambda0;
  Vec lambda_final;            // last accepted dual iterate
  std::vector<Vec> dual_iterates;      // lambda_{k+1} (record_duals)
  std::vector<double> dual_g_values;   // G(lambda_{k+1}) (record_duals)
  std::vector<AcceptedStep> accepted_steps;  // (record_steps)
  std::vector<Vec> primal_iterates;          // x̄_k (record_primal)
};

struct SolveResult {
  Vec x;  // primal average (x̄_k / x̿_k)
  Trace trace;
};

class LineSearchError : public std::runtime_error {
 public:
  LineSearchError(const std::string& what, Vec last_trial, double last_m)
      : std::runtime_error(what),
        last_trial_(std::move(last_trial)),
        last_m_(last_m) {}
  const Vec& last_trial() const { return last_trial_; }
  double last_m() const { return last_m_; }

 private:
  Vec last_trial_;
  double last_m_;
};

struct LineSearchResult {
  Vec lambda_next;
  DualEval eval_next;
  double m = 0.0;
  int i = 0;
};

/// Doubling search from m_start: the first M with
/// g(l') <= Q_M(l'; anchor) + delta/2, where l' = prox_{h/M}(anchor - grad/M).
/// Counts one g query per trial in trace.g_queries. Throws LineSearchError
/// past i_max trials or M > 1e30.
LineSearchResult line_search(const ProblemInstance& prob, const Vec& anchor,
                             const DualEval& at_anchor, double delta,
                             double m_start, const SolverConfig& cfg,
                             Trace& trace);

/// Analytic step-size for quadratic-cost problems on a norm-ball domain
/// (h absent). Returns alpha with U(alpha) = g - alpha/2 ||grad||^2 + delta/2,
/// so the line-search condition holds at M = 1/alpha without g evaluations.
/// Returns nullopt when ||grad|| = 0 (dual stationary point).
std::optional<double> analytic_step_quadratic(const Vec& anchor,
                                              const Vec& grad, double delta,
                                              const ProblemInstance& prob,
                                              double spectral_tol = 1e-8);

/// Exact minimizer over [0,1] of the chosen metric along
/// (1-gamma) x_prev + gamma atom; the metric must be quadratic in gamma.
double greedy_weight(const Vec& x_prev, const Vec& atom,
                     const ProblemInstance& prob, WeightMode mode);

/// Algorithm 1: universal primal-dual gradient method.
SolveResult unipd_grad(const ProblemInstance& prob, const SolverConfig& cfg);

/// Algorithm 2: accelerated variant (FISTA-form dual updates).
SolveResult acc_unipd_grad(const ProblemInstance& prob,
                           const SolverConfig& cfg);

enum class FwStepRule { Harmonic, ExactLineSearch };

/// Frank-Wolfe baseline on min 1/2 ||A x - b||^2 over X (quadratic-cost
/// problems only). Logs the duality gap <grad phi(x̄_k), x̄_k - atom_{k+1}>
/// in TraceRow::g_value.
SolveResult frank_wolfe(const ProblemInstance& prob, FwStepRule rule,
                        const SolverConfig& cfg);

struct BoundReport {
  double max_obj_upper_violation = 0.0;
  double max_obj_lower_violation = 0.0;
  double max_feas_violation = 0.0;
  double max_violation = 0.0;
  bool supplement_variant_holds = false;  // Ŝ_k-based bounds (Theorem 2 proof)
  bool verbatim_holds = false;
  int rows_checked = 0;
};

enum class TheoremId { Thm1, Thm2 };

/// Checks the two-sided objective bound and the feasibility bound of the
/// selected theorem at every recorded iteration. Positive entries are
/// violations; report-only.
BoundReport theorem_bound_check(const Trace& trace,
                                const ProblemInstance& prob,
                                const Vec& lambda_star, double f_star,
                                double m_bar, double nu, double eps,
                                TheoremId which);

}  // namespace unipd
