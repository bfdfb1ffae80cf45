#include "unipd/oracles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace unipd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kSharpSeed = 0x5eedULL;

// Power iteration needs more sweeps the tighter the tolerance; scale the
// default budget by the decades below the 1e-5 default. `boost` covers the
// retry path for near-degenerate top pairs.
PowerOptions spectral_options(double tol, Index d, int boost) {
  double extra = std::max(0.0, std::ceil(std::log10(1e-5 / tol)));
  PowerOptions opts;
  opts.tol = tol;
  opts.max_iter = int(double(10 * d + 500) * (1.0 + extra)) * boost;
  opts.seed = kSharpSeed + std::uint64_t(boost);
  return opts;
}

Index argmax_abs(const Vec& v) {
  Index best = 0;
  double best_abs = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    double a = std::abs(v[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

SharpResult sharp_zero_objective(const Vec& s, const DomainDescriptor& X,
                                 double spectral_tol, int boost) {
  SharpResult res;
  switch (X.kind) {
    case DomainKind::L1Ball: {
      if (s.isZero(0.0)) {
        res.x_star = Vec::Zero(X.dim);  // 0 is interior
        res.support_value = 0.0;
        return res;
      }
      Index i = argmax_abs(s);
      res.x_star = Vec::Zero(X.dim);
      res.x_star[i] = X.radius * (s[i] >= 0 ? 1.0 : -1.0);
      res.support_value = X.radius * std::abs(s[i]);
      return res;
    }
    case DomainKind::L2Ball: {
      double ns = s.norm();
      if (ns == 0.0) {
        res.x_star = Vec::Zero(X.dim);
        res.support_value = 0.0;
        return res;
      }
      res.x_star = (X.radius / ns) * s;
      res.support_value = X.radius * ns;
      return res;
    }
    case DomainKind::NuclearBall: {
      PowerOptions opts =
          spectral_options(spectral_tol, std::min(X.rows, X.cols), boost);
      SpectralResult tri = top_singular_triplet(as_matrix(s, X.rows, X.cols),
                                                opts);
      Mat atom = X.radius * tri.left_vector * tri.right_vector.transpose();
      res.x_star = as_vector(atom);
      res.support_value = X.radius * tri.value;
      return res;
    }
    case DomainKind::Spectrahedron: {
      Mat m = as_matrix(s, X.rows, X.cols);
      Mat sym = 0.5 * (m + m.transpose());
      PowerOptions opts = spectral_options(spectral_tol, X.rows, boost);
      SpectralResult top = power_method(sym, opts);
      Mat atom = top.left_vector * top.left_vector.transpose();
      res.x_star = as_vector(atom);
      res.support_value = top.value;
      return res;
    }
    case DomainKind::Simplex: {
      Index i = 0;
      s.maxCoeff(&i);
      res.x_star = Vec::Zero(X.dim);
      res.x_star[i] = 1.0;
      res.support_value = s[i];
      return res;
    }
    case DomainKind::WholeSpace:
      throw UnsupportedOracleError(
          "sharp: linear objective unbounded on the whole space");
  }
  throw UnsupportedOracleError("sharp: unknown domain kind");
}

}  // namespace

SharpResult sharp_with_boost(const Vec& s, const DomainDescriptor& X,
                             const ObjectiveDescriptor& f, double spectral_tol,
                             int boost);

SharpResult sharp(const Vec& s, const DomainDescriptor& X,
                  const ObjectiveDescriptor& f, double spectral_tol) {
  // Near-degenerate top pairs slow the power iteration down arbitrarily;
  // one retry with a 20x budget covers them before giving up.
  try {
    return sharp_with_boost(s, X, f, spectral_tol, 1);
  } catch (const ConvergenceError&) {
    return sharp_with_boost(s, X, f, spectral_tol, 20);
  }
}

SharpResult sharp_with_boost(const Vec& s, const DomainDescriptor& X,
                             const ObjectiveDescriptor& f, double spectral_tol,
                             int boost) {
  switch (f.kind) {
    case ObjectiveKind::Zero: {
      if (s.size() != X.dim)
        throw std::invalid_argument("sharp: dimension mismatch");
      return sharp_zero_objective(s, X, spectral_tol, boost);
    }
    case ObjectiveKind::SeparableQuadratic: {
      if (X.kind != DomainKind::WholeSpace)
        throw UnsupportedOracleError(
            "sharp: separable-quadratic supported on the whole space only");
      if (s.size() != X.dim)
        throw std::invalid_argument("sharp: dimension mismatch");
      SharpResult res;
      res.x_star = f.center + s;
      res.support_value = s.dot(f.center) + 0.5 * s.squaredNorm();
      return res;
    }
    case ObjectiveKind::SquaredNuclear: {
      if (X.kind != DomainKind::WholeSpace || X.rows * X.cols == 0)
        throw UnsupportedOracleError(
            "sharp: squared-nuclear needs a whole-space matrix domain");
      if (s.size() != X.dim)
        throw std::invalid_argument("sharp: dimension mismatch");
      double n_scale = f.nuclear_scale > 0 ? f.nuclear_scale : double(X.dim);
      PowerOptions opts =
          spectral_options(spectral_tol, std::min(X.rows, X.cols), boost);
      SpectralResult tri = top_singular_triplet(as_matrix(s, X.rows, X.cols),
                                                opts);
      // max over X of <s, X> - (1/n)||X||_*^2 is attained on the top
      // singular pair at magnitude (n/2) sigma1, with value (n/4) sigma1^2.
      Mat atom = 0.5 * n_scale * tri.value * tri.left_vector *
                 tri.right_vector.transpose();
      SharpResult res;
      res.x_star = as_vector(atom);
      res.support_value = 0.25 * n_scale * tri.value * tri.value;
      return res;
    }
    case ObjectiveKind::QuadraticSlack: {
      Index n = s.size() - X.dim;
      if (n < 1)
        throw std::invalid_argument(
            "sharp: quadratic-slack input must append a slack block");
      SharpResult head =
          sharp_zero_objective(s.head(X.dim), X, spectral_tol, boost);
      SharpResult res;
      res.x_star.resize(s.size());
      res.x_star.head(X.dim) = head.x_star;
      res.x_star.tail(n) = s.tail(n);  // max_r <s_r, r> - 1/2 ||r||^2
      res.support_value = head.support_value + 0.5 * s.tail(n).squaredNorm();
      return res;
    }
  }
  throw UnsupportedOracleError("sharp: unknown objective kind");
}

double eval_h(const Vec& lambda, const ConstraintSetDescriptor& K) {
  switch (K.kind) {
    case ConstraintKind::ZeroPoint:
      return 0.0;
    case ConstraintKind::L2Ball:
      return K.radius * lambda.norm();
    case ConstraintKind::L1Ball:
      return K.radius * lambda.lpNorm<Eigen::Infinity>();
    case ConstraintKind::NonnegOrthant: {
      double tol = 1e-12 * std::max(1.0, lambda.lpNorm<Eigen::Infinity>());
      return lambda.maxCoeff() <= tol ? 0.0 : kInf;
    }
    case ConstraintKind::PsdCone: {
      Mat m = as_matrix(lambda, K.side, K.side);
      Mat sym = 0.5 * (m + m.transpose());
      Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
      double tol = 1e-12 * std::max(1.0, sym.cwiseAbs().maxCoeff());
      return es.eigenvalues().maxCoeff() <= tol ? 0.0 : kInf;
    }
  }
  return 0.0;
}

Vec project_l1_ball(const Vec& v, double radius) {
  if (radius < 0) throw std::invalid_argument("project_l1_ball: radius < 0");
  if (radius == 0.0) return Vec::Zero(v.size());
  if (v.lpNorm<1>() <= radius) return v;
  // Sort-and-threshold: theta such that sum(max(|v_i| - theta, 0)) = radius.
  std::vector<double> a(v.size());
  for (Index i = 0; i < v.size(); ++i) a[size_t(i)] = std::abs(v[i]);
  std::sort(a.begin(), a.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  for (size_t j = 0; j < a.size(); ++j) {
    cum += a[j];
    double t = (cum - radius) / double(j + 1);
    if (j + 1 == a.size() || a[j + 1] <= t) {
      theta = t;
      break;
    }
  }
  Vec out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    double mag = std::max(std::abs(v[i]) - theta, 0.0);
    out[i] = v[i] >= 0 ? mag : -mag;
  }
  return out;
}

Vec project_simplex(const Vec& v) {
  // shift by theta so the positive part sums to one
  std::vector<double> a(v.size());
  for (Index i = 0; i < v.size(); ++i) a[size_t(i)] = v[i];
  std::sort(a.begin(), a.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  for (size_t j = 0; j < a.size(); ++j) {
    cum += a[j];
    double t = (cum - 1.0) / double(j + 1);
    if (j + 1 == a.size() || a[j + 1] <= t) {
      theta = t;
      break;
    }
  }
  return (v.array() - theta).max(0.0);
}

Vec project_domain(const Vec& x, const DomainDescriptor& X) {
  if (x.size() != X.dim)
    throw std::invalid_argument("project_domain: dimension mismatch");
  switch (X.kind) {
    case DomainKind::WholeSpace:
      return x;
    case DomainKind::L1Ball:
      return project_l1_ball(x, X.radius);
    case DomainKind::L2Ball: {
      double n = x.norm();
      return n <= X.radius ? x : Vec((X.radius / n) * x);
    }
    case DomainKind::Simplex:
      return project_simplex(x);
    case DomainKind::NuclearBall: {
      Eigen::BDCSVD<Mat> svd(as_matrix(x, X.rows, X.cols),
                             Eigen::ComputeThinU | Eigen::ComputeThinV);
      Vec s = project_l1_ball(svd.singularValues(), X.radius);
      Mat out = svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
      return as_vector(out);
    }
    case DomainKind::Spectrahedron: {
      Mat m = as_matrix(x, X.rows, X.cols);
      Mat sym = 0.5 * (m + m.transpose());
      Eigen::SelfAdjointEigenSolver<Mat> es(sym);
      Vec d = project_simplex(es.eigenvalues());
      Mat out = es.eigenvectors() * d.asDiagonal() *
                es.eigenvectors().transpose();
      return as_vector(out);
    }
  }
  throw std::invalid_argument("project_domain: unknown domain kind");
}

Vec prox_h(const Vec& v, double tau, const ConstraintSetDescriptor& K) {
  if (tau <= 0) throw std::invalid_argument("prox_h: tau <= 0");
  switch (K.kind) {
    case ConstraintKind::ZeroPoint:
      return v;  // h = 0
    case ConstraintKind::L2Ball: {
      // block soft-threshold for h = kappa ||.||_2
      double nv = v.norm();
      double shrink = tau * K.radius;
      if (nv <= shrink) return Vec::Zero(v.size());
      return (1.0 - shrink / nv) * v;
    }
    case ConstraintKind::L1Ball:
      // Moreau: prox of kappa ||.||_inf through the l1-ball projection
      return v - project_l1_ball(v, tau * K.radius);
    case ConstraintKind::NonnegOrthant:
      return v.cwiseMin(0.0);  // projection onto the dual cone R^n_-
    case ConstraintKind::PsdCone: {
      Mat m = as_matrix(v, K.side, K.side);
      Mat sym = 0.5 * (m + m.transpose());
      Eigen::SelfAdjointEigenSolver<Mat> es(sym);
      Vec neg = es.eigenvalues().cwiseMin(0.0);
      Mat proj = es.eigenvectors() * neg.asDiagonal() *
                 es.eigenvectors().transpose();
      return as_vector(proj);
    }
  }
  return v;
}

double dist_to_K(const Vec& u, const ConstraintSetDescriptor& K) {
  switch (K.kind) {
    case ConstraintKind::ZeroPoint:
      return u.norm();
    case ConstraintKind::L2Ball:
      return std::max(u.norm() - K.radius, 0.0);
    case ConstraintKind::L1Ball:
      return (u - project_l1_ball(u, K.radius)).norm();
    case ConstraintKind::NonnegOrthant:
      return u.cwiseMin(0.0).norm();
    case ConstraintKind::PsdCone: {
      Mat m = as_matrix(u, K.side, K.side);
      Mat sym = 0.5 * (m + m.transpose());
      Eigen::SelfAdjointEigenSolver<Mat> es(sym);
      Vec neg = es.eigenvalues().cwiseMin(0.0);
      Mat part = es.eigenvectors() * neg.asDiagonal() *
                 es.eigenvectors().transpose();
      // distance from the (symmetrized) point; asymmetric inputs are not
      // expected here, residuals of psd problems are symmetric
      return (as_matrix(u, K.side, K.side) - (sym - part)).norm();
    }
  }
  return 0.0;
}

DualEval eval_dual(const Vec& lambda, const ProblemInstance& prob,
                   double spectral_tol) {
  if (lambda.size() != prob.n())
    throw std::invalid_argument("eval_dual: dual dimension mismatch");
  DualEval out;
  if (prob.slack_form()) {
    // Slack-eliminated dual of the quadratic cost:
    //   g(l) = 1/2||l||^2 - <l,b> + sigma_X(A^T l),  grad = l - b + A x*(l)
    Vec s = prob.map->adjoint_apply(lambda);
    SharpResult sr = sharp(s, prob.domain, ObjectiveDescriptor::zero(),
                           spectral_tol);
    out.g = 0.5 * lambda.squaredNorm() - lambda.dot(prob.b) + sr.support_value;
    out.grad = lambda - prob.b + prob.map->apply(sr.x_star);
    out.atom.resize(prob.primal_dim());
    out.atom.head(prob.domain.dim) = sr.x_star;
    out.atom.tail(prob.n()) = -lambda;
    return out;
  }
  Vec s = -prob.map->adjoint_apply(lambda);
  ObjectiveDescriptor f = prob.objective;
  if (f.kind == ObjectiveKind::SquaredNuclear && f.nuclear_scale <= 0)
    f.nuclear_scale = prob.nuclear_scale();
  SharpResult sr = sharp(s, prob.domain, f, spectral_tol);
  out.g = sr.support_value + lambda.dot(prob.b);
  out.grad = prob.b - prob.map->apply(sr.x_star);
  out.atom = sr.x_star;
  return out;
}

double eval_g(const Vec& lambda, const ProblemInstance& prob,
              double spectral_tol) {
  return eval_dual(lambda, prob, spectral_tol).g;
}

Vec grad_g(const Vec& lambda, const ProblemInstance& prob,
           double spectral_tol) {
  return eval_dual(lambda, prob, spectral_tol).grad;
}

}  // namespace unipd
