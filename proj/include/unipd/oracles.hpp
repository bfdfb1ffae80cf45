#pragma once

#include "unipd/problem.hpp"

namespace unipd {

class UnsupportedOracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SharpResult {
  Vec x_star;
  double support_value = 0.0;  // max_{x in X} <s, x> - f(x)
};

/// Fenchel-type sharp-operator: maximizer of <s, x> - f(x) over X.
///
/// Supported pairings:
///   (whole-space, separable-quadratic): x* = c + s
///   (whole-space, squared-nuclear):     x* = (n/2) sigma1 u1 v1^T
///   (spectrahedron, zero):              x* = v1 v1^T, top eigenvector of s
///   (l1-ball, zero), (l2-ball, zero), (nuclear-ball, zero), (simplex, zero)
///   (X, quadratic-slack): s = [s_x; s_r], x-block via (X, zero), r* = s_r
/// For zero objectives on balls with s = 0: returns the zero vector when
/// 0 in X, otherwise the first extreme point.
SharpResult sharp(const Vec& s, const DomainDescriptor& X,
                  const ObjectiveDescriptor& f, double spectral_tol = 1e-5);

/// Support function of K: h(lambda) = max_{r in K} <lambda, r>.
/// Cone kinds return +inf outside the dual cone.
double eval_h(const Vec& lambda, const ConstraintSetDescriptor& K);

/// prox_{tau h}(v) = argmin_lambda h(lambda) + 1/(2 tau) ||lambda - v||^2.
Vec prox_h(const Vec& v, double tau, const ConstraintSetDescriptor& K);

/// Euclidean distance from u to K.
double dist_to_K(const Vec& u, const ConstraintSetDescriptor& K);

/// Euclidean projection onto the l1 ball of the given radius
/// (sort-and-threshold).
Vec project_l1_ball(const Vec& v, double radius);

/// Euclidean projection onto the unit simplex.
Vec project_simplex(const Vec& v);

/// Euclidean projection onto X. Matrix kinds project the spectrum:
/// nuclear ball via singular values onto the l1 ball, spectrahedron via
/// eigenvalues onto the simplex.
Vec project_domain(const Vec& x, const DomainDescriptor& X);

/// One dual-oracle evaluation: g(lambda), its (sub)gradient, and the primal
/// maximizer behind it.
///
/// General template:      g(l) = max_x {<l, b - Ax> - f(x)},
///                        grad = b - A x*(l),  x*(l) = sharp(-A^T l, X, f).
/// Quadratic-slack (slack-eliminated dual):
///                        g(l) = 1/2||l||^2 - <l, b> + max_x <A^T l, x>,
///                        grad = l - b + A x*(l),  atom = [x*(l); -l].
struct DualEval {
  double g = 0.0;
  Vec grad;
  Vec atom;  // primal point in problem coordinates ([x; r] in slack form)
};

DualEval eval_dual(const Vec& lambda, const ProblemInstance& prob,
                   double spectral_tol = 1e-5);

double eval_g(const Vec& lambda, const ProblemInstance& prob,
              double spectral_tol = 1e-5);

Vec grad_g(const Vec& lambda, const ProblemInstance& prob,
           double spectral_tol = 1e-5);

}  // namespace unipd
