#pragma once

#include "unipd/linop.hpp"

namespace unipd {

enum class DomainKind {
  WholeSpace,
  L1Ball,
  L2Ball,
  NuclearBall,
  Spectrahedron,
  Simplex,
};

/// Domain X of the primal variable. Matrix kinds (nuclear ball,
/// spectrahedron) act on column-major vectorized matrices; `dim` is always
/// the ambient vector dimension.
struct DomainDescriptor {
  DomainKind kind = DomainKind::WholeSpace;
  Index dim = 0;
  double radius = 0.0;   // ball kinds
  Index rows = 0;        // matrix kinds (spectrahedron: rows == cols)
  Index cols = 0;

  static DomainDescriptor whole_space(Index dim, Index rows = 0,
                                      Index cols = 0);
  static DomainDescriptor l1_ball(Index dim, double radius);
  static DomainDescriptor l2_ball(Index dim, double radius);
  static DomainDescriptor nuclear_ball(Index rows, Index cols, double radius);
  static DomainDescriptor spectrahedron(Index side);
  static DomainDescriptor simplex(Index dim);

  bool contains(const Vec& x, double tol = 1e-9) const;
  const char* name() const;
};

enum class ObjectiveKind {
  Zero,
  QuadraticSlack,      // f(r) = 1/2 ||r||^2 on the slack block of Ax - r = b
  SquaredNuclear,      // f(X) = (1/n) ||X||_*^2
  SeparableQuadratic,  // f(x) = 1/2 ||x - c||^2
};

struct ObjectiveDescriptor {
  ObjectiveKind kind = ObjectiveKind::Zero;
  Vec center;               // separable-quadratic
  double nuclear_scale = 0; // n in (1/n)||X||_*^2; 0: use map output dim

  static ObjectiveDescriptor zero();
  static ObjectiveDescriptor quadratic_slack();
  static ObjectiveDescriptor squared_nuclear(double n_scale = 0);
  static ObjectiveDescriptor separable_quadratic(Vec center);

  const char* name() const;
};

enum class ConstraintKind {
  ZeroPoint,
  L2Ball,
  L1Ball,
  NonnegOrthant,
  PsdCone,
};

/// Constraint set K of the residual Ax - b.
struct ConstraintSetDescriptor {
  ConstraintKind kind = ConstraintKind::ZeroPoint;
  double radius = 0.0;  // ball kinds
  Index side = 0;       // psd cone: matrix side

  static ConstraintSetDescriptor zero_point();
  static ConstraintSetDescriptor l2_ball(double radius);
  static ConstraintSetDescriptor l1_ball(double radius);
  static ConstraintSetDescriptor nonneg_orthant();
  static ConstraintSetDescriptor psd_cone(Index side);

  bool contains(const Vec& u, double tol = 1e-9) const;
  const char* name() const;
};

}  // namespace unipd
