#pragma once

#include "unipd/descriptors.hpp"

namespace unipd {

/// Full description of  min f(x)  s.t.  A x - b in K,  x in X.
///
/// `map`, `domain` and `objective` describe the x-block. Quadratic-slack
/// problems carry an implicit slack variable r with f = 1/2 ||r||^2 and the
/// equality A x - r = b; their primal points are the concatenation [x; r]
/// and K is forced to {0}.
struct ProblemInstance {
  ObjectiveDescriptor objective;
  LinearMapPtr map;
  Vec b;
  DomainDescriptor domain;
  ConstraintSetDescriptor constraint;

  bool slack_form() const {
    return objective.kind == ObjectiveKind::QuadraticSlack;
  }
  Index n() const { return b.size(); }
  Index primal_dim() const { return domain.dim + (slack_form() ? n() : 0); }

  /// n used by the squared-nuclear objective (1/n)||X||_*^2.
  double nuclear_scale() const {
    return objective.nuclear_scale > 0 ? objective.nuclear_scale
                                       : double(n());
  }

  double objective_value(const Vec& z) const;
  /// A x - b, or A x - r - b in slack form.
  Vec residual(const Vec& z) const;
  double feasibility_gap(const Vec& z) const;
  bool domain_member(const Vec& z, double tol = 1e-9) const;

  void validate() const;
};

ProblemInstance make_problem(ObjectiveDescriptor objective, LinearMapPtr map,
                             Vec b, DomainDescriptor domain,
                             ConstraintSetDescriptor constraint);

}  // namespace unipd
