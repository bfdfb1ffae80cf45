#include "unipd/problem.hpp"

#include "unipd/oracles.hpp"

#include <Eigen/SVD>

namespace unipd {

double ProblemInstance::objective_value(const Vec& z) const {
  if (z.size() != primal_dim())
    throw std::invalid_argument("objective_value: dimension mismatch");
  switch (objective.kind) {
    case ObjectiveKind::Zero:
      return 0.0;
    case ObjectiveKind::QuadraticSlack:
      return 0.5 * z.tail(n()).squaredNorm();
    case ObjectiveKind::SquaredNuclear: {
      Eigen::BDCSVD<Mat> svd(as_matrix(z, domain.rows, domain.cols));
      double nn = svd.singularValues().sum();
      return nn * nn / nuclear_scale();
    }
    case ObjectiveKind::SeparableQuadratic:
      return 0.5 * (z - objective.center).squaredNorm();
  }
  return 0.0;
}

Vec ProblemInstance::residual(const Vec& z) const {
  if (z.size() != primal_dim())
    throw std::invalid_argument("residual: dimension mismatch");
  if (slack_form())
    return map->apply(z.head(domain.dim)) - z.tail(n()) - b;
  return map->apply(z) - b;
}

double ProblemInstance::feasibility_gap(const Vec& z) const {
  return dist_to_K(residual(z), constraint);
}

bool ProblemInstance::domain_member(const Vec& z, double tol) const {
  if (z.size() != primal_dim()) return false;
  return domain.contains(z.head(domain.dim), tol);  // slack block is free
}

void ProblemInstance::validate() const {
  if (!map) throw std::invalid_argument("problem: null operator");
  if (map->input_dim() != domain.dim)
    throw std::invalid_argument("problem: operator/domain dimension mismatch");
  if (map->output_dim() != b.size())
    throw std::invalid_argument("problem: operator/offset dimension mismatch");
  switch (objective.kind) {
    case ObjectiveKind::Zero:
      break;
    case ObjectiveKind::QuadraticSlack:
      if (constraint.kind != ConstraintKind::ZeroPoint)
        throw std::invalid_argument(
            "problem: quadratic-slack requires the zero-point constraint");
      break;
    case ObjectiveKind::SquaredNuclear:
      if (domain.kind != DomainKind::WholeSpace || domain.rows * domain.cols == 0)
        throw std::invalid_argument(
            "problem: squared-nuclear needs a whole-space matrix domain");
      break;
    case ObjectiveKind::SeparableQuadratic:
      if (objective.center.size() != domain.dim)
        throw std::invalid_argument(
            "problem: separable-quadratic center dimension mismatch");
      break;
  }
  if (constraint.kind == ConstraintKind::PsdCone &&
      constraint.side * constraint.side != b.size())
    throw std::invalid_argument("problem: psd-cone side does not match b");
}

ProblemInstance make_problem(ObjectiveDescriptor objective, LinearMapPtr map,
                             Vec b, DomainDescriptor domain,
                             ConstraintSetDescriptor constraint) {
  ProblemInstance p{std::move(objective), std::move(map), std::move(b),
                    std::move(domain), std::move(constraint)};
  p.validate();
  return p;
}

}  // namespace unipd
