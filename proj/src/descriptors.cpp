#include "unipd/descriptors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace unipd {

DomainDescriptor DomainDescriptor::whole_space(Index dim, Index rows,
                                               Index cols) {
  if (dim < 1) throw std::invalid_argument("whole_space: dim < 1");
  if (rows * cols != 0 && rows * cols != dim)
    throw std::invalid_argument("whole_space: shape does not match dim");
  return {DomainKind::WholeSpace, dim, 0.0, rows, cols};
}

DomainDescriptor DomainDescriptor::l1_ball(Index dim, double radius) {
  if (dim < 1 || radius <= 0) throw std::invalid_argument("l1_ball: bad args");
  return {DomainKind::L1Ball, dim, radius, 0, 0};
}

DomainDescriptor DomainDescriptor::l2_ball(Index dim, double radius) {
  if (dim < 1 || radius <= 0) throw std::invalid_argument("l2_ball: bad args");
  return {DomainKind::L2Ball, dim, radius, 0, 0};
}

DomainDescriptor DomainDescriptor::nuclear_ball(Index rows, Index cols,
                                                double radius) {
  if (rows < 1 || cols < 1 || radius <= 0)
    throw std::invalid_argument("nuclear_ball: bad args");
  return {DomainKind::NuclearBall, rows * cols, radius, rows, cols};
}

DomainDescriptor DomainDescriptor::spectrahedron(Index side) {
  if (side < 1) throw std::invalid_argument("spectrahedron: side < 1");
  return {DomainKind::Spectrahedron, side * side, 0.0, side, side};
}

DomainDescriptor DomainDescriptor::simplex(Index dim) {
  if (dim < 1) throw std::invalid_argument("simplex: dim < 1");
  return {DomainKind::Simplex, dim, 0.0, 0, 0};
}

bool DomainDescriptor::contains(const Vec& x, double tol) const {
  if (x.size() != dim) return false;
  switch (kind) {
    case DomainKind::WholeSpace:
      return true;
    case DomainKind::L1Ball:
      return x.lpNorm<1>() <= radius + tol * std::max(1.0, radius);
    case DomainKind::L2Ball:
      return x.norm() <= radius + tol * std::max(1.0, radius);
    case DomainKind::NuclearBall: {
      Eigen::BDCSVD<Mat> svd(as_matrix(x, rows, cols));
      return svd.singularValues().sum() <= radius + tol * std::max(1.0, radius);
    }
    case DomainKind::Spectrahedron: {
      Mat m = as_matrix(x, rows, cols);
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol) return false;
      if (std::abs(m.trace() - 1.0) > tol) return false;
      Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
      return es.eigenvalues().minCoeff() >= -tol;
    }
    case DomainKind::Simplex:
      return x.minCoeff() >= -tol && std::abs(x.sum() - 1.0) <= tol;
  }
  return false;
}

const char* DomainDescriptor::name() const {
  switch (kind) {
    case DomainKind::WholeSpace: return "whole-space";
    case DomainKind::L1Ball: return "l1-ball";
    case DomainKind::L2Ball: return "l2-ball";
    case DomainKind::NuclearBall: return "nuclear-ball";
    case DomainKind::Spectrahedron: return "spectrahedron";
    case DomainKind::Simplex: return "simplex";
  }
  return "?";
}

ObjectiveDescriptor ObjectiveDescriptor::zero() { return {}; }

ObjectiveDescriptor ObjectiveDescriptor::quadratic_slack() {
  ObjectiveDescriptor f;
  f.kind = ObjectiveKind::QuadraticSlack;
  return f;
}

ObjectiveDescriptor ObjectiveDescriptor::squared_nuclear(double n_scale) {
  ObjectiveDescriptor f;
  f.kind = ObjectiveKind::SquaredNuclear;
  f.nuclear_scale = n_scale;
  return f;
}

ObjectiveDescriptor ObjectiveDescriptor::separable_quadratic(Vec center) {
  ObjectiveDescriptor f;
  f.kind = ObjectiveKind::SeparableQuadratic;
  f.center = std::move(center);
  return f;
}

const char* ObjectiveDescriptor::name() const {
  switch (kind) {
    case ObjectiveKind::Zero: return "zero";
    case ObjectiveKind::QuadraticSlack: return "quadratic-slack";
    case ObjectiveKind::SquaredNuclear: return "squared-nuclear";
    case ObjectiveKind::SeparableQuadratic: return "separable-quadratic";
  }
  return "?";
}

ConstraintSetDescriptor ConstraintSetDescriptor::zero_point() { return {}; }

ConstraintSetDescriptor ConstraintSetDescriptor::l2_ball(double radius) {
  if (radius < 0) throw std::invalid_argument("constraint l2_ball: radius < 0");
  return {ConstraintKind::L2Ball, radius, 0};
}

ConstraintSetDescriptor ConstraintSetDescriptor::l1_ball(double radius) {
  if (radius < 0) throw std::invalid_argument("constraint l1_ball: radius < 0");
  return {ConstraintKind::L1Ball, radius, 0};
}

ConstraintSetDescriptor ConstraintSetDescriptor::nonneg_orthant() {
  return {ConstraintKind::NonnegOrthant, 0.0, 0};
}

ConstraintSetDescriptor ConstraintSetDescriptor::psd_cone(Index side) {
  if (side < 1) throw std::invalid_argument("psd_cone: side < 1");
  return {ConstraintKind::PsdCone, 0.0, side};
}

bool ConstraintSetDescriptor::contains(const Vec& u, double tol) const {
  switch (kind) {
    case ConstraintKind::ZeroPoint:
      return u.norm() <= tol;
    case ConstraintKind::L2Ball:
      return u.norm() <= radius + tol * std::max(1.0, radius);
    case ConstraintKind::L1Ball:
      return u.lpNorm<1>() <= radius + tol * std::max(1.0, radius);
    case ConstraintKind::NonnegOrthant:
      return u.minCoeff() >= -tol;
    case ConstraintKind::PsdCone: {
      Mat m = as_matrix(u, side, side);
      Mat sym = 0.5 * (m + m.transpose());
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol) return false;
      Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
      return es.eigenvalues().minCoeff() >= -tol;
    }
  }
  return false;
}

const char* ConstraintSetDescriptor::name() const {
  switch (kind) {
    case ConstraintKind::ZeroPoint: return "zero-point";
    case ConstraintKind::L2Ball: return "l2-ball";
    case ConstraintKind::L1Ball: return "l1-ball";
    case ConstraintKind::NonnegOrthant: return "nonnegative-orthant";
    case ConstraintKind::PsdCone: return "psd-cone";
  }
  return "?";
}

}  // namespace unipd
