#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace unipd {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;
using Index = Eigen::Index;

/// Views a vectorized (column-major) matrix without copying.
inline Eigen::Map<const Mat> as_matrix(const Vec& v, Index rows, Index cols) {
  if (v.size() != rows * cols)
    throw std::invalid_argument("as_matrix: size mismatch");
  return Eigen::Map<const Mat>(v.data(), rows, cols);
}

inline Vec as_vector(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

/// Linear operator A : R^p -> R^n. Solvers and oracles touch A only through
/// this interface; concrete kinds may be matrix-free.
class LinearMap {
 public:
  virtual ~LinearMap() = default;

  virtual Index input_dim() const = 0;   // p
  virtual Index output_dim() const = 0;  // n
  virtual std::string kind() const = 0;

  /// y = A x
  virtual Vec apply(const Vec& x) const = 0;
  /// x = A^T y
  virtual Vec adjoint_apply(const Vec& y) const = 0;

 protected:
  void check_input(const Vec& x) const {
    if (x.size() != input_dim())
      throw std::invalid_argument("LinearMap::apply: expected dimension " +
                                  std::to_string(input_dim()) + ", got " +
                                  std::to_string(x.size()));
  }
  void check_output(const Vec& y) const {
    if (y.size() != output_dim())
      throw std::invalid_argument(
          "LinearMap::adjoint_apply: expected dimension " +
          std::to_string(output_dim()) + ", got " + std::to_string(y.size()));
  }
};

using LinearMapPtr = std::shared_ptr<const LinearMap>;

class DenseMap final : public LinearMap {
 public:
  explicit DenseMap(Mat a) : a_(std::move(a)) {}

  Index input_dim() const override { return a_.cols(); }
  Index output_dim() const override { return a_.rows(); }
  std::string kind() const override { return "dense"; }

  Vec apply(const Vec& x) const override {
    check_input(x);
    return a_ * x;
  }
  Vec adjoint_apply(const Vec& y) const override {
    check_output(y);
    return a_.transpose() * y;
  }

  const Mat& matrix() const { return a_; }

 private:
  Mat a_;
};

class SparseMap final : public LinearMap {
 public:
  explicit SparseMap(SpMat a) : a_(std::move(a)) { a_.makeCompressed(); }

  Index input_dim() const override { return a_.cols(); }
  Index output_dim() const override { return a_.rows(); }
  std::string kind() const override { return "sparse"; }

  Vec apply(const Vec& x) const override {
    check_input(x);
    return a_ * x;
  }
  Vec adjoint_apply(const Vec& y) const override {
    check_output(y);
    return a_.transpose() * y;
  }

  const SpMat& matrix() const { return a_; }

 private:
  SpMat a_;
};

/// Entry sampler: (A x)_j = x[indices[j]]. The adjoint scatters (zero-pads).
class SamplingMap final : public LinearMap {
 public:
  SamplingMap(Index input_dim, std::vector<Index> indices)
      : p_(input_dim), indices_(std::move(indices)) {
    for (Index i : indices_)
      if (i < 0 || i >= p_)
        throw std::invalid_argument("SamplingMap: index out of range");
  }

  Index input_dim() const override { return p_; }
  Index output_dim() const override {
    return static_cast<Index>(indices_.size());
  }
  std::string kind() const override { return "sampling"; }

  Vec apply(const Vec& x) const override {
    check_input(x);
    Vec y(output_dim());
    for (Index j = 0; j < y.size(); ++j) y[j] = x[indices_[j]];
    return y;
  }
  Vec adjoint_apply(const Vec& y) const override {
    check_output(y);
    Vec x = Vec::Zero(p_);
    for (Index j = 0; j < y.size(); ++j) x[indices_[j]] += y[j];
    return x;
  }

  const std::vector<Index>& indices() const { return indices_; }

 private:
  Index p_;
  std::vector<Index> indices_;
};

/// Measurement ensemble of random tensor products of the four 2x2 generators
/// (identity, flip, rotation, sign), one i.i.d. word per row, each row
/// normalized to unit Frobenius norm. Acts on vectorized p x p matrices with
/// p = 2^qubits. Every row is a signed permutation, so both directions cost
/// O(n p).
class TensorProductEnsembleMap final : public LinearMap {
 public:
  TensorProductEnsembleMap(int qubits, Index rows, std::uint64_t seed);

  Index input_dim() const override { return side_ * side_; }
  Index output_dim() const override { return static_cast<Index>(rows_.size()); }
  std::string kind() const override { return "tensor-ensemble"; }

  Vec apply(const Vec& x) const override;
  Vec adjoint_apply(const Vec& y) const override;

  /// <row_i, u v^T> for all i; equivalent to apply(vec(u v^T)).
  Vec apply_outer(const Vec& u, const Vec& v) const;

  int qubits() const { return qubits_; }
  Index side() const { return side_; }
  std::uint64_t seed() const { return seed_; }

 private:
  struct Row {
    std::uint32_t flip_mask;  // bits with generator in {flip, rotation}
    std::uint32_t neg_lo;     // rotation bits: negative when bit is 0
    std::uint32_t neg_hi;     // sign bits: negative when bit is 1
  };
  double sign_at(const Row& r, std::uint32_t idx) const;

  int qubits_;
  Index side_;
  std::uint64_t seed_;
  std::vector<Row> rows_;
  double norm_;  // 1/sqrt(p), unit Frobenius rows
};

/// scale * outer(inner(x)); a null inner means the identity.
class CompositionMap final : public LinearMap {
 public:
  CompositionMap(LinearMapPtr outer, LinearMapPtr inner, double scale = 1.0)
      : outer_(std::move(outer)), inner_(std::move(inner)), scale_(scale) {
    if (!outer_) throw std::invalid_argument("CompositionMap: null outer map");
    if (inner_ && inner_->output_dim() != outer_->input_dim())
      throw std::invalid_argument("CompositionMap: dimension mismatch");
  }

  Index input_dim() const override {
    return inner_ ? inner_->input_dim() : outer_->input_dim();
  }
  Index output_dim() const override { return outer_->output_dim(); }
  std::string kind() const override { return "composition"; }

  Vec apply(const Vec& x) const override {
    return scale_ * (inner_ ? outer_->apply(inner_->apply(x))
                            : outer_->apply(x));
  }
  Vec adjoint_apply(const Vec& y) const override {
    Vec t = outer_->adjoint_apply(y);
    return scale_ * (inner_ ? inner_->adjoint_apply(t) : t);
  }

  const LinearMapPtr& outer() const { return outer_; }
  const LinearMapPtr& inner() const { return inner_; }
  double scale() const { return scale_; }

 private:
  LinearMapPtr outer_;
  LinearMapPtr inner_;
  double scale_;
};

/// Applies A to the canonical basis. Desk-scale only.
Mat materialize(const LinearMap& map);

struct SpectralResult {
  double value = 0.0;  // top eigenvalue / top singular value
  Vec left_vector;
  Vec right_vector;  // equals left_vector in the symmetric case
  int iterations = 0;
  double residual = 0.0;
  // Rayleigh-quotient track of the final (possibly restarted) sweep;
  // non-decreasing because the internal iteration runs on a PSD operator.
  std::vector<double> value_history;
};

struct PowerOptions {
  double tol = 1e-5;
  int max_iter = 0;  // 0: use 10*dim + 500
  std::uint64_t seed = 0;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, SpectralResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const SpectralResult& best() const { return best_; }

 private:
  SpectralResult best_;
};

using SymApply = std::function<Vec(const Vec&)>;

/// Power method for the maximum (signed) eigenvalue of a symmetric operator.
/// Internally iterates on the spectral-radius-shifted operator so the
/// Rayleigh quotient ascends monotonically. Deterministic given seed; on
/// stagnation the start vector is reseeded deterministically, and clustered
/// top eigenvalues are finished with a small block iteration under the same
/// residual contract. Terminates when ||S v - value v|| <= tol * max(|value|, 1).
SpectralResult power_method(const SymApply& op, Index dim,
                            const PowerOptions& opts = {});

SpectralResult power_method(const Mat& symmetric, const PowerOptions& opts = {});

/// Rectangular operator exposed through forward/transpose matvecs.
struct MatVecPair {
  Index rows = 0;
  Index cols = 0;
  std::function<Vec(const Vec&)> forward;    // M v,   v in R^cols
  std::function<Vec(const Vec&)> transpose;  // M^T u, u in R^rows
};

/// Top singular triplet (sigma1, u1, v1) by power iteration on the Gram
/// operator of the smaller side. residual = ||M^T u1 - sigma1 v1||
/// (||M v1 - sigma1 u1|| vanishes by construction of u1).
SpectralResult top_singular_triplet(const MatVecPair& m,
                                    const PowerOptions& opts = {});

SpectralResult top_singular_triplet(const Mat& m, const PowerOptions& opts = {});

/// Spectral norm ||A|| of a LinearMap via the top singular triplet.
double operator_norm(const LinearMap& map, double tol = 1e-8,
                     std::uint64_t seed = 0);

}  // namespace unipd
