#include "unipd/linop.hpp"

#include <bit>
#include <cmath>
#include <random>

namespace unipd {

namespace {

Vec seeded_unit_vector(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = normal(rng);
  double n = v.norm();
  if (n == 0.0) {
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / n;
}

// Largest-magnitude coordinate made positive; first index wins ties.
void fix_sign(Vec& v, double* companion_flip = nullptr) {
  Index best = 0;
  double best_abs = 0.0;
  for (Index i = 0; i < v.size(); ++i) {
    double a = std::abs(v[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (v.size() > 0 && v[best] < 0.0) {
    v = -v;
    if (companion_flip) *companion_flip = -1.0;
  }
}

}  // namespace

TensorProductEnsembleMap::TensorProductEnsembleMap(int qubits, Index rows,
                                                   std::uint64_t seed)
    : qubits_(qubits), seed_(seed) {
  if (qubits < 1 || qubits > 30)
    throw std::invalid_argument("TensorProductEnsembleMap: bad qubit count");
  if (rows < 1)
    throw std::invalid_argument("TensorProductEnsembleMap: need >= 1 row");
  side_ = Index(1) << qubits;
  norm_ = 1.0 / std::sqrt(double(side_));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 3);
  rows_.reserve(size_t(rows));
  for (Index r = 0; r < rows; ++r) {
    Row row{0, 0, 0};
    for (int q = 0; q < qubits; ++q) {
      // generators: 0 identity, 1 flip [[0,1],[1,0]],
      // 2 rotation [[0,-1],[1,0]], 3 sign [[1,0],[0,-1]]
      int g = pick(rng);
      std::uint32_t bit = 1u << q;
      if (g == 1 || g == 2) row.flip_mask |= bit;
      if (g == 2) row.neg_lo |= bit;  // entry (0,1) = -1
      if (g == 3) row.neg_hi |= bit;  // entry (1,1) = -1
    }
    rows_.push_back(row);
  }
}

double TensorProductEnsembleMap::sign_at(const Row& r, std::uint32_t idx) const {
  std::uint32_t neg = (~idx & r.neg_lo) | (idx & r.neg_hi);
  return (std::popcount(neg) & 1u) ? -1.0 : 1.0;
}

Vec TensorProductEnsembleMap::apply(const Vec& x) const {
  check_input(x);
  const Index p = side_;
  Vec y(output_dim());
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Row& row = rows_[i];
    double acc = 0.0;
    for (Index r = 0; r < p; ++r) {
      std::uint32_t rr = std::uint32_t(r);
      Index c = Index(rr ^ row.flip_mask);
      acc += sign_at(row, rr) * x[c * p + r];  // <P_i, X> = sum_r P[r,c] X[r,c]
    }
    y[Index(i)] = acc * norm_;
  }
  return y;
}

Vec TensorProductEnsembleMap::apply_outer(const Vec& u, const Vec& v) const {
  if (u.size() != side_ || v.size() != side_)
    throw std::invalid_argument("apply_outer: vector size mismatch");
  const Index p = side_;
  Vec y(output_dim());
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Row& row = rows_[i];
    double acc = 0.0;
    for (Index r = 0; r < p; ++r) {
      std::uint32_t rr = std::uint32_t(r);
      Index c = Index(rr ^ row.flip_mask);
      acc += sign_at(row, rr) * u[r] * v[c];
    }
    y[Index(i)] = acc * norm_;
  }
  return y;
}

Vec TensorProductEnsembleMap::adjoint_apply(const Vec& y) const {
  check_output(y);
  const Index p = side_;
  Vec x = Vec::Zero(input_dim());
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Row& row = rows_[i];
    double w = y[Index(i)] * norm_;
    if (w == 0.0) continue;
    for (Index r = 0; r < p; ++r) {
      std::uint32_t rr = std::uint32_t(r);
      Index c = Index(rr ^ row.flip_mask);
      x[c * p + r] += sign_at(row, rr) * w;
    }
  }
  return x;
}

namespace {

Mat seeded_orthonormal_block(Index dim, Index block, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat v(dim, block);
  for (Index j = 0; j < block; ++j)
    for (Index i = 0; i < dim; ++i) v(i, j) = normal(rng);
  return Eigen::HouseholderQR<Mat>(v).householderQ() * Mat::Identity(dim, block);
}

// Orthogonal (block power) iteration on a PSD operator; resolves clustered
// tops at the rate of the first gap outside the block. The leading Ritz
// value track is monotone non-decreasing. `accept` sees each Ritz pair and
// ends the sweep loop by returning true.
struct SubspaceResult {
  double theta = 0.0;
  Vec vector;
  int sweeps = 0;
  bool converged = false;
  std::vector<double> history;
};

SubspaceResult subspace_top(
    const std::function<Mat(const Mat&)>& psd_apply, Index dim, Index block,
    int max_sweeps, const std::function<bool(double, const Vec&)>& accept,
    std::uint64_t seed) {
  block = std::min(block, dim);
  Mat v = seeded_orthonormal_block(dim, block, seed);
  SubspaceResult out;
  out.vector = v.col(0);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    Mat w = psd_apply(v);
    Mat small = v.transpose() * w;  // symmetric q x q Rayleigh quotient
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (small + small.transpose()));
    Index top = block - 1;  // ascending order
    out.theta = es.eigenvalues()[top];
    out.vector = v * es.eigenvectors().col(top);
    out.sweeps = sweep + 1;
    out.history.push_back(out.theta);
    if (accept(out.theta, out.vector)) {
      out.converged = true;
      return out;
    }
    v = Eigen::HouseholderQR<Mat>(w).householderQ() * Mat::Identity(dim, block);
  }
  return out;
}

}  // namespace

Mat materialize(const LinearMap& map) {
  Mat a(map.output_dim(), map.input_dim());
  Vec e = Vec::Zero(map.input_dim());
  for (Index j = 0; j < map.input_dim(); ++j) {
    e[j] = 1.0;
    a.col(j) = map.apply(e);
    e[j] = 0.0;
  }
  return a;
}

SpectralResult power_method(const SymApply& op, Index dim,
                            const PowerOptions& opts) {
  if (dim < 1) throw std::invalid_argument("power_method: dim < 1");
  if (opts.tol <= 0) throw std::invalid_argument("power_method: tol <= 0");
  const int max_iter = opts.max_iter > 0 ? opts.max_iter
                                         : int(10 * dim + 500);

  const int single_budget = (3 * max_iter) / 4;
  int total_iters = 0;
  SpectralResult best;
  best.residual = std::numeric_limits<double>::infinity();
  double rho_seen = 0.0;

  for (int restart = 0; restart < 2; ++restart) {
    Vec v = seeded_unit_vector(dim, opts.seed + 0x9e3779b97f4a7c15ULL *
                                        std::uint64_t(restart));
    // Pass A: plain sweeps for a spectral radius estimate. ||Sv|| <= rho
    // for unit v, so the running max only underestimates.
    double rho = 0.0;
    {
      Vec w = op(v);
      while (total_iters < single_budget) {
        ++total_iters;
        double nw = w.norm();
        if (nw <= 1e-300) break;
        rho = std::max(rho, nw);
        v = w / nw;
        w = op(v);
        double mu = v.dot(w);
        rho = std::max(rho, std::abs(mu));
        double resid = (w - mu * v).norm();
        if (resid < best.residual) {
          best.value = mu;
          best.left_vector = v;
          best.right_vector = v;
          best.iterations = total_iters;
          best.residual = resid;
        }
        if (resid <= 0.02 * std::max(std::abs(mu), 1.0)) break;
        if (total_iters >= 80 * (restart + 1)) break;
      }
    }
    if (rho <= 1e-300) {
      // Operator vanishes on the probe direction: value 0 satisfies the
      // residual criterion unless a restart finds otherwise.
      SpectralResult res;
      res.value = 0.0;
      res.left_vector = v;
      res.right_vector = v;
      res.iterations = total_iters;
      res.residual = 0.0;
      res.value_history = {0.0};
      if (restart < 1) continue;  // one retry before accepting zero
      return res;
    }
    // Pass B: monotone Rayleigh ascent on the PSD-shifted operator.
    rho_seen = std::max(rho_seen, rho);
    const double shift = 1.25 * rho + 1e-9;

    SpectralResult res;
    double window_residual = std::numeric_limits<double>::infinity();
    int window_count = 0;
    bool restart_requested = false;
    while (total_iters < single_budget) {
      ++total_iters;
      Vec w = op(v) + shift * v;
      double theta = v.dot(w);
      double lambda = theta - shift;
      double resid = (w - theta * v).norm();
      res.value = lambda;
      res.left_vector = v;
      res.right_vector = v;
      res.iterations = total_iters;
      res.residual = resid;
      res.value_history.push_back(lambda);
      if (resid <= opts.tol * std::max(std::abs(lambda), 1.0)) {
        fix_sign(res.left_vector);
        res.right_vector = res.left_vector;
        return res;
      }
      // The residual contracts geometrically unless the start vector was
      // orthogonal to the dominant eigenspace; a flat window means restart.
      if (++window_count >= 60) {
        if (resid > 0.999 * window_residual) {
          restart_requested = true;
          break;
        }
        window_residual = resid;
        window_count = 0;
      }
      double nw = w.norm();
      if (nw <= 1e-300) break;
      v = w / nw;
    }
    if (!res.value_history.empty() && res.residual < best.residual) best = res;
    if (!restart_requested && total_iters >= single_budget) break;
  }
  // Clustered tops defeat the single-vector iteration; a small block
  // iteration resolves them at the gap below the block.
  {
    double rho = std::max({rho_seen, std::abs(best.value) + best.residual,
                           1e-12});
    const double shift = 1.25 * rho + 1e-9;
    auto psd_apply = [&](const Mat& blk) {
      Mat w(blk.rows(), blk.cols());
      for (Index j = 0; j < blk.cols(); ++j)
        w.col(j) = op(blk.col(j)) + shift * blk.col(j);
      return w;
    };
    SpectralResult res;
    auto accept = [&](double theta, const Vec& v) {
      double lambda = theta - shift;
      double resid = (op(v) - lambda * v).norm();
      res.value = lambda;
      res.left_vector = v;
      res.right_vector = v;
      res.residual = resid;
      res.value_history.push_back(lambda);
      return resid <= opts.tol * std::max(std::abs(lambda), 1.0);
    };
    const Index block = 4;
    int sweeps = std::max(30, (max_iter - total_iters) / int(block));
    SubspaceResult sub = subspace_top(psd_apply, dim, block, sweeps, accept,
                                      opts.seed ^ 0xb10cULL);
    res.iterations = total_iters + sub.sweeps * int(block);
    if (sub.converged) {
      fix_sign(res.left_vector);
      res.right_vector = res.left_vector;
      return res;
    }
    if (!res.value_history.empty() && res.residual < best.residual) best = res;
  }
  fix_sign(best.left_vector);
  best.right_vector = best.left_vector;
  throw ConvergenceError("power_method: no convergence within max_iter", best);
}

SpectralResult power_method(const Mat& symmetric, const PowerOptions& opts) {
  if (symmetric.rows() != symmetric.cols())
    throw std::invalid_argument("power_method: matrix not square");
  return power_method([&](const Vec& v) { return Vec(symmetric * v); },
                      symmetric.rows(), opts);
}

SpectralResult top_singular_triplet(const MatVecPair& m,
                                    const PowerOptions& opts) {
  if (m.rows < 1 || m.cols < 1)
    throw std::invalid_argument("top_singular_triplet: empty matrix");
  if (opts.tol <= 0)
    throw std::invalid_argument("top_singular_triplet: tol <= 0");
  // Iterate on the Gram operator of the smaller side.
  const bool by_cols = m.cols <= m.rows;
  const Index small_dim = by_cols ? m.cols : m.rows;
  const auto& fwd = by_cols ? m.forward : m.transpose;   // small -> big
  const auto& bwd = by_cols ? m.transpose : m.forward;   // big -> small
  const int max_iter = opts.max_iter > 0 ? opts.max_iter
                                         : int(10 * small_dim + 500);

  const int single_budget = (3 * max_iter) / 4;
  SpectralResult best;
  best.residual = std::numeric_limits<double>::infinity();
  int total_iters = 0;
  for (int restart = 0; restart < 2; ++restart) {
    Vec v = seeded_unit_vector(small_dim, opts.seed + 0x9e3779b97f4a7c15ULL *
                                              std::uint64_t(restart));
    SpectralResult res;
    double window_residual = std::numeric_limits<double>::infinity();
    int window_count = 0;
    bool restart_requested = false;
    while (total_iters < single_budget) {
      ++total_iters;
      Vec w = fwd(v);
      double sigma = w.norm();
      if (sigma <= 1e-300) {
        res.value = 0.0;
        res.left_vector = Vec::Unit(m.rows, 0);
        res.right_vector = Vec::Unit(m.cols, 0);
        res.iterations = total_iters;
        res.residual = 0.0;
        res.value_history.push_back(0.0);
        if (restart < 1) {
          restart_requested = true;
          break;
        }
        return res;
      }
      Vec u = w / sigma;
      Vec z = bwd(u);  // = Gram(v)/sigma
      double resid = (z - sigma * v).norm();
      res.value = sigma;
      res.left_vector = by_cols ? u : v;
      res.right_vector = by_cols ? v : u;
      res.iterations = total_iters;
      res.residual = resid;
      res.value_history.push_back(sigma);
      if (resid <= opts.tol * std::max(sigma, 1.0)) {
        double flip = 1.0;
        fix_sign(res.right_vector, &flip);
        res.left_vector *= flip;
        return res;
      }
      if (++window_count >= 60) {
        if (resid > 0.999 * window_residual) {
          restart_requested = true;
          break;
        }
        window_residual = resid;
        window_count = 0;
      }
      double nz = z.norm();
      if (nz <= 1e-300) break;
      v = z / nz;
    }
    if (!res.value_history.empty() && res.residual < best.residual) best = res;
    if (!restart_requested && total_iters >= single_budget) break;
  }
  // Block fallback for clustered top singular values.
  {
    auto psd_apply = [&](const Mat& blk) {  // Gram operator, small side
      Mat z(blk.rows(), blk.cols());
      for (Index j = 0; j < blk.cols(); ++j) z.col(j) = bwd(fwd(blk.col(j)));
      return z;
    };
    SpectralResult res;
    auto accept = [&](double theta, const Vec& v) {
      (void)theta;
      Vec w = fwd(v);
      double sigma = w.norm();
      res.value = sigma;
      res.value_history.push_back(sigma);
      if (sigma <= 1e-300) {
        res.left_vector = Vec::Unit(m.rows, 0);
        res.right_vector = Vec::Unit(m.cols, 0);
        res.residual = 0.0;
        return true;
      }
      Vec u = w / sigma;
      double resid = (bwd(u) - sigma * v).norm();
      res.left_vector = by_cols ? u : v;
      res.right_vector = by_cols ? v : u;
      res.residual = resid;
      return resid <= opts.tol * std::max(sigma, 1.0);
    };
    const Index block = 4;
    int sweeps = std::max(30, (max_iter - total_iters) / int(block));
    SubspaceResult sub = subspace_top(psd_apply, small_dim, block, sweeps,
                                      accept, opts.seed ^ 0xb10cULL);
    res.iterations = total_iters + sub.sweeps * int(block);
    if (sub.converged) {
      double flip = 1.0;
      fix_sign(res.right_vector, &flip);
      res.left_vector *= flip;
      return res;
    }
    if (!res.value_history.empty() && res.residual < best.residual) best = res;
  }
  throw ConvergenceError("top_singular_triplet: no convergence within max_iter",
                         best);
}

SpectralResult top_singular_triplet(const Mat& m, const PowerOptions& opts) {
  MatVecPair pair;
  pair.rows = m.rows();
  pair.cols = m.cols();
  pair.forward = [&m](const Vec& v) { return Vec(m * v); };
  pair.transpose = [&m](const Vec& u) { return Vec(m.transpose() * u); };
  return top_singular_triplet(pair, opts);
}

double operator_norm(const LinearMap& map, double tol, std::uint64_t seed) {
  MatVecPair pair;
  pair.rows = map.output_dim();
  pair.cols = map.input_dim();
  pair.forward = [&map](const Vec& v) { return map.apply(v); };
  pair.transpose = [&map](const Vec& u) { return map.adjoint_apply(u); };
  PowerOptions opts;
  opts.tol = tol;
  opts.max_iter = 200000;
  opts.seed = seed;
  return top_singular_triplet(pair, opts).value;
}

}  // namespace unipd
