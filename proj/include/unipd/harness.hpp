#pragma once

#include "unipd/solvers.hpp"

#include <string>

namespace unipd {

/// Synthetic tomography-style instance: a rank-1 trace-1 PSD ground truth
/// observed through a tensor-product measurement ensemble.
struct QtInstance {
  int qubits = 0;
  Index side = 0;  // p = 2^qubits
  Index n = 0;     // measurement count
  std::uint64_t seed = 0;
  Vec ground_truth;  // vec(v v^T), p x p
  std::shared_ptr<const TensorProductEnsembleMap> ensemble;
  Vec b;

  /// min 1/2 ||A(X) - b||^2 over the spectrahedron, in slack form.
  ProblemInstance to_problem() const;
};

/// q in [1, 8]; measurements defaults to floor(2 p log p), natural log.
QtInstance gen_qt(int qubits, std::uint64_t seed, Index measurements = 0);

struct RatedEntry {
  Index row = 0;
  Index col = 0;
  double value = 0.0;
};

enum class McFormulation { BallConstrained, ParameterFree };

/// Matrix-completion-style instance over observed entries of a p x l matrix.
struct McInstance {
  Index rows = 0;
  Index cols = 0;
  Index rank = 0;
  std::uint64_t seed = 0;
  std::vector<RatedEntry> train;
  std::vector<RatedEntry> test;
  double kappa_truth = 0.0;  // nuclear norm of the ground truth (synthetic)

  Vec train_values() const;
  std::shared_ptr<const SamplingMap> train_map() const;

  /// BallConstrained: min (1/n)||A(X)-b||^2 over ||X||_* <= kappa
  /// (slack form with the map and offset scaled by sqrt(2/n)).
  /// ParameterFree:   min (1/n)||X||_*^2 s.t. A(X) = b.
  ProblemInstance to_problem(McFormulation f, double kappa = 0.0) const;
};

McInstance gen_mc(Index rows, Index cols, Index rank, double sample_fraction,
                  double noise, std::uint64_t seed);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plain-text ratings: one "user<delim>item<delim>rating[<delim>timestamp]"
/// per line, 1-based indices, timestamp ignored. Duplicate (user, item)
/// pairs in one file are an error; dimensions are inferred from the union
/// of train and test.
McInstance load_ratings(const std::string& train_path,
                        const std::string& test_path = "",
                        char delimiter = '\t');

/// Root mean squared error of the matrix x (vectorized rows x cols) over
/// the test entries.
double rmse(const Vec& x, Index rows, Index cols,
            const std::vector<RatedEntry>& test);

struct ReferenceSolution {
  Vec x_star;
  double f_star = 0.0;
  Vec lambda_star;
  std::string method;
  double accuracy = 0.0;
  bool reliable = false;
};

/// Closed-form KKT solve for equality-constrained quadratics
/// (separable-quadratic objective, whole space, K = {0}); otherwise a long
/// accelerated run at accuracy/100 with at least 5e3 iterations.
ReferenceSolution reference_solve(const ProblemInstance& prob,
                                  double accuracy);

}  // namespace unipd
