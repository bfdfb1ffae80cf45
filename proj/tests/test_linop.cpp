#include <doctest.h>

#include "unipd/linop.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <random>

using namespace unipd;

namespace {

Mat random_mat(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

Vec random_vec(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

void check_adjoint_consistency(const LinearMap& map, std::uint64_t seed,
                               int probes = 100) {
  double a_est = std::max(operator_norm(map, 1e-6, seed), 1e-12);
  for (int t = 0; t < probes; ++t) {
    Vec x = random_vec(map.input_dim(), seed + 2 * t);
    Vec y = random_vec(map.output_dim(), seed + 2 * t + 1);
    double lhs = map.apply(x).dot(y);
    double rhs = x.dot(map.adjoint_apply(y));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (x.norm() * y.norm() * a_est));
  }
}

}  // namespace

TEST_CASE("identity dense map applies and adjoints") {
  DenseMap id{Mat::Identity(3, 3)};
  Vec x(3);
  x << 1, 2, 3;
  CHECK(id.apply(x) == x);
  Vec y(3);
  y << 4, 5, 6;
  CHECK(id.adjoint_apply(y) == y);
}

TEST_CASE("sampling mask selects and zero-pads") {
  SamplingMap mask(4, {0, 2});  // entries 1 and 3 in 1-based terms
  Vec x(4);
  x << 5, 6, 7, 8;
  Vec y = mask.apply(x);
  REQUIRE(y.size() == 2);
  CHECK(y[0] == 5);
  CHECK(y[1] == 7);
  Vec z(2);
  z << 9, 9;
  Vec back = mask.adjoint_apply(z);
  Vec expected(4);
  expected << 9, 0, 9, 0;
  CHECK(back == expected);
}

TEST_CASE("dense map matches explicit matvec") {
  Mat a = random_mat(3, 3, 11);
  DenseMap map{a};
  Vec x = random_vec(3, 12);
  CHECK((map.apply(x) - a * x).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("dimension mismatches are rejected") {
  DenseMap map{random_mat(3, 2, 5)};
  CHECK_THROWS_AS(map.apply(random_vec(3, 1)), std::invalid_argument);
  CHECK_THROWS_AS(map.adjoint_apply(random_vec(2, 1)), std::invalid_argument);
}

TEST_CASE("adjoint consistency across operator kinds") {
  SUBCASE("dense") { check_adjoint_consistency(DenseMap{random_mat(7, 5, 2)}, 100); }
  SUBCASE("sparse") {
    std::vector<Eigen::Triplet<double>> trips{
        {0, 1, 2.0}, {2, 3, -1.5}, {4, 0, 0.7}, {1, 4, 3.1}};
    SpMat a(5, 6);
    a.setFromTriplets(trips.begin(), trips.end());
    check_adjoint_consistency(SparseMap{a}, 200);
  }
  SUBCASE("sampling") {
    check_adjoint_consistency(SamplingMap(9, {1, 4, 4, 8}), 300);
  }
  SUBCASE("tensor ensemble") {
    check_adjoint_consistency(TensorProductEnsembleMap(3, 40, 17), 400);
  }
  SUBCASE("composition") {
    auto inner = std::make_shared<DenseMap>(random_mat(4, 6, 3));
    auto outer = std::make_shared<DenseMap>(random_mat(3, 4, 4));
    check_adjoint_consistency(CompositionMap(outer, inner, 0.5), 500);
  }
}

TEST_CASE("composition applies scale * outer * inner") {
  auto inner = std::make_shared<DenseMap>(random_mat(4, 6, 21));
  auto outer = std::make_shared<DenseMap>(random_mat(3, 4, 22));
  CompositionMap comp(outer, inner, 2.0);
  Vec x = random_vec(6, 23);
  Vec want = 2.0 * (outer->matrix() * (inner->matrix() * x));
  CHECK((comp.apply(x) - want).norm() <= 1e-13 * want.norm());
  CompositionMap scaled_only(outer, nullptr, -0.5);
  Vec z = random_vec(4, 24);
  CHECK((scaled_only.apply(z) + 0.5 * outer->matrix() * z).norm() <= 1e-13);
}

TEST_CASE("tensor ensemble rows have unit Frobenius norm") {
  TensorProductEnsembleMap ens(2, 25, 7);
  Mat dense = materialize(ens);
  // row i of the materialized operator is vec(P_i)/||P_i||_F
  for (Index i = 0; i < dense.rows(); ++i)
    CHECK(dense.row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tensor ensemble apply_outer matches apply on vec(u v^T)") {
  TensorProductEnsembleMap ens(3, 30, 99);
  Vec u = random_vec(8, 1);
  Vec v = random_vec(8, 2);
  Mat outer = u * v.transpose();
  Vec direct = ens.apply(as_vector(outer));
  Vec fast = ens.apply_outer(u, v);
  CHECK((direct - fast).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("tensor ensemble is deterministic given seed") {
  TensorProductEnsembleMap a(3, 20, 5), b(3, 20, 5);
  Vec x = random_vec(64, 3);
  CHECK(a.apply(x) == b.apply(x));
}

TEST_CASE("power method on diag(3,1)") {
  Mat m(2, 2);
  m << 3, 0, 0, 1;
  SpectralResult res = power_method(m, {1e-8, 0, 0});
  CHECK(res.value == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(std::abs(res.left_vector[0]) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(res.left_vector[0] > 0);  // sign convention
}

TEST_CASE("power method on the identity") {
  SpectralResult res = power_method(Mat::Identity(3, 3), {1e-10, 0, 0});
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.residual <= 1e-12);
  CHECK(res.left_vector.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("power method vs dense eigensolver on random symmetric matrices") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Mat b = random_mat(6, 6, 40 + seed);
    Mat s = 0.5 * (b + b.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(s);
    double lambda_max = es.eigenvalues().maxCoeff();
    SpectralResult res = power_method(s, {1e-9, 0, seed});
    CHECK(std::abs(res.value - lambda_max) <= 1e-6);
    CHECK(res.residual <= 1e-9 * std::max(std::abs(res.value), 1.0));
  }
}

TEST_CASE("power method finds the signed maximum with negative spectra") {
  Mat s = -Mat::Identity(4, 4);
  s(0, 0) = -9.0;
  SpectralResult res = power_method(s, {1e-9, 0, 0});
  CHECK(res.value == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("power method Rayleigh track is monotone non-decreasing") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Mat b = random_mat(8, 8, 70 + seed);
    Mat s = 0.5 * (b + b.transpose());
    SpectralResult res = power_method(s, {1e-10, 20000, seed});
    for (size_t i = 1; i < res.value_history.size(); ++i)
      CHECK(res.value_history[i] >= res.value_history[i - 1] - 1e-12);
  }
}

TEST_CASE("power method reports non-convergence with best iterate") {
  Mat b = random_mat(12, 12, 4);
  Mat s = 0.5 * (b + b.transpose());
  CHECK_THROWS_AS(power_method(s, {1e-14, 3, 0}), ConvergenceError);
  try {
    power_method(s, {1e-14, 3, 0});
  } catch (const ConvergenceError& e) {
    CHECK(e.best().left_vector.size() == 12);
  }
}

TEST_CASE("top singular triplet on diag(5,2)") {
  Mat m(2, 2);
  m << 5, 0, 0, 2;
  SpectralResult res = top_singular_triplet(m, {1e-10, 0, 0});
  CHECK(res.value == doctest::Approx(5.0).epsilon(1e-8));
  CHECK(std::abs(res.left_vector[0]) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(std::abs(res.right_vector[0]) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("top singular value of a rank-1 outer product is ||a|| ||b||") {
  Vec a = random_vec(6, 8);
  a *= 2.0 / a.norm();
  Vec b = random_vec(4, 9);
  b *= 3.0 / b.norm();
  Mat m = a * b.transpose();
  SpectralResult res = top_singular_triplet(m, {1e-10, 0, 0});
  CHECK(res.value == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("top singular triplet vs dense SVD on a random 8x5 matrix") {
  Mat m = random_mat(8, 5, 123);
  Eigen::BDCSVD<Mat> svd(m);
  SpectralResult res = top_singular_triplet(m, {1e-9, 0, 1});
  CHECK(std::abs(res.value - svd.singularValues()[0]) <= 1e-6);
  // triplet relations
  CHECK((m * res.right_vector - res.value * res.left_vector).norm() <=
        1e-6 * std::max(res.value, 1.0));
}

TEST_CASE("top singular value agrees between M and M^T") {
  Mat m = random_mat(7, 4, 55);
  double s1 = top_singular_triplet(m, {1e-10, 0, 2}).value;
  double s2 = top_singular_triplet(Mat(m.transpose()), {1e-10, 0, 3}).value;
  CHECK(std::abs(s1 - s2) <= 1e-8);
}

TEST_CASE("operator norm matches the dense spectral norm") {
  Mat a = random_mat(6, 9, 77);
  DenseMap map{a};
  Eigen::BDCSVD<Mat> svd(a);
  CHECK(operator_norm(map, 1e-10, 5) ==
        doctest::Approx(svd.singularValues()[0]).epsilon(1e-8));
}
