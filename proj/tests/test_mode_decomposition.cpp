#include <doctest.h>

#include <algorithm>

#include <Eigen/Eigenvalues>

#include <gausscap/errors.hpp>
#include <gausscap/mode_decomposition.hpp>

#include "test_support.hpp"

using namespace gausscap;
using namespace testsupport;

namespace {

// Eigenvalues of C C^dagger, descending, through a Hermitian eigensolver.
std::vector<double> gram_eigenvalues(const CMatrix& c) {
  const CMatrix g = c.cols() <= c.rows() ? CMatrix(c.adjoint() * c) : CMatrix(c * c.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.rbegin(), v.rend());
  return v;
}

}  // namespace

TEST_CASE("block-form detection") {
  Rng rng(1);
  const CMatrix c = ginibre(2, 3, rng);
  Matrix hs = real_representation(c).matrix();
  CHECK(is_block_form(hs));
  CHECK(max_abs(real_representation(complex_from_block_form(hs)).matrix() - hs) == 0.0);
  hs(0, 0) += 1e-6;
  CHECK_FALSE(is_block_form(hs));
  CHECK_THROWS_AS(block_svd(PhaseSpaceMatrix(hs)), Error);
  const auto nearest = nearest_block_form(PhaseSpaceMatrix(hs));
  CHECK(is_block_form(nearest.matrix()));
  CHECK(max_abs(nearest.matrix() - real_representation(c).matrix()) < 1e-6);
}

TEST_CASE("singular-mode decomposition") {
  Rng rng(21);
  for (auto [k, n] : {std::pair{3, 3}, std::pair{2, 4}, std::pair{4, 2}, std::pair{1, 1}}) {
    CAPTURE(k);
    CAPTURE(n);
    const CMatrix c = ginibre(k, n, rng);
    const PhaseSpaceMatrix hs = real_representation(c);
    const auto dec = block_svd(hs);
    const Matrix& u = dec.u.matrix();
    const Matrix& w = dec.w.matrix();
    CHECK(max_abs(u * dec.d.matrix() * w.transpose() - hs.matrix()) < 1e-12);
    CHECK(max_abs(u.transpose() * u - Matrix::Identity(2 * k, 2 * k)) < 1e-12);
    CHECK(max_abs(w.transpose() * w - Matrix::Identity(2 * n, 2 * n)) < 1e-12);
    CHECK(is_symplectic(dec.u, 1e-12));
    CHECK(is_symplectic(dec.w, 1e-12));

    const auto ref = gram_eigenvalues(c);
    REQUIRE(dec.lambdas.size() == static_cast<std::size_t>(std::min(k, n)));
    for (std::size_t i = 0; i < dec.lambdas.size(); ++i) {
      CHECK(dec.lambdas[i] == doctest::Approx(ref[i]).epsilon(1e-12));
      CHECK(dec.singulars[i] * dec.singulars[i] == doctest::Approx(dec.lambdas[i]));
      if (i > 0) CHECK(dec.singulars[i - 1] >= dec.singulars[i]);
    }
  }
}

TEST_CASE("diagonal parameters of thermal channels") {
  Rng rng(5);
  const CMatrix c = 0.5 * ginibre(3, 3, rng);
  const NoiseParams noise{0.4, 0.3};
  const auto ch = block_form_channel(c, noise);
  const auto params = diagonal_channel_params(ch);
  const auto ref = gram_eigenvalues(c);
  REQUIRE(params.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(params[i].lambda == doctest::Approx(ref[i]).epsilon(1e-12));
    CHECK(params[i].n == noise.n);
    CHECK(params[i].xi == noise.xi);
  }
}

TEST_CASE("receivers beyond the transmitters get dark modes") {
  Rng rng(6);
  const auto ch = block_form_channel(0.4 * ginibre(3, 1, rng), {0.0, 0.1});
  const auto params = diagonal_channel_params(ch);
  REQUIRE(params.size() == 3);
  CHECK(params[0].lambda > 0.0);
  CHECK(params[1].lambda == 0.0);
  CHECK(params[2].lambda == 0.0);
}

TEST_CASE("non-thermal noise is detected") {
  const PhaseSpaceMatrix hs(0.5 * Matrix::Identity(2, 2));
  Matrix y = Matrix::Identity(2, 2);
  y(0, 0) = 2.0;
  try {
    diagonal_channel_params(GaussianChannel(hs, y));
    FAIL("expected NonThermalNoise");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonThermalNoise);
  }
}
