#include <doctest.h>

#include <cmath>

#include <gausscap/capacity.hpp>
#include <gausscap/errors.hpp>
#include <gausscap/mode_decomposition.hpp>

#include "test_support.hpp"

using namespace gausscap;
using namespace testsupport;

namespace {

double noise_photons(double l, double n, double xi) {
  return (l - 1.0) / 2.0 + (n + 0.5) * std::abs(1.0 - l) + xi;
}

// Block-form channel R(U diag(sqrt l) W^dagger) with thermal noise; returns the
// channel and its transmissions.
GaussianChannel rotated_channel(const std::vector<double>& lambdas, NoiseParams noise, Rng& rng) {
  const Index m = static_cast<Index>(lambdas.size());
  CMatrix d = CMatrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) d(i, i) = std::sqrt(lambdas[static_cast<std::size_t>(i)]);
  const CMatrix c = random_unitary(m, rng) * d * random_unitary(m, rng).adjoint();
  return block_form_channel(c, noise);
}

}  // namespace

TEST_CASE("method names") {
  CHECK(parse_method("holevo") == Method::holevo);
  CHECK(parse_method("het") == Method::heterodyne);
  CHECK(parse_method("heterodyne") == Method::heterodyne);
  CHECK(parse_method("hom") == Method::homodyne);
  CHECK(parse_method("classical") == Method::classical);
  CHECK_THROWS_AS(parse_method("shannon"), Error);
  CHECK(std::string(to_string(Method::heterodyne)) == "het");
  CHECK(std::string(to_string(Method::homodyne)) == "hom");
}

TEST_CASE("single-mode capacities") {
  const ModeParams m{0.6, 0.5, 0.2};
  const double c = noise_photons(0.6, 0.5, 0.2);
  const double p = 3.0;
  CHECK(single_mode_capacity(Method::holevo, m, p) ==
        doctest::Approx(g_reference(0.6 * p + c) - g_reference(c)).epsilon(1e-13));
  CHECK(single_mode_capacity(Method::heterodyne, m, p) ==
        doctest::Approx(std::log2(1.0 + 0.6 * p / (c + 1.0))).epsilon(1e-13));
  CHECK(single_mode_capacity(Method::homodyne, m, p) ==
        doctest::Approx(0.5 * std::log2(1.0 + 2.0 * 0.6 * p / (c + 0.5))).epsilon(1e-13));
  CHECK(single_mode_capacity(Method::classical, m, p) ==
        doctest::Approx(std::log2(1.0 + 0.6 * p / 0.2)).epsilon(1e-13));
  CHECK_THROWS_AS(single_mode_capacity(Method::classical, {0.6, 0.0, 0.0}, p), Error);
}

TEST_CASE("identity channel with unit power holds two bits") {
  const std::vector<ModeParams> modes{{1.0, 0.0, 0.0}};
  CHECK(holevo_diagonal(modes, uniform_allocation(1, 1.0)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("allocation validation") {
  PowerAllocation a{{1.0, 2.0}, 3.0};
  CHECK_NOTHROW(a.validate());
  a.per_mode[0] = -0.1;
  CHECK_THROWS_AS(a.validate(), Error);
  a.per_mode = {2.0, 2.0};
  CHECK_THROWS_AS(a.validate(), Error);
  const std::vector<ModeParams> modes{{1.0, 0.0, 0.0}};
  CHECK_THROWS_AS(holevo_diagonal(modes, uniform_allocation(2, 1.0)), Error);
}

TEST_CASE("heterodyne and homodyne limits on the identity channel") {
  const double p = 15.0;
  CHECK(asymptotic_limit(p, Receiver::heterodyne) == doctest::Approx(21.6404).epsilon(1e-5));
  CHECK(asymptotic_limit(p, Receiver::homodyne) == doctest::Approx(43.2809).epsilon(1e-5));
  double prev_het = 0.0;
  double prev_hom = 0.0;
  for (int n : {1, 2, 8, 64, 512}) {
    std::vector<ModeParams> modes(static_cast<std::size_t>(n), ModeParams{1.0, 0.0, 0.0});
    const auto alloc = uniform_allocation(modes.size(), p);
    const double het = het_hom_per_mode(modes, alloc, Receiver::heterodyne);
    const double hom = het_hom_per_mode(modes, alloc, Receiver::homodyne);
    CHECK(het == doctest::Approx(n * std::log2(1.0 + p / n)).epsilon(1e-12));
    CHECK(hom == doctest::Approx(0.5 * n * std::log2(1.0 + 4.0 * p / n)).epsilon(1e-12));
    CHECK(het > prev_het);
    CHECK(hom > prev_hom);
    CHECK(het < 21.6404);
    CHECK(hom < 43.2809);
    prev_het = het;
    prev_hom = hom;
  }
}

TEST_CASE("general Gaussian formulas agree with the singular-mode sums") {
  Rng rng(77);
  const std::vector<double> lambdas{0.9, 0.55, 0.2};
  const NoiseParams noise{0.3, 0.15};
  const auto ch = rotated_channel(lambdas, noise, rng);
  const double p = 6.0;
  const CovarianceMatrix v((p / 3.0) * Matrix::Identity(6, 6));
  double holevo = 0.0;
  double het = 0.0;
  for (double l : lambdas) {
    const double c = noise_photons(l, noise.n, noise.xi);
    holevo += g_reference(l * p / 3.0 + c) - g_reference(c);
    het += std::log2(1.0 + l * (p / 3.0) / (c + 1.0));
  }
  CHECK(holevo_general(ch, v) == doctest::Approx(holevo).epsilon(1e-9));
  CHECK(het_hom_general(ch, v, Receiver::heterodyne) == doctest::Approx(het).epsilon(1e-9));

  const auto fast = evaluate_channel(ch, p, Method::holevo);
  CHECK(fast.diagonal);
  CHECK(fast.bits == doctest::Approx(holevo).epsilon(1e-9));
  CHECK(evaluate_channel(ch, p, Method::heterodyne).bits == doctest::Approx(het).epsilon(1e-9));
}

TEST_CASE("homodyne of a squeezed single-mode channel") {
  // H = sqrt(eta) R(theta) diag(e^r, e^-r) R(phi), Y = y I. The best quadrature
  // carries S = 2 P eta e^{2r} over N = eta e^{2r} / 2 + y.
  const double eta = 0.6;
  const double r = 0.3;
  const double y = (1.0 - eta) / 2.0 + 0.1;
  const double p = 2.5;
  const Matrix h = std::sqrt(eta) * mode_rotation(1, 0, 0.4) * mode_squeezer(1, 0, r) *
                   mode_rotation(1, 0, -1.1);
  const GaussianChannel ch(PhaseSpaceMatrix(h), y * Matrix::Identity(2, 2));
  REQUIRE(validate_channel(ch, 1e-12));
  const double best = 0.5 * std::log2(1.0 + 2.0 * p * eta * std::exp(2 * r) /
                                                (eta * std::exp(2 * r) / 2.0 + y));
  const auto normal = evaluate_channel(ch, p, Method::homodyne);
  CHECK_FALSE(normal.diagonal);
  CHECK(normal.bits == doctest::Approx(best).epsilon(1e-10));

  // Raw: symmetric modulation P on both quadratures, q measured directly.
  const double s_q = p * (h.row(0).squaredNorm());
  const double n_q = h.row(0).squaredNorm() / 2.0 + y;
  ChannelEvalOptions raw;
  raw.homodyne_basis = HomodyneBasis::raw;
  CHECK(evaluate_channel(ch, p, Method::homodyne, raw).bits ==
        doctest::Approx(0.5 * std::log2(1.0 + s_q / n_q)).epsilon(1e-10));
}

TEST_CASE("normal-mode homodyne on rotated passive channels matches the per-mode sum") {
  Rng rng(31);
  const std::vector<double> lambdas{0.8, 0.4};
  const NoiseParams noise{0.0, 0.25};
  const auto ch = rotated_channel(lambdas, noise, rng);
  const double p = 4.0;
  double hom = 0.0;
  for (double l : lambdas) {
    hom += 0.5 * std::log2(1.0 + 2.0 * l * (p / 2.0) / (noise_photons(l, 0.0, 0.25) + 0.5));
  }
  CHECK(evaluate_channel(ch, p, Method::homodyne).bits == doctest::Approx(hom).epsilon(1e-10));

  // Perturbing Y off the thermal form forces the general route.
  Matrix y = ch.y();
  y(0, 0) += 1e-3;
  const GaussianChannel bumped(ch.hs(), y, noise);
  const auto general = evaluate_channel(bumped, p, Method::homodyne);
  CHECK_FALSE(general.diagonal);
  CHECK(general.bits == doctest::Approx(hom).epsilon(1e-3));
  CHECK(general.bits <= hom + 1e-12);
}

TEST_CASE("classical baseline") {
  const std::vector<double> lambdas{0.9, 0.3};
  CHECK(classical_uniform(lambdas, 0.5, 4.0, 2) ==
        doctest::Approx(std::log2(1 + 0.9 * 2 / 0.5) + std::log2(1 + 0.3 * 2 / 0.5)));
  CHECK_THROWS_AS(classical_uniform(lambdas, 0.0, 4.0, 2), Error);
  CHECK_THROWS_AS(classical_capacity(lambdas, 0.0, 4.0), Error);
}

TEST_CASE("uniform power spreads over inputs, not singular modes") {
  // K = 1 receiver and N = 3 transmitters: one singular mode gets P/3.
  Rng rng(9);
  CMatrix c = ginibre(1, 3, rng);
  c *= 0.8 / c.norm();
  const auto ch = block_form_channel(c, {});
  const double l = c.squaredNorm();
  CHECK(evaluate_channel(ch, 3.0, Method::holevo).bits ==
        doctest::Approx(g_reference(l * 1.0) - g_reference(0.0)).epsilon(1e-12));
}

TEST_CASE("singular general noise") {
  const PhaseSpaceMatrix hs(Matrix::Identity(2, 2));
  const GaussianChannel ch(hs, Matrix::Zero(2, 2));
  // Identity channel, no noise: heterodyne still has the vacuum penalty.
  CHECK(het_hom_general(ch, CovarianceMatrix(Matrix::Identity(2, 2)), Receiver::heterodyne) ==
        doctest::Approx(1.0));
}
