#include <doctest.h>

#include <cmath>

#include <Eigen/SVD>

#include <gausscap/errors.hpp>
#include <gausscap/mode_decomposition.hpp>
#include <gausscap/random_ensembles.hpp>

#include "test_support.hpp"

using namespace gausscap;
using namespace testsupport;

namespace {

double binom(double n, double k) {
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
}

// Explicit sum P_n^{(a,b)}(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^{n-s}.
double jacobi_sum(int n, double a, double b, double x) {
  double acc = 0.0;
  for (int s = 0; s <= n; ++s) {
    acc += binom(n + a, n - s) * binom(n + b, s) * std::pow((x - 1) / 2, s) *
           std::pow((x + 1) / 2, n - s);
  }
  return acc;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

EnsembleSpec spec_of(int n, int k, int m, double xi = 0.0) {
  EnsembleSpec s;
  s.n_in = n;
  s.k_out = k;
  s.m_env = m;
  s.noise.xi = xi;
  return s;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("Jacobi polynomials against the explicit sum") {
  for (auto [a, b] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{3, 0}, std::pair{2, 5}}) {
    for (double x : {-0.95, -0.3, 0.0, 0.41, 1.0}) {
      const auto p = jacobi_polynomials(7, a, b, x);
      for (int n = 0; n < 7; ++n) {
        CAPTURE(n);
        CHECK(p[static_cast<std::size_t>(n)] == doctest::Approx(jacobi_sum(n, a, b, x)).epsilon(1e-11));
        CHECK(jacobi_polynomial(n, a, b, x) == doctest::Approx(jacobi_sum(n, a, b, x)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("Jacobi norms and orthogonality") {
  for (auto [a, b] : {std::pair{0, 0}, std::pair{1, 2}, std::pair{4, 1}}) {
    for (int k = 0; k < 5; ++k) {
      const double h = factorial(k + a) * factorial(k + b) /
                       ((2.0 * k + a + b + 1) * factorial(k + a + b) * factorial(k));
      CHECK(jacobi_norm_h(k, a, b) == doctest::Approx(h).epsilon(1e-12));
      // integral of (1-x)^a (1+x)^b P_j P_k over [-1, 1] = 2^{a+b+1} h_k delta_jk
      for (int j = 0; j <= k; ++j) {
        const double ip = simpson(
            [&](double x) {
              return std::pow(1 - x, a) * std::pow(1 + x, b) * jacobi_sum(j, a, b, x) *
                     jacobi_sum(k, a, b, x);
            },
            -1.0, 1.0, 4000);
        const double want = j == k ? std::pow(2.0, a + b + 1) * h : 0.0;
        CHECK(ip == doctest::Approx(want).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

TEST_CASE("spectral densities of small ensembles") {
  const auto d111 = JacobiDensity::for_spec(spec_of(1, 1, 1));
  const auto d222 = JacobiDensity::for_spec(spec_of(2, 2, 2));
  const auto d212 = JacobiDensity::for_spec(spec_of(2, 1, 2));
  CHECK(d212.a() == 1);
  CHECK(d212.b() == 1);
  CHECK(d212.terms() == 1);
  for (double l : {0.0, 0.1, 0.37, 0.5, 0.93, 1.0}) {
    CHECK(d111(l) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d222(l) == doctest::Approx(0.5 * (1.0 + 3.0 * (1 - 2 * l) * (1 - 2 * l))).epsilon(1e-13));
    CHECK(d212(l) == doctest::Approx(6.0 * l * (1 - l)).epsilon(1e-13));
  }
  CHECK(d212(-0.1) == 0.0);
  CHECK(d212(1.5) == 0.0);
}

TEST_CASE("densities are normalized") {
  for (auto [n, k, m] : {std::tuple{1, 1, 1}, std::tuple{3, 3, 3}, std::tuple{2, 4, 5},
                         std::tuple{5, 2, 2}, std::tuple{8, 8, 16}}) {
    const auto d = JacobiDensity::for_spec(spec_of(n, k, m));
    CHECK(simpson([&](double l) { return d(l); }, 0.0, 1.0, 4000) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("density with a = b is symmetric") {
  const auto d = JacobiDensity::for_spec(spec_of(3, 2, 3));
  REQUIRE(d.a() == d.b());
  for (double l : {0.05, 0.2, 0.33, 0.48}) CHECK(d(l) == doctest::Approx(d(1 - l)).epsilon(1e-12));
}

TEST_CASE("expected capacities by quadrature") {
  const double p = 15.0;
  // Uniform density: integral of log2(1 + 15 l) = (16 ln 16 - 15) / (15 ln 2).
  const double het111 = (16.0 * std::log(16.0) - 15.0) / (15.0 * std::log(2.0));
  CHECK(expected_capacity_passive(spec_of(1, 1, 1), p, Method::heterodyne) ==
        doctest::Approx(het111).epsilon(1e-10));
  CHECK(het111 == doctest::Approx(2.823971625777703).epsilon(1e-14));
  CHECK(expected_capacity_passive(spec_of(1, 1, 1), p, Method::holevo) ==
        doctest::Approx(simpson([&](double l) { return g_reference(l * p); }, 0, 1, 20000)).epsilon(1e-8));
  // (2,1,2): one mode with density 6 l (1 - l) and power P/2.
  CHECK(expected_capacity_passive(spec_of(2, 1, 2), p, Method::heterodyne) ==
        doctest::Approx(simpson([&](double l) { return 6 * l * (1 - l) * std::log2(1 + l * p / 2); }, 0, 1, 4000))
            .epsilon(1e-9));
  // (2,2,2): two modes at P/2 each.
  const double hom222 = 2.0 * simpson(
      [&](double l) {
        return 0.5 * (1 + 3 * (1 - 2 * l) * (1 - 2 * l)) * 0.5 * std::log2(1 + 2 * l * (p / 2) / 0.5);
      },
      0, 1, 4000);
  CHECK(expected_capacity_passive(spec_of(2, 2, 2), p, Method::homodyne) == doctest::Approx(hom222).epsilon(1e-9));
  CHECK(expected_capacity_passive(spec_of(2, 2, 2), 0.0, Method::holevo) == 0.0);
}

TEST_CASE("ensemble parameter errors") {
  CHECK(code_of([] { spec_of(1, 3, 1).validate(); }) == ErrorCode::InsufficientEnvironment);
  CHECK(code_of([] { JacobiDensity::for_spec(spec_of(2, 3, 2)); }) == ErrorCode::InsufficientEnvironment);
  CHECK(category_of(ErrorCode::InsufficientEnvironment) == ErrorCategory::ensemble);
  CHECK(code_of([] { spec_of(0, 1, 1).validate(); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { spec_of(1, 1, -1).validate(); }) == ErrorCode::InvalidArgument);
  CHECK_NOTHROW(spec_of(2, 2, 0).validate());
}

TEST_CASE("Haar unitaries") {
  Rng rng(99);
  const Index d = 3;
  const int samples = 20000;
  double m2 = 0.0;
  double m4 = 0.0;
  Complex m1 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const CMatrix u = haar_unitary(d, rng);
    if (i < 50) CHECK((u.adjoint() * u - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-13);
    const double a = std::norm(u(1, 2));
    m1 += u(0, 0);
    m2 += a;
    m4 += a * a;
  }
  // E|U_ij|^2 = 1/d, E|U_ij|^4 = 2/(d(d+1)), E U_ij = 0.
  CHECK(m2 / samples == doctest::Approx(1.0 / d).epsilon(0.02));
  CHECK(m4 / samples == doctest::Approx(2.0 / (d * (d + 1))).epsilon(0.04));
  CHECK(std::abs(m1 / double(samples)) < 0.02);

  Rng a(5), b(5);
  CHECK(haar_unitary(4, a) == haar_unitary(4, b));
}

TEST_CASE("passive samples are valid block-form channels") {
  EnsembleSpec s = spec_of(3, 2, 2);
  s.noise = {0.5, 0.1};
  Rng rng(12);
  for (int i = 0; i < 20; ++i) {
    const auto ch = passive_channel_sample(s, rng);
    CHECK(ch.out_modes() == 2);
    CHECK(ch.in_modes() == 3);
    CHECK(is_block_form(ch.hs().matrix()));
    CHECK(validate_channel(ch, 1e-9));
    const auto spec = deduplicated_spectrum(ch.hs().matrix());
    const CMatrix a1 = complex_from_block_form(ch.hs().matrix());
    Eigen::JacobiSVD<CMatrix> svd(a1);
    for (std::size_t k = 0; k < spec.size(); ++k) {
      const double sv = svd.singularValues()(static_cast<Index>(k));
      CHECK(spec[k] == doctest::Approx(sv * sv).epsilon(1e-10));
      CHECK(spec[k] <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("Monte Carlo reduction does not depend on threads") {
  EnsembleSpec s = spec_of(2, 2, 2);
  s.seed = 4242;
  McOptions one;
  one.samples = 64;
  McOptions many = one;
  many.threads = 5;
  const auto r1 = mc_expected_capacity_passive(s, 15.0, Method::holevo, one);
  const auto r5 = mc_expected_capacity_passive(s, 15.0, Method::holevo, many);
  CHECK(r1.estimate.mean == r5.estimate.mean);
  CHECK(r1.estimate.std_error == r5.estimate.std_error);
  REQUIRE(r1.records.size() == 64);
  for (std::size_t i = 0; i < r1.records.size(); ++i) {
    CHECK(r1.records[i].index == static_cast<int>(i));
    CHECK(r1.records[i].bits == r5.records[i].bits);
  }
  s.seed = 4243;
  CHECK(mc_expected_capacity_passive(s, 15.0, Method::holevo, one).estimate.mean != r1.estimate.mean);
}

TEST_CASE("summaries") {
  const auto e = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(e.mean == 2.5);
  CHECK(e.samples == 4);
  CHECK(e.std_error == doctest::Approx(std::sqrt((1.25 * 4 / 3.0) / 4.0)));
}
