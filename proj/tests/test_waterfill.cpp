#include <doctest.h>

#include <cmath>
#include <numeric>

#include <gausscap/capacity.hpp>
#include <gausscap/errors.hpp>

#include "test_support.hpp"

using namespace gausscap;
using namespace testsupport;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// Best split of P between two modes by a dense scan followed by golden-section
// refinement of the bracket around the best grid point.
double brute_two_modes(const std::function<double(double)>& f, double p, double* arg) {
  const int grid = 20000;
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i <= grid; ++i) {
    const double v = f(p * i / grid);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = p * std::max(best - 1, 0) / grid;
  double b = p * std::min(best + 1, grid) / grid;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double c = b - phi * (b - a);
    const double d = a + phi * (b - a);
    if (f(c) > f(d)) b = d;
    else a = c;
  }
  const double x = 0.5 * (a + b);
  if (arg) *arg = x;
  return std::max(best_val, f(x));
}

double mode_bits(Method m, const ModeParams& mode, double p) {
  return single_mode_capacity(m, mode, p);
}

}  // namespace

TEST_CASE("Holevo water-filling against a two-mode scan") {
  Rng rng(100);
  for (int t = 0; t < 25; ++t) {
    const std::vector<ModeParams> modes{{uniform_in(0.05, 1.0, rng), uniform_in(0, 1, rng), uniform_in(0, 1, rng)},
                                        {uniform_in(0.05, 1.0, rng), uniform_in(0, 1, rng), uniform_in(0, 1, rng)}};
    const double p = uniform_in(0.1, 20.0, rng);
    const auto wf = waterfill_holevo(modes, p);
    double x = 0.0;
    const double brute = brute_two_modes(
        [&](double a) { return mode_bits(Method::holevo, modes[0], a) + mode_bits(Method::holevo, modes[1], p - a); },
        p, &x);
    CHECK(wf.bits >= brute - 1e-9);
    CHECK(wf.bits <= brute + 1e-9);
    CHECK(wf.allocation.per_mode[0] == doctest::Approx(x).epsilon(1e-4).scale(p));
    CHECK(std::abs(wf.allocation.used() - p) <= 1e-8);
    REQUIRE(wf.waterlevel.has_value());
    CHECK(*wf.waterlevel > 1.0);
  }
}

TEST_CASE("Holevo water-filling satisfies the marginal-gain condition") {
  // Active modes share one marginal gain; idle modes cannot beat it.
  const std::vector<ModeParams> modes{{0.9, 0.2, 0.1}, {0.5, 0.2, 0.1}, {0.05, 0.2, 0.9}, {0.7, 0.2, 0.1}};
  const double p = 2.0;
  const auto wf = waterfill_holevo(modes, p);
  const double h = 1e-6;
  std::vector<double> gains;
  double active_gain = -1.0;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const double pk = wf.allocation.per_mode[k];
    const double gain = (mode_bits(Method::holevo, modes[k], pk + h) - mode_bits(Method::holevo, modes[k], pk)) / h;
    if (pk > 1e-6) {
      if (active_gain < 0) active_gain = gain;
      CHECK(gain == doctest::Approx(active_gain).epsilon(1e-4));
    }
    gains.push_back(gain);
  }
  CHECK(wf.allocation.per_mode[2] == 0.0);
  CHECK(gains[2] <= active_gain * (1 + 1e-4));
}

TEST_CASE("Holevo water-filling edge cases") {
  const std::vector<ModeParams> modes{{0.8, 0.0, 0.0}, {0.0, 0.0, 0.0}};
  const auto zero = waterfill_holevo(modes, 0.0);
  CHECK(zero.bits == 0.0);
  CHECK(zero.allocation.used() == 0.0);
  const auto one = waterfill_holevo(modes, 3.0);
  CHECK(one.allocation.per_mode[1] == 0.0);
  CHECK(one.bits == doctest::Approx(g_reference(0.8 * 3.0)).epsilon(1e-9));
  CHECK_THROWS_AS(waterfill_holevo(modes, -1.0), Error);
}

TEST_CASE("heterodyne and homodyne water-filling") {
  Rng rng(7);
  for (Receiver kind : {Receiver::heterodyne, Receiver::homodyne}) {
    const Method m = kind == Receiver::heterodyne ? Method::heterodyne : Method::homodyne;
    for (int t = 0; t < 20; ++t) {
      const std::vector<ModeParams> modes{{uniform_in(0.05, 1.0, rng), 0.5, uniform_in(0, 2, rng)},
                                          {uniform_in(0.05, 1.0, rng), 0.5, uniform_in(0, 2, rng)}};
      const double p = uniform_in(0.1, 10.0, rng);
      const auto wf = waterfill_het_hom(modes, p, kind);
      const double brute = brute_two_modes(
          [&](double a) { return mode_bits(m, modes[0], a) + mode_bits(m, modes[1], p - a); }, p, nullptr);
      CHECK(wf.bits == doctest::Approx(brute).epsilon(1e-9));
      CHECK(std::abs(sum(wf.allocation.per_mode) - p) <= 1e-9);
      // P_k = (mu - floor_k)^+
      for (std::size_t k = 0; k < modes.size(); ++k) {
        const double c = effective_noise(modes[k]);
        const double floor = kind == Receiver::heterodyne ? (c + 1.0) / modes[k].lambda
                                                          : (c + 0.5) / (2.0 * modes[k].lambda);
        CHECK(wf.allocation.per_mode[k] == doctest::Approx(std::max(*wf.waterlevel - floor, 0.0)));
      }
    }
  }
}

TEST_CASE("classical water-filling") {
  const std::vector<double> lambdas{1.0, 0.5, 0.1};
  const double xi = 1.0;
  // Floors xi / lambda = 1, 2, 10. P = 5 fills to mu = 4 over the first two.
  const auto wf = classical_capacity(lambdas, xi, 5.0);
  REQUIRE(wf.waterlevel.has_value());
  CHECK(*wf.waterlevel == doctest::Approx(4.0));
  CHECK(wf.allocation.per_mode[0] == doctest::Approx(3.0));
  CHECK(wf.allocation.per_mode[1] == doctest::Approx(2.0));
  CHECK(wf.allocation.per_mode[2] == 0.0);
  CHECK(wf.bits == doctest::Approx(std::log2(4.0) + std::log2(2.0)));
}
