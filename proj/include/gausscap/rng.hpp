#ifndef GAUSSCAP_RNG_HPP
#define GAUSSCAP_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

namespace gausscap {

/// xoshiro256** with splitmix64 seeding and Box-Muller normals.
///
/// Streams are derived from (seed, index) so each Monte Carlo sample owns an
/// independent generator and results do not depend on how samples are
/// scheduled across threads.
class Rng {
 public:
  using result_type = std::uint64_t;

  static constexpr const char* kAlgorithm = "xoshiro256ss-splitmix64-boxmuller-v1";

  explicit Rng(std::uint64_t seed);

  static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next(); }

  std::uint64_t next();

  /// Uniform on (0, 1), 53 random bits.
  double uniform();

  /// Standard normal.
  double normal();

  /// Circular complex normal with E|z|^2 = 1.
  std::complex<double> complex_normal();

 private:
  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gausscap

#endif  // GAUSSCAP_RNG_HPP
