#ifndef GAUSSCAP_RANDOM_ENSEMBLES_HPP
#define GAUSSCAP_RANDOM_ENSEMBLES_HPP

#include <cstdint>
#include <vector>

#include "gausscap/capacity.hpp"
#include "gausscap/channel.hpp"
#include "gausscap/rng.hpp"

namespace gausscap {

/// Random channel ensemble: N transmitter modes, K receiver modes, M
/// environment modes mixed by a random (N+M)-mode transformation.
struct EnsembleSpec {
  int n_in = 1;
  int k_out = 1;
  int m_env = 1;
  NoiseParams noise{};
  double sigma2 = 0.0;  // squeezing variance; 0 means passive
  std::uint64_t seed = 0;

  void validate() const;
};

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// phases of diag(R) divided out.
CMatrix haar_unitary(Index dim, Rng& rng);

/// H_s = R(A_1) with A_1 the leading K x N block of a Haar unitary on N+M
/// modes; thermal noise from spec.noise.
GaussianChannel passive_channel_sample(const EnsembleSpec& spec, Rng& rng);

/// Jacobi polynomial P_k^{(a,b)}(x) by the three-term recurrence.
double jacobi_polynomial(int k, double a, double b, double x);

/// P_0 .. P_{count-1} at x.
std::vector<double> jacobi_polynomials(int count, double a, double b, double x);

/// h_k^{(a,b)} = (k+a)!(k+b)! / ((2k+a+b+1)(k+a+b)! k!).
double jacobi_norm_h(int k, int a, int b);
double log_jacobi_norm_h(int k, int a, int b);

/// One-point eigenvalue density of A_1 A_1^dagger for a truncated Haar
/// unitary.
class JacobiDensity {
 public:
  /// Throws InsufficientEnvironment when b = N + M - min - max is negative.
  static JacobiDensity for_spec(const EnsembleSpec& spec);

  JacobiDensity(int a, int b, int terms);

  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }
  int terms() const noexcept { return terms_; }

  double operator()(double lambda) const;

 private:
  int a_;
  int b_;
  int terms_;
  std::vector<double> log_norms_;
};

/// min(K, N) * integral of C_1(lambda) p(lambda) over [0, 1], where C_1 is the
/// single-mode capacity at power P/N.
double expected_capacity_passive(const EnsembleSpec& spec, double total_power, Method method);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

struct SampleRecord {
  int index = 0;
  double bits = 0.0;
  double max_singular_sq = 0.0;
};

struct McResult {
  McEstimate estimate;
  std::vector<SampleRecord> records;  // in sample-index order
};

struct McOptions {
  int samples = 1000;
  unsigned threads = 1;
  ChannelEvalOptions eval{};
  bool allow_rect_active = false;
};

/// Mean and standard error of the uniform-power capacity over passive
/// samples. Sample i draws from Rng::for_stream(spec.seed, i).
McResult mc_expected_capacity_passive(const EnsembleSpec& spec, double total_power, Method method,
                                      const McOptions& opts);

/// Mean and s / sqrt(n) of values in index order.
McEstimate summarize(const std::vector<double>& values);

/// Eigenvalues of A_1 A_1^dagger recovered from the doubly degenerate real
/// spectrum of H_s H_s^T. Throws InvalidArgument if a pair splits by more
/// than pair_tol.
std::vector<double> deduplicated_spectrum(const Matrix& hs, double pair_tol = 1e-8);

}  // namespace gausscap

#endif  // GAUSSCAP_RANDOM_ENSEMBLES_HPP
