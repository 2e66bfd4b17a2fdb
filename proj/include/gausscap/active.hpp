#ifndef GAUSSCAP_ACTIVE_HPP
#define GAUSSCAP_ACTIVE_HPP

#include "gausscap/random_ensembles.hpp"

namespace gausscap {

/// A = U1 cosh(R) U2, B = U1 sinh(R) conj(U2) on N+M modes.
struct BogoliubovSample {
  CMatrix u1;
  CMatrix u2;
  Vector r;
  CMatrix a;
  CMatrix b;
};

/// Draws (U1, U2, R) with r_i ~ Normal(0, sigma2).
///
/// The stream first yields V = U1 U2, then U2, then R; U1 = V U2^dagger.
/// (V, U2) independent Haar is the same law as (U1, U2) independent Haar,
/// and at sigma2 = 0 the sample reduces to A = V, which is exactly the
/// unitary a passive sample draws from the same stream.
BogoliubovSample sample_bogoliubov(Index dim, double sigma2, Rng& rng);

/// Real symplectic matrix of (A, B) in joint order (q_1..q_D, p_1..p_D):
/// [[Re A + Re B, -Im A + Im B], [Im A + Im B, Re A - Re B]].
Matrix bogoliubov_symplectic(const CMatrix& a, const CMatrix& b);

struct ActiveDraw {
  BogoliubovSample bogoliubov;
  Matrix global;  // joint order
  GaussianChannel channel;
};

/// Weakly active channel: H_s is the leading K x N mode block of the global
/// transform and Y = (n + 1/2)|Omega - H_s Omega H_s^T| + xi I.
///
/// K > N takes receiver rows from environment outputs and is refused unless
/// allow_rect is set (RectangularActive).
ActiveDraw active_draw(const EnsembleSpec& spec, Rng& rng, bool allow_rect = false);

GaussianChannel active_sample(const EnsembleSpec& spec, Rng& rng, bool allow_rect = false);

/// Monte Carlo mean and standard error with uniform power P/N per input.
/// Sample i uses Rng::for_stream(spec.seed, i), the same stream as the
/// passive estimator.
McResult mc_capacity_active(const EnsembleSpec& spec, double total_power, Method method,
                            const McOptions& opts);

}  // namespace gausscap

#endif  // GAUSSCAP_ACTIVE_HPP
