#ifndef GAUSSCAP_CHANNEL_HPP
#define GAUSSCAP_CHANNEL_HPP

#include <vector>

#include "gausscap/phase_space.hpp"

namespace gausscap {

/// Uniform thermal environment (n photons per mode) plus additive noise xi.
struct NoiseParams {
  double n = 0.0;
  double xi = 0.0;

  void validate() const;
};

/// Parameters of one parallel single-mode subchannel: transmission (or gain)
/// lambda and the noise it sees.
struct ModeParams {
  double lambda = 0.0;
  double n = 0.0;
  double xi = 0.0;
};

/// Noise photons seen by a singular mode:
/// (lambda - 1)/2 + (n + 1/2)|1 - lambda| + xi.
double effective_noise(const ModeParams& mode);

/// V_out = H_s V_in H_s^T + Y with H_s : 2N -> 2K quadratures.
class GaussianChannel {
 public:
  GaussianChannel(PhaseSpaceMatrix hs, Matrix y, NoiseParams noise = {},
                  double symmetry_tol = 1e-12);

  const PhaseSpaceMatrix& hs() const noexcept { return hs_; }
  const Matrix& y() const noexcept { return y_; }
  const NoiseParams& noise() const noexcept { return noise_; }
  Index in_modes() const noexcept { return hs_.col_modes(); }
  Index out_modes() const noexcept { return hs_.row_modes(); }

  /// Sigma = Omega_2K - H_s Omega_2N H_s^T.
  Matrix sigma() const;

 private:
  PhaseSpaceMatrix hs_;
  Matrix y_;
  NoiseParams noise_;
};

/// Symplectic map on signal + environment in subsystem order
/// (q^s, p^s, q^e, p^e).
class GlobalSymplectic {
 public:
  GlobalSymplectic(PhaseSpaceMatrix h_tilde, Index signal_modes, double tol = 1e-9);

  const PhaseSpaceMatrix& h_tilde() const noexcept { return h_; }
  Index signal_modes() const noexcept { return signal_; }
  Index env_modes() const noexcept { return h_.row_modes() - signal_; }

 private:
  PhaseSpaceMatrix h_;
  Index signal_;
};

/// Position of every subsystem-ordered quadrature (q^s, p^s, q^e, p^e) inside
/// the joint ordering (q_1..q_{N+M}, p_1..p_{N+M}), signal modes first.
std::vector<Index> subsystem_to_joint_order(Index signal_modes, Index env_modes);

/// Reorders a square joint-ordered matrix into subsystem order.
Matrix joint_to_subsystem(const Matrix& joint, Index signal_modes, Index env_modes);

/// Joint-ordered rows/columns of the first `rows_modes` output modes and the
/// first `cols_modes` input modes of a (N+M)-mode transform.
Matrix leading_block(const Matrix& joint, Index rows_modes, Index cols_modes);

/// Minimal added noise (1/2)|Omega_2K - H_s Omega_2N H_s^T|.
Matrix minimal_noise(const PhaseSpaceMatrix& hs);

/// Thermal noise for a block-form H_s: (n + 1/2)|I - H_s H_s^T| + xi I.
Matrix thermal_noise(const PhaseSpaceMatrix& hs, const NoiseParams& noise);

/// Block-form channel H_s = R(C) with thermal noise.
GaussianChannel block_form_channel(const CMatrix& c, const NoiseParams& noise,
                                   const Tolerances& tol = {});

/// H_s and Y = h_se V_env h_se^T of the first K signal modes.
GaussianChannel channel_from_global(const GlobalSymplectic& g, const CovarianceMatrix& env_state,
                                    Index receiver_modes);

/// min eig(Y - (i/2) Sigma) >= -tol.
bool validate_channel(const GaussianChannel& ch, double tol = 1e-9);

/// Throws InvalidChannel when validate_channel fails.
void require_valid(const GaussianChannel& ch, double tol = 1e-9);

CovarianceMatrix apply_channel(const GaussianChannel& ch, const CovarianceMatrix& v_in);

}  // namespace gausscap

#endif  // GAUSSCAP_CHANNEL_HPP
