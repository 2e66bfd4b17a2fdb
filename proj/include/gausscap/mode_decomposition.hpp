#ifndef GAUSSCAP_MODE_DECOMPOSITION_HPP
#define GAUSSCAP_MODE_DECOMPOSITION_HPP

#include <vector>

#include "gausscap/channel.hpp"

namespace gausscap {

/// H_s = U D W^T with U, W orthogonal and symplectic.
///
/// D = R(D_C) is 2K x 2N; for K != N it is only block diagonal.
struct ModeDecomposition {
  PhaseSpaceMatrix u;
  PhaseSpaceMatrix d;
  PhaseSpaceMatrix w;
  std::vector<double> singulars;  // min(K, N) values, descending
  std::vector<double> lambdas;    // singulars squared
};

/// True when H_s = [[H1, -H2], [H2, H1]] to within tol.
bool is_block_form(const Matrix& hs, double tol = 1e-9);

/// C = H1 + i H2 read off the blocks. No symmetry check.
CMatrix complex_from_block_form(const Matrix& hs);

/// Phase-insensitive part of an arbitrary H_s: the block-form matrix closest
/// to it in Frobenius norm.
PhaseSpaceMatrix nearest_block_form(const PhaseSpaceMatrix& hs);

/// Throws NotBlockForm when the block symmetry is violated.
ModeDecomposition block_svd(const PhaseSpaceMatrix& hs, double tol = 1e-9);

/// Per-singular-mode (lambda, n, xi). K > N channels get K - N extra
/// zero-transmission modes at the end.
///
/// Throws NotBlockForm, or NonThermalNoise when Y does not match
/// (n + 1/2)|I - H_s H_s^T| + xi I.
std::vector<ModeParams> diagonal_channel_params(const GaussianChannel& ch,
                                                const Tolerances& tol = {});

}  // namespace gausscap

#endif  // GAUSSCAP_MODE_DECOMPOSITION_HPP
