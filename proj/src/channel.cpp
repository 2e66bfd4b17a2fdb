#include "gausscap/channel.hpp"

#include <cmath>
#include <string>

namespace gausscap {

void NoiseParams::validate() const {
  if (!(n >= 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::NegativeArgument, "thermal photon number n must be >= 0");
  }
  if (!(xi >= 0.0) || !std::isfinite(xi)) {
    throw Error(ErrorCode::NegativeArgument, "additive noise xi must be >= 0");
  }
}

double effective_noise(const ModeParams& mode) {
  return 0.5 * (mode.lambda - 1.0) + (mode.n + 0.5) * std::abs(1.0 - mode.lambda) + mode.xi;
}

GaussianChannel::GaussianChannel(PhaseSpaceMatrix hs, Matrix y, NoiseParams noise,
                                 double symmetry_tol)
    : hs_(std::move(hs)), y_(std::move(y)), noise_(noise) {
  noise_.validate();
  const Index dim = hs_.matrix().rows();
  if (y_.rows() != dim || y_.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "noise matrix Y must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (max_abs(y_ - y_.transpose()) > symmetry_tol) {
    throw Error(ErrorCode::InvalidArgument, "noise matrix Y is not symmetric");
  }
}

Matrix GaussianChannel::sigma() const {
  const Matrix& h = hs_.matrix();
  return symplectic_form(out_modes()).matrix() -
         h * symplectic_form(in_modes()).matrix() * h.transpose();
}

GlobalSymplectic::GlobalSymplectic(PhaseSpaceMatrix h_tilde, Index signal_modes, double tol)
    : h_(std::move(h_tilde)), signal_(signal_modes) {
  if (!h_.is_square() || signal_ < 1 || signal_ > h_.row_modes()) {
    throw Error(ErrorCode::DimensionMismatch, "global transform must be square with 1 <= N <= N+M");
  }
  // Omega_2N (+) Omega_2M in subsystem order.
  const Index m = env_modes();
  Matrix omega = Matrix::Zero(2 * (signal_ + m), 2 * (signal_ + m));
  omega.topLeftCorner(2 * signal_, 2 * signal_) = symplectic_form(signal_).matrix();
  if (m > 0) omega.bottomRightCorner(2 * m, 2 * m) = symplectic_form(m).matrix();
  const Matrix& h = h_.matrix();
  if (max_abs(h * omega * h.transpose() - omega) > tol) {
    throw Error(ErrorCode::InvalidArgument, "global transform is not symplectic");
  }
}

std::vector<Index> subsystem_to_joint_order(Index signal_modes, Index env_modes) {
  const Index total = signal_modes + env_modes;
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(2 * total));
  for (Index i = 0; i < signal_modes; ++i) order.push_back(i);          // q^s
  for (Index i = 0; i < signal_modes; ++i) order.push_back(total + i);  // p^s
  for (Index i = 0; i < env_modes; ++i) order.push_back(signal_modes + i);          // q^e
  for (Index i = 0; i < env_modes; ++i) order.push_back(total + signal_modes + i);  // p^e
  return order;
}

Matrix joint_to_subsystem(const Matrix& joint, Index signal_modes, Index env_modes) {
  const auto order = subsystem_to_joint_order(signal_modes, env_modes);
  const auto dim = static_cast<Index>(order.size());
  if (joint.rows() != dim || joint.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "joint matrix has the wrong size for N+M modes");
  }
  Matrix out(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) out(r, c) = joint(order[r], order[c]);
  }
  return out;
}

Matrix leading_block(const Matrix& joint, Index rows_modes, Index cols_modes) {
  const Index total = joint.rows() / 2;
  if (joint.rows() != joint.cols() || rows_modes > total || cols_modes > total) {
    throw Error(ErrorCode::DimensionMismatch, "leading block exceeds the joint transform");
  }
  Matrix out(2 * rows_modes, 2 * cols_modes);
  out.topLeftCorner(rows_modes, cols_modes) = joint.block(0, 0, rows_modes, cols_modes);
  out.topRightCorner(rows_modes, cols_modes) = joint.block(0, total, rows_modes, cols_modes);
  out.bottomLeftCorner(rows_modes, cols_modes) = joint.block(total, 0, rows_modes, cols_modes);
  out.bottomRightCorner(rows_modes, cols_modes) =
      joint.block(total, total, rows_modes, cols_modes);
  return out;
}

Matrix minimal_noise(const PhaseSpaceMatrix& hs) {
  const Matrix& h = hs.matrix();
  const Matrix sigma = symplectic_form(hs.row_modes()).matrix() -
                       h * symplectic_form(hs.col_modes()).matrix() * h.transpose();
  return 0.5 * matrix_abs(sigma);
}

Matrix thermal_noise(const PhaseSpaceMatrix& hs, const NoiseParams& noise) {
  const Matrix& h = hs.matrix();
  const Index dim = h.rows();
  const Matrix gap = Matrix::Identity(dim, dim) - h * h.transpose();
  return (noise.n + 0.5) * symmetric_abs(gap) + noise.xi * Matrix::Identity(dim, dim);
}

GaussianChannel block_form_channel(const CMatrix& c, const NoiseParams& noise,
                                   const Tolerances& tol) {
  noise.validate();
  PhaseSpaceMatrix hs = real_representation(c);
  Matrix y = thermal_noise(hs, noise);
  GaussianChannel ch(std::move(hs), std::move(y), noise);
  require_valid(ch, tol.validity);
  return ch;
}

GaussianChannel channel_from_global(const GlobalSymplectic& g, const CovarianceMatrix& env_state,
                                    Index receiver_modes) {
  const Index n = g.signal_modes();
  const Index m = g.env_modes();
  if (env_state.modes() != m) {
    throw Error(ErrorCode::DimensionMismatch, "environment state must have " +
                                                  std::to_string(m) + " modes");
  }
  if (receiver_modes < 1 || receiver_modes > n) {
    throw Error(ErrorCode::DimensionMismatch, "receiver modes must satisfy 1 <= K <= N");
  }
  const Index k = receiver_modes;
  const Matrix& h = g.h_tilde().matrix();

  // Receiver rows: q^s_1..q^s_K then p^s_1..p^s_K.
  Matrix rows(2 * k, h.cols());
  rows.topRows(k) = h.topRows(k);
  rows.bottomRows(k) = h.middleRows(n, k);

  Matrix hs = rows.leftCols(2 * n);
  const Matrix h_se = rows.rightCols(2 * m);
  Matrix y = h_se * env_state.matrix() * h_se.transpose();
  y = 0.5 * (y + y.transpose());

  // Recover n when the environment is a uniform thermal state.
  NoiseParams noise;
  const Matrix& ve = env_state.matrix();
  if (m > 0) {
    const double level = ve(0, 0) - 0.5;
    if (level >= 0.0 && max_abs(ve - (level + 0.5) * Matrix::Identity(2 * m, 2 * m)) <= 1e-12) {
      noise.n = level;
    }
  }
  return GaussianChannel(PhaseSpaceMatrix(std::move(hs)), std::move(y), noise);
}

bool validate_channel(const GaussianChannel& ch, double tol) {
  const CMatrix test = ch.y().cast<Complex>() - Complex(0.0, 0.5) * ch.sigma().cast<Complex>();
  return min_eig_hermitian(test, 1e-8) >= -tol;
}

void require_valid(const GaussianChannel& ch, double tol) {
  if (!validate_channel(ch, tol)) {
    throw Error(ErrorCode::InvalidChannel,
                "Y - (i/2) Sigma has a negative eigenvalue beyond " + std::to_string(tol));
  }
}

CovarianceMatrix apply_channel(const GaussianChannel& ch, const CovarianceMatrix& v_in) {
  if (v_in.modes() != ch.in_modes()) {
    throw Error(ErrorCode::DimensionMismatch, "input state must have " +
                                                  std::to_string(ch.in_modes()) + " modes");
  }
  const Matrix& h = ch.hs().matrix();
  Matrix out = h * v_in.matrix() * h.transpose() + ch.y();
  return CovarianceMatrix(0.5 * (out + out.transpose()));
}

}  // namespace gausscap
