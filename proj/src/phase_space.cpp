#include "gausscap/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace gausscap {

namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

PhaseSpaceMatrix::PhaseSpaceMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() % 2 != 0 || m_.cols() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "phase-space matrix needs even dimensions, got " + shape(m_));
  }
}

PhaseSpaceMatrix operator*(const PhaseSpaceMatrix& a, const PhaseSpaceMatrix& b) {
  if (a.matrix().cols() != b.matrix().rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "cannot multiply " + shape(a.matrix()) + " by " + shape(b.matrix()));
  }
  return PhaseSpaceMatrix(a.matrix() * b.matrix());
}

CovarianceMatrix::CovarianceMatrix(Matrix entries, double symmetry_tol) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "covariance matrix must be square with even size, got " + shape(m_));
  }
  if (max_abs(m_ - m_.transpose()) > symmetry_tol) {
    throw Error(ErrorCode::InvalidArgument, "covariance matrix is not symmetric");
  }
}

CovarianceMatrix CovarianceMatrix::vacuum(Index modes) { return thermal(modes, 0.0); }

CovarianceMatrix CovarianceMatrix::thermal(Index modes, double mean_photons) {
  return CovarianceMatrix((mean_photons + 0.5) * Matrix::Identity(2 * modes, 2 * modes));
}

bool CovarianceMatrix::is_physical(double tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) return false;
  const auto nu = symplectic_eigenvalues(*this);
  return nu.values.empty() || nu.values.back() >= 0.5 - tol;
}

PhaseSpaceMatrix symplectic_form(Index modes) {
  Matrix omega = Matrix::Zero(2 * modes, 2 * modes);
  omega.topRightCorner(modes, modes).setIdentity();
  omega.bottomLeftCorner(modes, modes) = -Matrix::Identity(modes, modes);
  return PhaseSpaceMatrix(std::move(omega));
}

PhaseSpaceMatrix real_representation(const CMatrix& c) {
  const Index k = c.rows();
  const Index n = c.cols();
  Matrix r(2 * k, 2 * n);
  r.topLeftCorner(k, n) = c.real();
  r.topRightCorner(k, n) = -c.imag();
  r.bottomLeftCorner(k, n) = c.imag();
  r.bottomRightCorner(k, n) = c.real();
  return PhaseSpaceMatrix(std::move(r));
}

bool is_symplectic(const PhaseSpaceMatrix& m, double tol) {
  const Matrix& a = m.matrix();
  const Matrix lhs = a * symplectic_form(m.col_modes()).matrix() * a.transpose();
  return max_abs(lhs - symplectic_form(m.row_modes()).matrix()) <= tol;
}

SymplecticEigenvalues symplectic_eigenvalues(const CovarianceMatrix& v) {
  const Index modes = v.modes();
  Eigen::SelfAdjointEigenSolver<Matrix> es(v.matrix());
  const Vector& w = es.eigenvalues();
  if (modes > 0 && w.minCoeff() <= 0.0) {
    throw Error(ErrorCode::NonPositiveDefinite,
                "covariance matrix has eigenvalue " + std::to_string(w.minCoeff()));
  }
  const Matrix root = es.eigenvectors() * w.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  const Matrix a = root * symplectic_form(modes).matrix() * root;
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();  // descending, each value twice

  SymplecticEigenvalues out;
  out.values.reserve(static_cast<std::size_t>(modes));
  for (Index k = 0; k < modes; ++k) {
    out.values.push_back(0.5 * (s(2 * k) + s(2 * k + 1)));
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

Matrix matrix_abs(const Matrix& m) {
  if (m.size() == 0) return Matrix(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Matrix& v = svd.matrixV();
  Vector s = Vector::Zero(m.cols());
  s.head(svd.singularValues().size()) = svd.singularValues();
  Matrix out = v * s.asDiagonal() * v.transpose();
  return 0.5 * (out + out.transpose());
}

Matrix symmetric_abs(const Matrix& s) {
  if (s.size() == 0) return s;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.transpose()));
  const Matrix& q = es.eigenvectors();
  Matrix out = q * es.eigenvalues().cwiseAbs().asDiagonal() * q.transpose();
  return 0.5 * (out + out.transpose());
}

double min_eig_hermitian(const CMatrix& h, double tol) {
  if (h.rows() != h.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Hermitian matrix must be square");
  }
  const double asym = h.size() == 0 ? 0.0 : (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol) {
    throw Error(ErrorCode::NotHermitian, "max |H - H^dagger| = " + std::to_string(asym));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double entropy_g(double x) {
  if (x < -1e-12) {
    throw Error(ErrorCode::NegativeArgument, "g(x) needs x >= 0, got " + std::to_string(x));
  }
  if (x <= 0.0) return 0.0;
  // (x+1) log2(x+1) - x log2 x = log2(x+1) + x log2(1 + 1/x)
  return (std::log1p(x) + x * std::log1p(1.0 / x)) / std::log(2.0);
}

}  // namespace gausscap
