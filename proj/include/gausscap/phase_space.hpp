#ifndef GAUSSCAP_PHASE_SPACE_HPP
#define GAUSSCAP_PHASE_SPACE_HPP

// Phase-space linear algebra for bosonic modes.
//
// Quadrature vectors are ordered (q_1 ... q_R, p_1 ... p_R). The vacuum has
// variance 1/2 in every quadrature, so a thermal state with mean photon
// number n has covariance (n + 1/2) I.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "gausscap/errors.hpp"

namespace gausscap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Numeric tolerances shared across the library. One record so callers can
/// override everything in one place.
struct Tolerances {
  double symmetry = 1e-12;      // covariance / noise matrices
  double structural = 1e-10;    // orthogonality, symplecticity, hermiticity
  double spectral = 1e-10;      // physicality of symplectic spectra
  double validity = 1e-9;       // min eigenvalue of Y - (i/2) Sigma
  double block_form = 1e-9;     // H_1/H_2 block symmetry
  double thermal_noise = 1e-8;  // Y against its thermal reconstruction
};

/// Real 2R x 2C matrix acting on quadrature vectors.
class PhaseSpaceMatrix {
 public:
  PhaseSpaceMatrix() = default;
  explicit PhaseSpaceMatrix(Matrix entries);

  const Matrix& matrix() const noexcept { return m_; }
  Index row_modes() const noexcept { return m_.rows() / 2; }
  Index col_modes() const noexcept { return m_.cols() / 2; }
  bool is_square() const noexcept { return m_.rows() == m_.cols(); }

  PhaseSpaceMatrix transpose() const { return PhaseSpaceMatrix(m_.transpose()); }

 private:
  Matrix m_;
};

PhaseSpaceMatrix operator*(const PhaseSpaceMatrix& a, const PhaseSpaceMatrix& b);

/// Real symmetric 2R x 2R second-moment matrix.
class CovarianceMatrix {
 public:
  CovarianceMatrix() = default;
  explicit CovarianceMatrix(Matrix entries, double symmetry_tol = 1e-12);

  static CovarianceMatrix vacuum(Index modes);
  static CovarianceMatrix thermal(Index modes, double mean_photons);

  const Matrix& matrix() const noexcept { return m_; }
  Index modes() const noexcept { return m_.rows() / 2; }

  /// V + (i/2) Omega >= 0, checked through the symplectic spectrum.
  bool is_physical(double tol = 1e-10) const;

 private:
  Matrix m_;
};

/// Sorted descending.
struct SymplecticEigenvalues {
  std::vector<double> values;
};

PhaseSpaceMatrix symplectic_form(Index modes);

/// R(C) = [[Re C, -Im C], [Im C, Re C]].
PhaseSpaceMatrix real_representation(const CMatrix& c);

/// max |M Omega_2C M^T - Omega_2R| <= tol. Works for rectangular M too.
bool is_symplectic(const PhaseSpaceMatrix& m, double tol);

/// Moduli of the eigenvalues of i Omega V.
///
/// Computed as the singular values of the antisymmetric matrix
/// V^{1/2} Omega V^{1/2}, which is similar to Omega V and therefore carries
/// the same spectrum +-i nu_k. Throws NonPositiveDefinite when V is not
/// strictly positive.
SymplecticEigenvalues symplectic_eigenvalues(const CovarianceMatrix& v);

/// |M| = sqrt(M^T M), via the right singular vectors of M.
Matrix matrix_abs(const Matrix& m);

/// |S| for a symmetric S via its eigendecomposition.
Matrix symmetric_abs(const Matrix& s);

double min_eig_hermitian(const CMatrix& h, double tol = 1e-10);

/// Bosonic entropy in bits, g(x) = (x+1) log2(x+1) - x log2 x.
double entropy_g(double x);

/// Largest absolute entry; 0 for empty matrices.
double max_abs(const Matrix& m);

}  // namespace gausscap

#endif  // GAUSSCAP_PHASE_SPACE_HPP
