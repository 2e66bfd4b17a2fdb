#include "gausscap/mode_decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace gausscap {

bool is_block_form(const Matrix& hs, double tol) {
  if (hs.rows() % 2 != 0 || hs.cols() % 2 != 0) return false;
  const Index k = hs.rows() / 2;
  const Index n = hs.cols() / 2;
  const double diag_gap = max_abs(hs.topLeftCorner(k, n) - hs.bottomRightCorner(k, n));
  const double off_gap = max_abs(hs.topRightCorner(k, n) + hs.bottomLeftCorner(k, n));
  return std::max(diag_gap, off_gap) <= tol;
}

CMatrix complex_from_block_form(const Matrix& hs) {
  const Index k = hs.rows() / 2;
  const Index n = hs.cols() / 2;
  CMatrix c(k, n);
  c.real() = hs.topLeftCorner(k, n);
  c.imag() = hs.bottomLeftCorner(k, n);
  return c;
}

PhaseSpaceMatrix nearest_block_form(const PhaseSpaceMatrix& hs) {
  const Matrix& h = hs.matrix();
  const Index k = hs.row_modes();
  const Index n = hs.col_modes();
  CMatrix c(k, n);
  c.real() = 0.5 * (h.topLeftCorner(k, n) + h.bottomRightCorner(k, n));
  c.imag() = 0.5 * (h.bottomLeftCorner(k, n) - h.topRightCorner(k, n));
  return real_representation(c);
}

ModeDecomposition block_svd(const PhaseSpaceMatrix& hs, double tol) {
  if (!is_block_form(hs.matrix(), tol)) {
    throw Error(ErrorCode::NotBlockForm,
                "H_s is not of the form [[H1, -H2], [H2, H1]]; use the general capacity path");
  }
  const CMatrix c = complex_from_block_form(hs.matrix());
  const Index k = c.rows();
  const Index n = c.cols();
  const Index r = std::min(k, n);

  Eigen::JacobiSVD<CMatrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();

  // Stable descending order; ties keep the solver's column order.
  std::vector<Index> order(static_cast<std::size_t>(r));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return s(a) > s(b); });

  CMatrix uc = svd.matrixU();
  CMatrix wc = svd.matrixV();
  for (Index j = 0; j < r; ++j) {
    uc.col(j) = svd.matrixU().col(order[static_cast<std::size_t>(j)]);
    wc.col(j) = svd.matrixV().col(order[static_cast<std::size_t>(j)]);
  }

  ModeDecomposition out;
  CMatrix dc = CMatrix::Zero(k, n);
  for (Index j = 0; j < r; ++j) {
    const double sv = s(order[static_cast<std::size_t>(j)]);
    dc(j, j) = sv;
    out.singulars.push_back(sv);
    out.lambdas.push_back(sv * sv);
  }
  out.u = real_representation(uc);
  out.d = real_representation(dc);
  out.w = real_representation(wc);
  return out;
}

std::vector<ModeParams> diagonal_channel_params(const GaussianChannel& ch, const Tolerances& tol) {
  const ModeDecomposition dec = block_svd(ch.hs(), tol.block_form);
  const Matrix expected = thermal_noise(ch.hs(), ch.noise());
  const double gap = max_abs(ch.y() - expected);
  if (gap > tol.thermal_noise) {
    throw Error(ErrorCode::NonThermalNoise,
                "Y differs from the thermal form by " + std::to_string(gap) +
                    "; use the general capacity path");
  }
  std::vector<ModeParams> params;
  params.reserve(static_cast<std::size_t>(ch.out_modes()));
  for (double lambda : dec.lambdas) params.push_back({lambda, ch.noise().n, ch.noise().xi});
  for (Index extra = ch.in_modes(); extra < ch.out_modes(); ++extra) {
    params.push_back({0.0, ch.noise().n, ch.noise().xi});
  }
  return params;
}

}  // namespace gausscap
