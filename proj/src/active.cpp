#include "gausscap/active.hpp"

#include <cmath>

#include "parallel.hpp"

namespace gausscap {

BogoliubovSample sample_bogoliubov(Index dim, double sigma2, Rng& rng) {
  if (!(sigma2 >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma2 must be >= 0");
  BogoliubovSample s;
  const CMatrix v = haar_unitary(dim, rng);
  s.u2 = haar_unitary(dim, rng);
  s.r.resize(dim);
  const double sd = std::sqrt(sigma2);
  for (Index i = 0; i < dim; ++i) s.r(i) = sd * rng.normal();

  if (sigma2 == 0.0) {
    s.u1 = v * s.u2.adjoint();
    s.a = v;
    s.b = CMatrix::Zero(dim, dim);
    return s;
  }
  s.u1 = v * s.u2.adjoint();
  const Vector ch = s.r.array().cosh().matrix();
  const Vector sh = s.r.array().sinh().matrix();
  s.a = s.u1 * ch.cast<Complex>().asDiagonal() * s.u2;
  s.b = s.u1 * sh.cast<Complex>().asDiagonal() * s.u2.conjugate();
  return s;
}

Matrix bogoliubov_symplectic(const CMatrix& a, const CMatrix& b) {
  const Index d = a.rows();
  Matrix h(2 * d, 2 * d);
  h.topLeftCorner(d, d) = a.real() + b.real();
  h.topRightCorner(d, d) = -a.imag() + b.imag();
  h.bottomLeftCorner(d, d) = a.imag() + b.imag();
  h.bottomRightCorner(d, d) = a.real() - b.real();
  return h;
}

ActiveDraw active_draw(const EnsembleSpec& spec, Rng& rng, bool allow_rect) {
  spec.validate();
  if (spec.k_out > spec.n_in && !allow_rect) {
    throw Error(ErrorCode::RectangularActive,
                "K > N would read environment outputs; enable rectangular active extraction");
  }
  const Index dim = spec.n_in + spec.m_env;
  BogoliubovSample bog = sample_bogoliubov(dim, spec.sigma2, rng);
  Matrix global = bogoliubov_symplectic(bog.a, bog.b);
  PhaseSpaceMatrix hs(leading_block(global, spec.k_out, spec.n_in));

  Matrix y;
  if (spec.sigma2 == 0.0) {
    y = thermal_noise(hs, spec.noise);
  } else {
    const Index k = hs.row_modes();
    const Matrix& h = hs.matrix();
    const Matrix sigma = symplectic_form(k).matrix() -
                         h * symplectic_form(hs.col_modes()).matrix() * h.transpose();
    y = (spec.noise.n + 0.5) * matrix_abs(sigma) + spec.noise.xi * Matrix::Identity(2 * k, 2 * k);
  }
  GaussianChannel ch(std::move(hs), std::move(y), spec.noise);
  return ActiveDraw{std::move(bog), std::move(global), std::move(ch)};
}

GaussianChannel active_sample(const EnsembleSpec& spec, Rng& rng, bool allow_rect) {
  return active_draw(spec, rng, allow_rect).channel;
}

McResult mc_capacity_active(const EnsembleSpec& spec, double total_power, Method method,
                            const McOptions& opts) {
  spec.validate();
  if (opts.samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 samples");
  if (spec.k_out > spec.n_in && !opts.allow_rect_active) {
    throw Error(ErrorCode::RectangularActive,
                "K > N would read environment outputs; enable rectangular active extraction");
  }
  McResult result;
  result.records.resize(static_cast<std::size_t>(opts.samples));
  detail::parallel_for(opts.samples, opts.threads, [&](int i) {
    Rng rng = Rng::for_stream(spec.seed, static_cast<std::uint64_t>(i));
    const GaussianChannel ch = active_sample(spec, rng, opts.allow_rect_active);
    auto& rec = result.records[static_cast<std::size_t>(i)];
    rec.index = i;
    rec.bits = evaluate_channel(ch, total_power, method, opts.eval).bits;
    Eigen::JacobiSVD<Matrix> svd(ch.hs().matrix());
    const double s = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    rec.max_singular_sq = s * s;
  });
  std::vector<double> values;
  values.reserve(result.records.size());
  for (const auto& r : result.records) values.push_back(r.bits);
  result.estimate = summarize(values);
  return result;
}

}  // namespace gausscap
