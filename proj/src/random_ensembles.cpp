#include "gausscap/random_ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gausscap/mode_decomposition.hpp"
#include "gausscap/quadrature.hpp"
#include "parallel.hpp"

namespace gausscap {

void EnsembleSpec::validate() const {
  if (n_in < 1 || k_out < 1) {
    throw Error(ErrorCode::InvalidArgument, "ensemble needs N >= 1 and K >= 1");
  }
  if (m_env < 0) throw Error(ErrorCode::InvalidArgument, "environment modes M must be >= 0");
  if (k_out > n_in + m_env) {
    throw Error(ErrorCode::InsufficientEnvironment,
                "K = " + std::to_string(k_out) + " exceeds N + M = " +
                    std::to_string(n_in + m_env) +
                    "; the receiver block must fit in the (N+M)-mode unitary");
  }
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw Error(ErrorCode::InvalidArgument, "sigma2 must be >= 0");
  }
  noise.validate();
}

CMatrix haar_unitary(Index dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "unitary dimension must be >= 1");
  CMatrix z(dim, dim);
  for (Index c = 0; c < dim; ++c) {
    for (Index r = 0; r < dim; ++r) z(r, c) = rng.complex_normal();
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& packed = qr.matrixQR();
  for (Index j = 0; j < dim; ++j) {
    const Complex rjj = packed(j, j);
    const double mod = std::abs(rjj);
    if (mod > 0.0) q.col(j) *= rjj / mod;
  }
  return q;
}

GaussianChannel passive_channel_sample(const EnsembleSpec& spec, Rng& rng) {
  spec.validate();
  const CMatrix u = haar_unitary(spec.n_in + spec.m_env, rng);
  const CMatrix a1 = u.topLeftCorner(spec.k_out, spec.n_in);
  PhaseSpaceMatrix hs = real_representation(a1);
  Matrix y = thermal_noise(hs, spec.noise);
  return GaussianChannel(std::move(hs), std::move(y), spec.noise);
}

std::vector<double> jacobi_polynomials(int count, double a, double b, double x) {
  std::vector<double> p;
  if (count <= 0) return p;
  p.reserve(static_cast<std::size_t>(count));
  p.push_back(1.0);
  if (count == 1) return p;
  p.push_back(0.5 * ((a + b + 2.0) * x + (a - b)));
  for (int q = 2; q < count; ++q) {
    const double s = 2.0 * q + a + b;
    const double lead = 2.0 * q * (q + a + b) * (s - 2.0);
    const double c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c2 = 2.0 * (q + a - 1.0) * (q + b - 1.0) * s;
    p.push_back((c1 * p[static_cast<std::size_t>(q - 1)] - c2 * p[static_cast<std::size_t>(q - 2)]) /
                lead);
  }
  return p;
}

double jacobi_polynomial(int k, double a, double b, double x) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "polynomial degree must be >= 0");
  if (!(a > -1.0) || !(b > -1.0)) {
    throw Error(ErrorCode::InvalidArgument, "Jacobi parameters must exceed -1");
  }
  return jacobi_polynomials(k + 1, a, b, x).back();
}

double log_jacobi_norm_h(int k, int a, int b) {
  if (k < 0 || a < 0 || b < 0) {
    throw Error(ErrorCode::InvalidArgument, "h_k needs k, a, b >= 0");
  }
  return -std::log(2.0 * k + a + b + 1.0) + std::lgamma(k + a + 1.0) + std::lgamma(k + b + 1.0) -
         std::lgamma(k + a + b + 1.0) - std::lgamma(k + 1.0);
}

double jacobi_norm_h(int k, int a, int b) { return std::exp(log_jacobi_norm_h(k, a, b)); }

JacobiDensity JacobiDensity::for_spec(const EnsembleSpec& spec) {
  spec.validate();
  const int lo = std::min(spec.k_out, spec.n_in);
  const int hi = std::max(spec.k_out, spec.n_in);
  const int b = spec.n_in + spec.m_env - lo - hi;
  if (b < 0) {
    throw Error(ErrorCode::InsufficientEnvironment,
                "the Jacobi density needs b = N + M - min(K,N) - max(K,N) >= 0, got b = " +
                    std::to_string(b) + "; increase M");
  }
  return JacobiDensity(hi - lo, b, lo);
}

JacobiDensity::JacobiDensity(int a, int b, int terms) : a_(a), b_(b), terms_(terms) {
  if (a < 0 || b < 0 || terms < 1) {
    throw Error(ErrorCode::InvalidArgument, "Jacobi density needs a, b >= 0 and terms >= 1");
  }
  for (int k = 0; k < terms; ++k) log_norms_.push_back(log_jacobi_norm_h(k, a, b));
}

double JacobiDensity::operator()(double lambda) const {
  if (lambda < 0.0 || lambda > 1.0) return 0.0;
  if ((a_ > 0 && lambda == 0.0) || (b_ > 0 && lambda == 1.0)) return 0.0;
  const double log_weight = (a_ > 0 ? a_ * std::log(lambda) : 0.0) +
                            (b_ > 0 ? b_ * std::log1p(-lambda) : 0.0);
  const auto p = jacobi_polynomials(terms_, a_, b_, 1.0 - 2.0 * lambda);
  double acc = 0.0;
  for (int k = 0; k < terms_; ++k) {
    const double v = p[static_cast<std::size_t>(k)];
    if (v == 0.0) continue;
    acc += std::exp(log_weight - log_norms_[static_cast<std::size_t>(k)] + 2.0 * std::log(std::abs(v)));
  }
  return acc / terms_;
}

double expected_capacity_passive(const EnsembleSpec& spec, double total_power, Method method) {
  const JacobiDensity density = JacobiDensity::for_spec(spec);
  if (!(total_power >= 0.0)) throw Error(ErrorCode::NegativeArgument, "power must be >= 0");
  if (total_power == 0.0) return 0.0;
  const double per_mode = total_power / spec.n_in;
  auto integrand = [&](double lambda) {
    const ModeParams mode{lambda, spec.noise.n, spec.noise.xi};
    return single_mode_capacity(method, mode, per_mode) * density(lambda);
  };
  const AdaptiveIntegral integral = integrate_unit_adaptive(integrand, 1e-8);
  return density.terms() * integral.value;
}

McEstimate summarize(const std::vector<double>& values) {
  McEstimate est;
  est.samples = static_cast<int>(values.size());
  if (values.empty()) return est;
  double sum = 0.0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    est.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return est;
}

namespace {

double largest_gain(const Matrix& hs) {
  if (hs.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(hs);
  const double s = svd.singularValues()(0);
  return s * s;
}

}  // namespace

McResult mc_expected_capacity_passive(const EnsembleSpec& spec, double total_power, Method method,
                                      const McOptions& opts) {
  spec.validate();
  if (opts.samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 samples");
  McResult result;
  result.records.resize(static_cast<std::size_t>(opts.samples));
  detail::parallel_for(opts.samples, opts.threads, [&](int i) {
    Rng rng = Rng::for_stream(spec.seed, static_cast<std::uint64_t>(i));
    const GaussianChannel ch = passive_channel_sample(spec, rng);
    auto& rec = result.records[static_cast<std::size_t>(i)];
    rec.index = i;
    rec.bits = evaluate_channel(ch, total_power, method, opts.eval).bits;
    rec.max_singular_sq = largest_gain(ch.hs().matrix());
  });
  std::vector<double> values;
  values.reserve(result.records.size());
  for (const auto& r : result.records) values.push_back(r.bits);
  result.estimate = summarize(values);
  return result;
}

std::vector<double> deduplicated_spectrum(const Matrix& hs, double pair_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hs * hs.transpose(), Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();  // ascending
  std::vector<double> out;
  for (Index i = 0; i + 1 < ev.size(); i += 2) {
    if (std::abs(ev(i + 1) - ev(i)) > pair_tol) {
      throw Error(ErrorCode::InvalidArgument, "real spectrum is not doubly degenerate");
    }
    out.push_back(0.5 * (ev(i) + ev(i + 1)));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace gausscap
