#include "gausscap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "gausscap/mode_decomposition.hpp"

namespace gausscap {

namespace {

const double kLn2 = std::log(2.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_power(double total_power) {
  if (!(total_power >= 0.0) || !std::isfinite(total_power)) {
    throw Error(ErrorCode::NegativeArgument, "total power must be finite and >= 0");
  }
}

void check_lengths(std::span<const ModeParams> params, const PowerAllocation& alloc) {
  if (params.size() != alloc.per_mode.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "allocation has " + std::to_string(alloc.per_mode.size()) + " entries for " +
                    std::to_string(params.size()) + " modes");
  }
}

double het_term(const ModeParams& mode, double power) {
  if (mode.lambda <= 0.0 || power <= 0.0) return 0.0;
  const double noise = effective_noise(mode);
  return std::log1p(mode.lambda * power / (noise + 1.0)) / kLn2;
}

double hom_term(const ModeParams& mode, double power) {
  if (mode.lambda <= 0.0 || power <= 0.0) return 0.0;
  const double noise = effective_noise(mode);
  return 0.5 * std::log1p(2.0 * mode.lambda * power / (noise + 0.5)) / kLn2;
}

double holevo_term(const ModeParams& mode, double power) {
  const double noise = effective_noise(mode);
  return entropy_g(mode.lambda * power + noise) - entropy_g(noise);
}

struct Waterfill {
  double level = 0.0;
  std::vector<double> alloc;
};

// Classical water-filling: P_k = (mu - floor_k)^+ with sum P_k = P.
// Infinite floors never receive power.
Waterfill classical_waterfill(std::span<const double> floors, double total_power) {
  Waterfill out;
  out.alloc.assign(floors.size(), 0.0);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < floors.size(); ++i) {
    if (std::isfinite(floors[i])) order.push_back(i);
  }
  if (order.empty()) {
    out.level = kInf;
    return out;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return floors[a] < floors[b]; });
  double sum = 0.0;
  std::size_t active = 0;
  double level = floors[order[0]];
  for (std::size_t m = 1; m <= order.size(); ++m) {
    sum += floors[order[m - 1]];
    level = (total_power + sum) / static_cast<double>(m);
    active = m;
    if (m == order.size() || level <= floors[order[m]]) break;
  }
  out.level = level;
  for (std::size_t j = 0; j < active; ++j) {
    out.alloc[order[j]] = std::max(0.0, level - floors[order[j]]);
  }
  return out;
}

double log_det_ratio_bits(const Matrix& noise, const Matrix& signal) {
  // (1/2) log2 det[I + S N^{-1}] through the whitened signal L^{-1} S L^{-T}.
  if (noise.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(noise, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0 || hi / lo > 1e14) {
    throw Error(ErrorCode::SingularNoise, "noise covariance is numerically singular");
  }
  Eigen::LLT<Matrix> llt(noise);
  const Matrix lower = llt.matrixL();
  Matrix whitened = lower.triangularView<Eigen::Lower>().solve(signal);
  whitened = lower.triangularView<Eigen::Lower>().solve(whitened.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> ws(0.5 * (whitened + whitened.transpose()),
                                           Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (Index i = 0; i < ws.eigenvalues().size(); ++i) {
    acc += std::log1p(std::max(0.0, ws.eigenvalues()(i)));
  }
  return 0.5 * acc / kLn2;
}

void check_modulation(const GaussianChannel& ch, const CovarianceMatrix& v_mod) {
  if (v_mod.modes() != ch.in_modes()) {
    throw Error(ErrorCode::DimensionMismatch,
                "modulation covariance must have " + std::to_string(ch.in_modes()) + " modes");
  }
  if (v_mod.matrix().size() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(v_mod.matrix(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12) {
      throw Error(ErrorCode::InvalidArgument, "modulation covariance must be PSD");
    }
  }
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::holevo: return "holevo";
    case Method::heterodyne: return "het";
    case Method::homodyne: return "hom";
    case Method::classical: return "classical";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "holevo") return Method::holevo;
  if (name == "het" || name == "heterodyne") return Method::heterodyne;
  if (name == "hom" || name == "homodyne") return Method::homodyne;
  if (name == "classical") return Method::classical;
  throw Error(ErrorCode::InvalidArgument, "unknown method \"" + name + "\"");
}

double PowerAllocation::used() const {
  return std::accumulate(per_mode.begin(), per_mode.end(), 0.0);
}

void PowerAllocation::validate(double tol) const {
  for (double p : per_mode) {
    if (!(p >= 0.0)) throw Error(ErrorCode::InvalidArgument, "allocated power must be >= 0");
  }
  if (used() > total + tol) {
    throw Error(ErrorCode::InvalidArgument, "allocation exceeds the power budget");
  }
}

PowerAllocation uniform_allocation(std::size_t modes, double total) {
  PowerAllocation a;
  a.total = total;
  a.per_mode.assign(modes, modes == 0 ? 0.0 : total / static_cast<double>(modes));
  return a;
}

double holevo_diagonal(std::span<const ModeParams> params, const PowerAllocation& alloc) {
  check_lengths(params, alloc);
  double bits = 0.0;
  for (std::size_t k = 0; k < params.size(); ++k) bits += holevo_term(params[k], alloc.per_mode[k]);
  return bits;
}

double het_hom_per_mode(std::span<const ModeParams> params, const PowerAllocation& alloc,
                        Receiver kind) {
  check_lengths(params, alloc);
  double bits = 0.0;
  for (std::size_t k = 0; k < params.size(); ++k) {
    // Validates the noise argument the same way the Holevo sum does.
    if (effective_noise(params[k]) < -1e-12) {
      throw Error(ErrorCode::NegativeArgument, "negative effective noise");
    }
    bits += kind == Receiver::heterodyne ? het_term(params[k], alloc.per_mode[k])
                                         : hom_term(params[k], alloc.per_mode[k]);
  }
  return bits;
}

double single_mode_capacity(Method method, const ModeParams& mode, double power) {
  switch (method) {
    case Method::holevo: return holevo_term(mode, power);
    case Method::heterodyne: return het_term(mode, power);
    case Method::homodyne: return hom_term(mode, power);
    case Method::classical:
      if (mode.xi <= 0.0) {
        throw Error(ErrorCode::ZeroNoiseClassical, "classical capacity needs xi > 0");
      }
      return std::log1p(mode.lambda * power / mode.xi) / kLn2;
  }
  return 0.0;
}

CapacityResult waterfill_holevo(std::span<const ModeParams> params, double total_power) {
  check_power(total_power);
  CapacityResult result;
  result.method = Method::holevo;
  result.allocation.total = total_power;
  result.allocation.per_mode.assign(params.size(), 0.0);

  std::vector<double> noise(params.size());
  bool any_active = false;
  for (std::size_t k = 0; k < params.size(); ++k) {
    noise[k] = effective_noise(params[k]);
    any_active = any_active || params[k].lambda > 0.0;
  }

  // With t = ln(mu) the photon number reached by mode k is 1/expm1(t/lambda_k).
  auto allocate = [&](double t, std::vector<double>& out) {
    double sum = 0.0;
    for (std::size_t k = 0; k < params.size(); ++k) {
      const double lambda = params[k].lambda;
      if (lambda <= 0.0) {
        out[k] = 0.0;
        continue;
      }
      const double reached = 1.0 / std::expm1(t / lambda);
      out[k] = std::max(0.0, reached - noise[k]) / lambda;
      sum += out[k];
    }
    return sum;
  };

  if (!any_active) {
    result.waterlevel = kInf;
    return result;
  }
  if (total_power == 0.0) {
    // Threshold where the first mode switches on.
    double threshold = 1.0;
    for (std::size_t k = 0; k < params.size(); ++k) {
      if (params[k].lambda <= 0.0) continue;
      threshold = noise[k] <= 0.0
                      ? kInf
                      : std::max(threshold, std::pow(1.0 + 1.0 / noise[k], params[k].lambda));
    }
    result.waterlevel = threshold;
    return result;
  }

  std::vector<double> scratch(params.size());
  double lo = std::log1p(1e-12);
  while (allocate(lo, scratch) < total_power) lo *= 0.5;
  double hi = 2.0 * lo;
  while (allocate(hi, scratch) >= total_power) hi *= 2.0;

  // Power is continuous and strictly decreasing in t; bisect geometrically
  // because t spans many decades.
  const double target_tol = 1e-10 * std::max(total_power, 1.0);
  double t = std::sqrt(lo * hi);
  for (int iter = 0; iter < 400; ++iter) {
    t = std::sqrt(lo * hi);
    const double power = allocate(t, scratch);
    if (std::abs(power - total_power) <= target_tol) break;
    if (power > total_power) {
      lo = t;
    } else {
      hi = t;
    }
    if (hi / lo - 1.0 < 1e-15) break;
  }
  const double spent = allocate(t, result.allocation.per_mode);
  if (spent > 0.0) {
    for (double& p : result.allocation.per_mode) p *= total_power / spent;
  }
  result.waterlevel = std::exp(t);
  result.bits = holevo_diagonal(params, result.allocation);
  return result;
}

CapacityResult waterfill_het_hom(std::span<const ModeParams> params, double total_power,
                                 Receiver kind) {
  check_power(total_power);
  // Het: maximize sum log2(1 + P_k/f_k), f_k = (c_k + 1)/lambda_k.
  // Hom: maximize sum (1/2) log2(1 + P_k/f_k), f_k = (c_k + 1/2)/(2 lambda_k).
  // Stationarity gives 1/(a ln2 (f_k + P_k)) = nu for active modes, with
  // a = 1 (het) or 2 (hom), so f_k + P_k is the same for every active mode
  // and the 1/2 prefactor only rescales the multiplier: P_k = (mu - f_k)^+.
  std::vector<double> floors(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    const ModeParams& m = params[k];
    const double c = effective_noise(m);
    if (m.lambda <= 0.0) {
      floors[k] = kInf;
    } else if (kind == Receiver::heterodyne) {
      floors[k] = (c + 1.0) / m.lambda;
    } else {
      floors[k] = (c + 0.5) / (2.0 * m.lambda);
    }
  }
  const Waterfill wf = classical_waterfill(floors, total_power);
  CapacityResult result;
  result.method = kind == Receiver::heterodyne ? Method::heterodyne : Method::homodyne;
  result.allocation.total = total_power;
  result.allocation.per_mode = wf.alloc;
  result.waterlevel = wf.level;
  result.bits = het_hom_per_mode(params, result.allocation, kind);
  return result;
}

CapacityResult classical_capacity(std::span<const double> lambdas, double xi, double total_power) {
  if (!(xi > 0.0)) {
    throw Error(ErrorCode::ZeroNoiseClassical, "classical capacity diverges for xi <= 0");
  }
  check_power(total_power);
  std::vector<double> floors(lambdas.size());
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    floors[k] = lambdas[k] > 0.0 ? xi / lambdas[k] : kInf;
  }
  const Waterfill wf = classical_waterfill(floors, total_power);
  CapacityResult result;
  result.method = Method::classical;
  result.allocation.total = total_power;
  result.allocation.per_mode = wf.alloc;
  result.waterlevel = wf.level;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (lambdas[k] > 0.0) result.bits += std::log1p(lambdas[k] * wf.alloc[k] / xi) / kLn2;
  }
  return result;
}

double classical_uniform(std::span<const double> lambdas, double xi, double total_power,
                         std::size_t input_modes) {
  if (!(xi > 0.0)) {
    throw Error(ErrorCode::ZeroNoiseClassical, "classical capacity diverges for xi <= 0");
  }
  const double per_mode = input_modes == 0 ? 0.0 : total_power / static_cast<double>(input_modes);
  double bits = 0.0;
  for (double lambda : lambdas) bits += std::log1p(lambda * per_mode / xi) / kLn2;
  return bits;
}

double asymptotic_limit(double total_power, Receiver kind) {
  if (!(total_power >= 0.0)) throw Error(ErrorCode::NegativeArgument, "power must be >= 0");
  return (kind == Receiver::heterodyne ? 1.0 : 2.0) * total_power / kLn2;
}

double holevo_general(const GaussianChannel& ch, const CovarianceMatrix& v_mod) {
  check_modulation(ch, v_mod);
  const Matrix& h = ch.hs().matrix();
  const Index n = ch.in_modes();
  const Matrix noise_part = 0.5 * h * h.transpose() + ch.y();
  Matrix averaged = h * (v_mod.matrix() + 0.5 * Matrix::Identity(2 * n, 2 * n)) * h.transpose() +
                    ch.y();
  averaged = 0.5 * (averaged + averaged.transpose());

  const auto nu = symplectic_eigenvalues(CovarianceMatrix(0.5 * (noise_part + noise_part.transpose())));
  const auto nu_bar = symplectic_eigenvalues(CovarianceMatrix(averaged));
  double bits = 0.0;
  for (std::size_t k = 0; k < nu.values.size(); ++k) {
    if (nu.values[k] < 0.5 - 1e-8 || nu_bar.values[k] < 0.5 - 1e-8) {
      throw Error(ErrorCode::UnphysicalOutput,
                  "output symplectic eigenvalue below 1/2: " + std::to_string(nu.values[k]));
    }
    bits += entropy_g(std::max(0.0, nu_bar.values[k] - 0.5)) -
            entropy_g(std::max(0.0, nu.values[k] - 0.5));
  }
  return std::max(0.0, bits);
}

double het_hom_general(const GaussianChannel& ch, const CovarianceMatrix& v_mod, Receiver kind,
                       const std::optional<std::vector<Quadrature>>& measured) {
  check_modulation(ch, v_mod);
  const Matrix& h = ch.hs().matrix();
  const Index k = ch.out_modes();
  const Matrix signal = h * v_mod.matrix() * h.transpose();
  Matrix noise = 0.5 * h * h.transpose() + ch.y();

  if (kind == Receiver::heterodyne) {
    noise += 0.5 * Matrix::Identity(2 * k, 2 * k);
    return log_det_ratio_bits(0.5 * (noise + noise.transpose()), 0.5 * (signal + signal.transpose()));
  }

  std::vector<Quadrature> choice = measured.value_or(std::vector<Quadrature>(
      static_cast<std::size_t>(k), Quadrature::q));
  if (static_cast<Index>(choice.size()) != k) {
    throw Error(ErrorCode::DimensionMismatch, "homodyne needs one quadrature per output mode");
  }
  Matrix proj = Matrix::Zero(k, 2 * k);
  for (Index j = 0; j < k; ++j) {
    proj(j, choice[static_cast<std::size_t>(j)] == Quadrature::q ? j : k + j) = 1.0;
  }
  const Matrix s_hom = proj * signal * proj.transpose();
  const Matrix n_hom = proj * noise * proj.transpose();
  return log_det_ratio_bits(0.5 * (n_hom + n_hom.transpose()), 0.5 * (s_hom + s_hom.transpose()));
}

namespace {

ChannelEvaluation evaluate_diagonal(const GaussianChannel& ch, std::span<const ModeParams> params,
                                    double total_power, Method method,
                                    const ChannelEvalOptions& opts) {
  const std::size_t transmitting = static_cast<std::size_t>(std::min(ch.in_modes(), ch.out_modes()));
  ChannelEvaluation out;
  out.diagonal = true;

  if (method == Method::classical) {
    std::vector<double> lambdas;
    for (const auto& m : params) lambdas.push_back(m.lambda);
    out.bits = opts.waterfill
                   ? classical_capacity(lambdas, ch.noise().xi, total_power).bits
                   : classical_uniform(lambdas, ch.noise().xi, total_power,
                                       static_cast<std::size_t>(ch.in_modes()));
    return out;
  }
  if (opts.waterfill) {
    out.bits = method == Method::holevo
                   ? waterfill_holevo(params, total_power).bits
                   : waterfill_het_hom(params, total_power,
                                       method == Method::heterodyne ? Receiver::heterodyne
                                                                    : Receiver::homodyne)
                         .bits;
    return out;
  }
  // Each of the N inputs carries P/N; only min(K, N) singular modes reach the
  // receiver and trailing zero-transmission modes carry nothing.
  PowerAllocation alloc;
  alloc.total = total_power;
  alloc.per_mode.assign(params.size(), 0.0);
  for (std::size_t j = 0; j < transmitting; ++j) {
    alloc.per_mode[j] = total_power / static_cast<double>(ch.in_modes());
  }
  out.bits = method == Method::holevo ? holevo_diagonal(params, alloc)
             : method == Method::heterodyne
                 ? het_hom_per_mode(params, alloc, Receiver::heterodyne)
                 : het_hom_per_mode(params, alloc, Receiver::homodyne);
  return out;
}

// Homodyne on the singular modes of the phase-insensitive part of H_s. After
// the matching passive rotation each mode k is driven along one input
// quadrature and read out along one output quadrature; the pair maximizes the
// mode's signal-to-noise ratio e^T H_k H_k^T e / e^T Y_k e. Modes whose ratio
// does not depend on the angle (all block-form channels) keep q -> q, which
// reduces to the per-mode homodyne sum.
double homodyne_normal_modes(const GaussianChannel& ch, double total_power) {
  const ModeDecomposition dec = block_svd(nearest_block_form(ch.hs()), 1e-9);
  const Index n = ch.in_modes();
  const Index k_out = ch.out_modes();
  Matrix h = dec.u.matrix().transpose() * ch.hs().matrix() * dec.w.matrix();
  Matrix y = dec.u.matrix().transpose() * ch.y() * dec.u.matrix();
  y = 0.5 * (y + y.transpose());

  Matrix r_out = Matrix::Identity(2 * k_out, 2 * k_out);
  Matrix r_in = Matrix::Identity(2 * n, 2 * n);
  for (Index k = 0; k < std::min(n, k_out); ++k) {
    Eigen::Matrix2d hk;
    hk << h(k, k), h(k, n + k), h(k_out + k, k), h(k_out + k, n + k);
    Eigen::Matrix2d yk;
    yk << y(k, k), y(k, k_out + k), y(k_out + k, k), y(k_out + k, k_out + k);
    const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> ges(hk * hk.transpose(), yk);
    if (ges.info() != Eigen::Success) continue;
    const Eigen::Vector2d mu = ges.eigenvalues();
    if (!(mu(1) - mu(0) > 1e-12 * std::max(std::abs(mu(1)), 1.0))) continue;
    const Eigen::Vector2d e = ges.eigenvectors().col(1).normalized();
    const Eigen::Vector2d f = (hk.transpose() * e).normalized();
    r_out(k, k) = e(0);
    r_out(k, k_out + k) = e(1);
    r_out(k_out + k, k) = -e(1);
    r_out(k_out + k, k_out + k) = e(0);
    r_in(k, k) = f(0);
    r_in(k, n + k) = f(1);
    r_in(n + k, k) = -f(1);
    r_in(n + k, n + k) = f(0);
  }
  h = r_out * h * r_in.transpose();
  y = r_out * y * r_out.transpose();
  GaussianChannel rotated(PhaseSpaceMatrix(std::move(h)), 0.5 * (y + y.transpose()), ch.noise(),
                          1e-9);
  Matrix v = Matrix::Zero(2 * n, 2 * n);
  v.topLeftCorner(n, n) = (2.0 * total_power / static_cast<double>(n)) * Matrix::Identity(n, n);
  return het_hom_general(rotated, CovarianceMatrix(std::move(v)), Receiver::homodyne);
}

}  // namespace

ChannelEvaluation evaluate_channel(const GaussianChannel& ch, double total_power, Method method,
                                   const ChannelEvalOptions& opts) {
  check_power(total_power);
  const bool raw_homodyne =
      method == Method::homodyne && opts.homodyne_basis == HomodyneBasis::raw;
  if (!raw_homodyne && is_block_form(ch.hs().matrix(), opts.tol.block_form)) {
    try {
      const auto params = diagonal_channel_params(ch, opts.tol);
      return evaluate_diagonal(ch, params, total_power, method, opts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonThermalNoise) throw;
    }
  }

  const Index n = ch.in_modes();
  const double per_mode = total_power / static_cast<double>(n);
  const CovarianceMatrix symmetric(per_mode * Matrix::Identity(2 * n, 2 * n));
  ChannelEvaluation out;
  switch (method) {
    case Method::holevo:
      out.bits = holevo_general(ch, symmetric);
      break;
    case Method::heterodyne:
      out.bits = het_hom_general(ch, symmetric, Receiver::heterodyne);
      break;
    case Method::homodyne:
      out.bits = raw_homodyne ? het_hom_general(ch, symmetric, Receiver::homodyne)
                              : homodyne_normal_modes(ch, total_power);
      break;
    case Method::classical:
      throw Error(ErrorCode::NotBlockForm,
                  "the classical baseline needs a block-form channel with thermal noise");
  }
  return out;
}

}  // namespace gausscap
