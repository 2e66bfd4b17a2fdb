#ifndef GAUSSCAP_CAPACITY_HPP
#define GAUSSCAP_CAPACITY_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gausscap/channel.hpp"

namespace gausscap {

enum class Method { holevo, heterodyne, homodyne, classical };

enum class Receiver { heterodyne, homodyne };

enum class Quadrature { q, p };

const char* to_string(Method m);
Method parse_method(const std::string& name);  // holevo|het|hom|classical

/// Mean photon numbers per singular mode under a total budget.
struct PowerAllocation {
  std::vector<double> per_mode;
  double total = 0.0;

  double used() const;
  void validate(double tol = 1e-9) const;
};

PowerAllocation uniform_allocation(std::size_t modes, double total);

struct CapacityResult {
  double bits = 0.0;
  Method method = Method::holevo;
  PowerAllocation allocation;
  std::optional<double> waterlevel;  // set iff the allocation was optimized
};

// ---- Diagonal (parallel single-mode) channels ------------------------------

double holevo_diagonal(std::span<const ModeParams> params, const PowerAllocation& alloc);

double het_hom_per_mode(std::span<const ModeParams> params, const PowerAllocation& alloc,
                        Receiver kind);

/// Single-mode capacity of one subchannel driven with `power` photons.
double single_mode_capacity(Method method, const ModeParams& mode, double power);

/// Optimal Holevo allocation. The waterlevel mu > 1 solves
///   P = sum_k (1/lambda_k) { 1/(mu^{1/lambda_k} - 1) - c_k }^+
/// with c_k the effective noise of mode k.
CapacityResult waterfill_holevo(std::span<const ModeParams> params, double total_power);

/// Optimal allocation for heterodyne/homodyne sums: P_k = (mu - f_k)^+.
CapacityResult waterfill_het_hom(std::span<const ModeParams> params, double total_power,
                                 Receiver kind);

/// Classical MIMO baseline with additive noise xi > 0.
CapacityResult classical_capacity(std::span<const double> lambdas, double xi, double total_power);

double classical_uniform(std::span<const double> lambdas, double xi, double total_power,
                         std::size_t input_modes);

/// N -> infinity limit for the identity channel with uniform power.
double asymptotic_limit(double total_power, Receiver kind);

// ---- General (non-decomposable) channels -----------------------------------

/// Holevo information of a Gaussian coherent-state ensemble with modulation
/// covariance v_mod on the channel inputs.
double holevo_general(const GaussianChannel& ch, const CovarianceMatrix& v_mod);

/// Mutual information of a Gaussian receiver. For homodyne, `measured`
/// picks one quadrature per output mode; by default every q is measured.
double het_hom_general(const GaussianChannel& ch, const CovarianceMatrix& v_mod, Receiver kind,
                       const std::optional<std::vector<Quadrature>>& measured = std::nullopt);

// ---- Uniform-power evaluation of a whole channel ---------------------------

enum class HomodyneBasis {
  normal_modes,  // rotate to the singular modes of the phase-insensitive part
  raw,           // measure q of the given output modes, symmetric modulation
};

struct ChannelEvalOptions {
  bool waterfill = false;  // diagonal channels only
  HomodyneBasis homodyne_basis = HomodyneBasis::normal_modes;
  Tolerances tol{};
};

struct ChannelEvaluation {
  double bits = 0.0;
  bool diagonal = false;  // fast path used
};

/// Capacity of `ch` with total power P split evenly across its N inputs.
/// Block-form channels with thermal noise go through the singular-mode
/// formulas; everything else through the general Gaussian expressions.
ChannelEvaluation evaluate_channel(const GaussianChannel& ch, double total_power, Method method,
                                   const ChannelEvalOptions& opts = {});

}  // namespace gausscap

#endif  // GAUSSCAP_CAPACITY_HPP
