#pragma once

// Three-level Lambda system on the ordered basis {|b>, |c>, |a>}: Hamiltonian,
// open-system channel families, dark state, the block-diagonalizing
// permutation T and the analytic block matrices used as regression anchors.

#include <vector>

#include "eitlab/master_equation.hpp"

namespace eitlab {

/// Detunings, Rabi frequencies and rates in units of the line width gamma.
struct LambdaParams {
  double delta_b = 0.0;
  double delta_c = 0.0;
  cplx omega_b{0.0, 0.0};
  cplx omega_c{0.0, 0.0};
  double gamma_b = 0.5;
  double gamma_c = 0.5;

  /// delta_b = Delta + delta, delta_c = Delta - delta.
  static LambdaParams from_detunings(double delta, double mean_delta, cplx omega_b, cplx omega_c,
                                     double gamma = 1.0);

  double gamma() const { return gamma_b + gamma_c; }
  double two_photon_detuning() const { return 0.5 * (delta_b - delta_c); }
  double mean_detuning() const { return 0.5 * (delta_b + delta_c); }
};

/// Rates of the channels acting on the ground-state pair. eta_depol is the
/// total isotropic rate; each of the x, y, z axes receives eta_depol / 3.
struct ChannelRates {
  double eta_x = 0.0;
  double eta_y = 0.0;
  double eta_z = 0.0;
  double eta_depol = 0.0;
  double eta_bc = 0.0;
  double eta_cb = 0.0;

  /// Throws Error(InvalidRate) for negative or non-finite entries.
  void validate() const;
  bool all_zero() const;
};

struct DerivedParams {
  double delta = 0.0;
  double mean_delta = 0.0;
  double eta_minus = 0.0;
  double eta_plus = 0.0;
  cplx gamma_total{};  // Gamma: damping of the ground-state coherence
  cplx gamma_b_eff{};  // Gamma_b: damping of the a-b coherence
  cplx gamma_c_eff{};  // Gamma_c: damping of the a-c coherence
};

/// How the spontaneous-decay channels are normalized.
///
/// LineWidth: g_b = (1/2) sqrt(2 gamma_b) (e4 + i e5), so the optical
/// coherences decay at gamma (= gamma_b + gamma_c) and the excited
/// population at 2 gamma. This is the normalization under which the block
/// matrices and closed-form susceptibilities hold.
/// AsPrinted: g_b = (1/2) sqrt(gamma_b) (e4 + i e5), i.e. |b><a| at rate gamma_b.
enum class DecayNormalization { LineWidth, AsPrinted };

CMatrix lambda_hamiltonian(const LambdaParams& p);

/// omega vector of the Lambda Hamiltonian (its traceless part).
RVector omega_vector(const LambdaParams& p);
/// omega0 = Tr[H] / 3 = (2/3) Delta.
double omega_offset(const LambdaParams& p);

/// The omega vector exactly as tabulated component by component, including
/// the -Delta/sqrt(3) coefficient on e8. Only used for erratum reporting.
RVector omega_vector_tabulated(const LambdaParams& p);

/// Decay channels (always), then the x/y/z axis channels and amplitude
/// damping channels whose rates are nonzero.
std::vector<LindbladChannel> standard_channels(const LambdaParams& p, const ChannelRates& r,
                                               DecayNormalization norm = DecayNormalization::LineWidth);

/// assemble(omega_vector(p), standard_channels(p, r, norm)) on su(3).
EvolutionModel lambda_model(const LambdaParams& p, const ChannelRates& r,
                            DecayNormalization norm = DecayNormalization::LineWidth);

/// Normalized dark state (Omega_c |b> - Omega_b |c>) / norm, which satisfies
/// <a|H|d> = 0 for any phases. Throws Error(DegenerateInput) if both fields vanish.
Eigen::Vector3cd dark_state(cplx omega_b, cplx omega_c);

/// The conjugated combination (Omega_c* |b> - Omega_b* |c>) / norm. Decouples
/// from |a> only when Omega_b Omega_c* is real.
Eigen::Vector3cd dark_state_conjugated(cplx omega_b, cplx omega_c);

/// Permutation e1,e2,e3 fixed; e4->e5, e5->e6, e6->e7, e7->e8, e8->e4.
RMatrix transform_T();

struct AnalyticBlocks {
  RMatrix a;  // 4x4, acts on (x1, x2, x3, x8)
  RMatrix b;  // 4x4, acts on (x4, x5, x6, x7)
  RMatrix c;  // 4x4 coupling
  RVector b_prime;

  /// [[A, C], [-C^T, B]]
  RMatrix assembled() const;
};

/// Blocks and b' evaluated exactly as tabulated; depolarization enters with
/// the per-axis rate eta_depol / 3.
AnalyticBlocks analytic_blocks(const LambdaParams& p, const ChannelRates& r);

DerivedParams derived_params(const LambdaParams& p, const ChannelRates& r);

struct BlockDiscrepancy {
  RMatrix a;  // transformed model minus tabulated, per block
  RMatrix b;
  RMatrix c;
  RMatrix minus_ct;  // lower-left block plus C^T
  RVector b_prime;

  double max_abs() const;
};

/// Differences T M T^T - tabulated and T b - tabulated b'.
BlockDiscrepancy compare_blocks(const AnalyticBlocks& tab, const EvolutionModel& model);

}  // namespace eitlab
