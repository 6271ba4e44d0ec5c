#pragma once

// Linear optical response of the Lambda system: susceptibility from the
// steady state and from closed-form expressions, group index and absorption.

#include <optional>
#include <string>
#include <string_view>

#include "eitlab/lambda_model.hpp"

namespace eitlab {

enum class ChannelKind { Ideal, Dephase, Depol, DampBc, DampCb, Popex, General };

std::string_view to_string(ChannelKind kind);
/// Accepts ideal, dephase, depol, damp_bc, damp_cb, popex, general.
ChannelKind parse_channel_kind(std::string_view name);
inline constexpr ChannelKind kAllKinds[] = {ChannelKind::Ideal,  ChannelKind::Dephase, ChannelKind::Depol,
                                            ChannelKind::DampBc, ChannelKind::DampCb,  ChannelKind::Popex,
                                            ChannelKind::General};

/// Rates for a single channel family at one rate (popex sets both damping rates).
/// General and Ideal return all-zero rates.
ChannelRates rates_for_kind(ChannelKind kind, double rate);

enum class ChiMethod { ClosedForm, Numeric };

struct OpticalResponse {
  cplx chi{};                  // units of kappa
  double n_g_integrand = 0.0;  // d Re(chi) / d delta
  double alpha = 0.0;          // (2 pi / wavelength) Im(chi)
  double kappa = 1.0;
  double wavelength = 2.0 * 3.14159265358979323846;
};

/// Steady state and susceptibility of the full dynamics.
struct NumericResponse {
  CoherenceVector x;
  cplx chi{};
};

/// kappa (x4 + i x5) / Omega_b at the asymptotic state. Requires
/// 0 < |Omega_b| <= 1e-3 |Omega_c| (Error(Regime) otherwise).
cplx susceptibility_numeric(const LambdaParams& p, const ChannelRates& r, double kappa = 1.0);
NumericResponse steady_response(const LambdaParams& p, const ChannelRates& r, double kappa = 1.0);

/// Closed-form chi for one channel family at (delta, Delta); gamma and
/// |Omega_c| come from p. Rates outside the selected family must be zero
/// (Error(InvalidRate)); popex needs eta_bc == eta_cb; general needs
/// eta_x == eta_y == 0. Throws PoleError on a vanishing denominator.
cplx chi_closed_form(ChannelKind kind, double delta, double mean_delta, const LambdaParams& p,
                     const ChannelRates& r, double kappa = 1.0);

/// chi at p's own detunings by either route.
cplx chi(ChannelKind kind, ChiMethod method, const LambdaParams& p, const ChannelRates& r, double kappa = 1.0);

struct SlopeEstimate {
  double value = 0.0;          // Richardson-extrapolated d Re(chi) / d delta
  double step_change = 0.0;    // relative change of the estimate when the step is halved
};

/// 1e-4 * max(gamma, |Omega_c|^2 / gamma)
double default_slope_step(const LambdaParams& p);

/// d Re(chi)/d delta at p's two-photon detuning, Delta held fixed. A pole
/// inside the stencil raises Error(Stencil).
SlopeEstimate chi_slope(ChannelKind kind, const LambdaParams& p, const ChannelRates& r, double step,
                        ChiMethod method = ChiMethod::ClosedForm, double kappa = 1.0);

/// n_g = omega_probe * d Re(chi)/d delta / 2
double group_index(ChannelKind kind, const LambdaParams& p, const ChannelRates& r, double omega_probe,
                   double step, ChiMethod method = ChiMethod::ClosedForm, double kappa = 1.0);

/// alpha = (2 pi / wavelength) Im(chi). Throws Error(InvalidRate) for wavelength <= 0.
double absorption(cplx chi, double wavelength);

OpticalResponse optical_response(ChannelKind kind, const LambdaParams& p, const ChannelRates& r,
                                 ChiMethod method = ChiMethod::ClosedForm, double kappa = 1.0,
                                 double wavelength = 2.0 * 3.14159265358979323846);

/// Rate settings with matched first-order slow-down:
/// eta_z = eta_bc / 4 = eta_cb / 4 = eta_pe / 4 = 2 eta / 3.
struct NormalizedRates {
  ChannelRates dephase;
  ChannelRates damp_bc;
  ChannelRates damp_cb;
  ChannelRates popex;
  ChannelRates depol;

  /// Ideal gets zero rates; General is not a normalized family.
  ChannelRates for_kind(ChannelKind kind) const;
};

NormalizedRates normalized_rates(double eta_z);

}  // namespace eitlab
