#include "eitlab/response.hpp"

#include <cmath>
#include <numbers>

#include "eitlab/errors.hpp"
#include "eitlab/steady_state.hpp"

namespace eitlab {

namespace {

constexpr double kPoleTolerance = 1e-14;
constexpr double kRegimeRatio = 1e-3;

cplx divide(cplx num, cplx den, double den_scale, double delta, const char* what) {
  if (!(std::abs(den) > kPoleTolerance * den_scale)) {
    throw PoleError(delta, std::string("vanishing denominator in ") + what);
  }
  return num / den;
}

void require_zero(bool ok, ChannelKind kind) {
  if (!ok) {
    throw Error(ErrorKind::InvalidRate,
                "rates outside the " + std::string(to_string(kind)) + " family must be zero for its closed form");
  }
}

cplx chi_ideal(double dl, double md, double g, double o2) {
  const cplx den = 2.0 * dl * cplx(dl + md, g) - o2;
  const double scale = 2.0 * std::abs(dl) * (std::abs(dl) + std::abs(md) + g) + o2;
  return -divide(2.0 * dl, den, scale, dl, "ideal susceptibility");
}

cplx chi_dephase(double dl, double md, double g, double o2, double ez) {
  const cplx a(dl, ez);
  const cplx den = a * cplx(dl + md, g + 0.5 * ez) - 0.5 * o2;
  const double scale = std::abs(a) * std::abs(cplx(dl + md, g + 0.5 * ez)) + 0.5 * o2;
  return -divide(a, den, scale, dl, "dephasing susceptibility");
}

cplx chi_damp_bc(double dl, double md, double g, double o2, double e) {
  const cplx a(dl, 0.25 * e);
  const cplx den = a * cplx(dl + md, g) - 0.5 * o2;
  const double scale = std::abs(a) * std::abs(cplx(dl + md, g)) + 0.5 * o2;
  return -divide(a, den, scale, dl, "b<-c damping susceptibility");
}

cplx chi_damp_cb(double dl, double md, double g, double o2, double e) {
  const cplx num = 2.0 * (g * cplx(e, 4.0 * dl) + e * cplx(e, -2.0 * (dl + md))) * o2;
  const cplx f1 = cplx(e, -4.0 * dl) * cplx(2.0 * (dl + md), 2.0 * g + e) + cplx(0.0, 4.0 * o2);
  const double f2 = (g * g + (dl - md) * (dl - md)) * e + (g + 2.0 * e) * o2;
  const double s1 = std::abs(cplx(e, 4.0 * dl)) * std::abs(cplx(2.0 * (dl + md), 2.0 * g + e)) + 4.0 * o2;
  const double s2 = (g * g + (dl - md) * (dl - md)) * e + (g + 2.0 * e) * o2;
  return divide(num, f1 * f2, s1 * s2, dl, "c<-b damping susceptibility");
}

cplx chi_popex(double dl, double md, double g, double o2, double e) {
  const double lorentz = 4.0 * (dl - md) * (dl - md) + (2.0 * g + e) * (2.0 * g + e);
  const cplx num = -g * e * cplx(2.0 * dl, e) * lorentz + 4.0 * g * (-2.0 * g * dl + (-2.0 * dl + md) * e) * o2;
  const cplx f1 = cplx(2.0 * dl, e) * cplx(2.0 * (dl + md), 2.0 * g + e) - 2.0 * o2;
  const double f2 = g * e * lorentz + (2.0 * g + e) * (g + 3.0 * e) * o2;
  const double s1 = std::abs(cplx(2.0 * dl, e)) * std::abs(cplx(2.0 * (dl + md), 2.0 * g + e)) + 2.0 * o2;
  return divide(num, f1 * f2, s1 * f2, dl, "population exchange susceptibility");
}

cplx chi_depol(double dl, double md, double g, double o2, double e) {
  const double lorentz = 4.0 * (dl - md) * (dl - md) + (2.0 * g + e) * (2.0 * g + e);
  const cplx inner = e * cplx(3.0 * dl, 2.0 * e) * lorentz +
                     3.0 * (g * cplx(6.0 * dl, 2.0 * e) + cplx(5.0 * dl - 2.0 * md, e) * e) * o2;
  const cplx num = cplx(0.0, 2.0 * g) * inner;
  const cplx f1 = cplx(3.0 * dl, 2.0 * e) * cplx(2.0 * g + e, -2.0 * (dl + md)) + cplx(0.0, 3.0 * o2);
  const double f2 = 2.0 * g * e * lorentz + 3.0 * (2.0 * g + e) * (g + 2.0 * e) * o2;
  const double s1 = std::abs(cplx(3.0 * dl, 2.0 * e)) * std::abs(cplx(2.0 * g + e, -2.0 * (dl + md))) + 3.0 * o2;
  return divide(num, f1 * f2, s1 * f2, dl, "depolarization susceptibility");
}

// The compact general expression; the complex damping parameters
// Gamma, Gamma_b, Gamma_c are those of derived_params (per-axis depolarization).
cplx chi_general(double dl, double md, double g, double o2, const ChannelRates& r) {
  const double eta = r.eta_depol / 3.0;
  const double em = 0.5 * (r.eta_bc - r.eta_cb);
  const double ep = r.eta_bc + r.eta_cb + 4.0 * eta;
  const cplx gb(g + 0.5 * (3.0 * eta + r.eta_cb + r.eta_z), md + dl);
  const cplx gc(g + 0.5 * (3.0 * eta + r.eta_bc + r.eta_z), md - dl);
  const cplx gt(0.5 * (r.eta_bc + r.eta_cb) + 4.0 * eta + 2.0 * r.eta_z, 2.0 * dl);
  const cplx num = o2 * (2.0 * std::conj(gt) * gc.real() * (g + 2.0 * em) + g * std::conj(gc) * (2.0 * em - ep)) +
                   g * (2.0 * em + ep) * std::conj(gt) * std::norm(gc);
  const cplx f1 = o2 + std::conj(gt) * std::conj(gb);
  const double f2 = o2 * gc.real() * (2.0 * g - 2.0 * em + 3.0 * ep) + 2.0 * g * ep * std::norm(gc);
  const double s1 = o2 + std::abs(gt) * std::abs(gb);
  const double s2 = o2 * gc.real() * std::abs(2.0 * g - 2.0 * em + 3.0 * ep) + 2.0 * g * ep * std::norm(gc);
  return kI * divide(num, f1 * f2, s1 * s2, dl, "general susceptibility");
}

LambdaParams at_delta(const LambdaParams& p, double delta) {
  LambdaParams q = p;
  const double md = p.mean_detuning();
  q.delta_b = md + delta;
  q.delta_c = md - delta;
  return q;
}

}  // namespace

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Ideal: return "ideal";
    case ChannelKind::Dephase: return "dephase";
    case ChannelKind::Depol: return "depol";
    case ChannelKind::DampBc: return "damp_bc";
    case ChannelKind::DampCb: return "damp_cb";
    case ChannelKind::Popex: return "popex";
    case ChannelKind::General: return "general";
  }
  return "unknown";
}

ChannelKind parse_channel_kind(std::string_view name) {
  for (ChannelKind kind : kAllKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorKind::Config, "unknown channel kind '" + std::string(name) + "'");
}

ChannelRates rates_for_kind(ChannelKind kind, double rate) {
  ChannelRates r;
  switch (kind) {
    case ChannelKind::Dephase: r.eta_z = rate; break;
    case ChannelKind::Depol: r.eta_depol = rate; break;
    case ChannelKind::DampBc: r.eta_bc = rate; break;
    case ChannelKind::DampCb: r.eta_cb = rate; break;
    case ChannelKind::Popex: r.eta_bc = r.eta_cb = rate; break;
    case ChannelKind::Ideal:
    case ChannelKind::General: break;
  }
  r.validate();
  return r;
}

NumericResponse steady_response(const LambdaParams& p, const ChannelRates& r, double kappa) {
  const double probe = std::abs(p.omega_b);
  if (!(probe > 0.0) || probe > kRegimeRatio * std::abs(p.omega_c)) {
    throw Error(ErrorKind::Regime, "probe must satisfy 0 < |Omega_b| <= 1e-3 |Omega_c|");
  }
  NumericResponse out;
  out.x = asymptotic(lambda_model(p, r));
  out.chi = kappa * cplx(out.x(3), out.x(4)) / p.omega_b;
  return out;
}

cplx susceptibility_numeric(const LambdaParams& p, const ChannelRates& r, double kappa) {
  return steady_response(p, r, kappa).chi;
}

cplx chi_closed_form(ChannelKind kind, double delta, double mean_delta, const LambdaParams& p,
                     const ChannelRates& r, double kappa) {
  r.validate();
  const double g = p.gamma();
  const double o2 = std::norm(p.omega_c);
  const bool xy_zero = r.eta_x == 0.0 && r.eta_y == 0.0;
  cplx value;
  switch (kind) {
    case ChannelKind::Ideal:
      require_zero(r.all_zero(), kind);
      value = chi_ideal(delta, mean_delta, g, o2);
      break;
    case ChannelKind::Dephase:
      require_zero(xy_zero && r.eta_depol == 0.0 && r.eta_bc == 0.0 && r.eta_cb == 0.0, kind);
      value = chi_dephase(delta, mean_delta, g, o2, r.eta_z);
      break;
    case ChannelKind::Depol:
      require_zero(xy_zero && r.eta_z == 0.0 && r.eta_bc == 0.0 && r.eta_cb == 0.0, kind);
      value = r.eta_depol == 0.0 ? chi_ideal(delta, mean_delta, g, o2)
                                 : chi_depol(delta, mean_delta, g, o2, r.eta_depol);
      break;
    case ChannelKind::DampBc:
      require_zero(xy_zero && r.eta_z == 0.0 && r.eta_depol == 0.0 && r.eta_cb == 0.0, kind);
      value = chi_damp_bc(delta, mean_delta, g, o2, r.eta_bc);
      break;
    case ChannelKind::DampCb:
      require_zero(xy_zero && r.eta_z == 0.0 && r.eta_depol == 0.0 && r.eta_bc == 0.0, kind);
      value = r.eta_cb == 0.0 ? chi_ideal(delta, mean_delta, g, o2)
                              : chi_damp_cb(delta, mean_delta, g, o2, r.eta_cb);
      break;
    case ChannelKind::Popex:
      require_zero(xy_zero && r.eta_z == 0.0 && r.eta_depol == 0.0 && r.eta_bc == r.eta_cb, kind);
      value = r.eta_bc == 0.0 ? chi_ideal(delta, mean_delta, g, o2)
                              : chi_popex(delta, mean_delta, g, o2, r.eta_bc);
      break;
    case ChannelKind::General:
      require_zero(xy_zero, kind);
      value = r.all_zero() ? chi_ideal(delta, mean_delta, g, o2) : chi_general(delta, mean_delta, g, o2, r);
      break;
  }
  return kappa * value;
}

cplx chi(ChannelKind kind, ChiMethod method, const LambdaParams& p, const ChannelRates& r, double kappa) {
  if (method == ChiMethod::Numeric) return susceptibility_numeric(p, r, kappa);
  return chi_closed_form(kind, p.two_photon_detuning(), p.mean_detuning(), p, r, kappa);
}

double default_slope_step(const LambdaParams& p) {
  const double g = p.gamma();
  return 1e-4 * std::max(g, std::norm(p.omega_c) / g);
}

SlopeEstimate chi_slope(ChannelKind kind, const LambdaParams& p, const ChannelRates& r, double step,
                        ChiMethod method, double kappa) {
  if (!(step > 0.0)) throw Error(ErrorKind::Stencil, "finite-difference step must be positive");
  const double center = p.two_photon_detuning();
  auto re_chi = [&](double delta) {
    try {
      return chi(kind, method, at_delta(p, delta), r, kappa).real();
    } catch (const PoleError& e) {
      throw Error(ErrorKind::Stencil, std::string("pole within finite-difference stencil: ") + e.what());
    }
  };
  auto central = [&](double h) { return (re_chi(center + h) - re_chi(center - h)) / (2.0 * h); };
  // The stencil straddles the center; a pole there has no slope.
  re_chi(center);
  const double d1 = central(step);
  const double d2 = central(0.5 * step);
  const double d4 = central(0.25 * step);
  const double r1 = (4.0 * d2 - d1) / 3.0;
  const double r2 = (4.0 * d4 - d2) / 3.0;
  const double denom = std::max(std::abs(r2), std::numeric_limits<double>::min());
  return SlopeEstimate{r1, std::abs(r1 - r2) / denom};
}

double group_index(ChannelKind kind, const LambdaParams& p, const ChannelRates& r, double omega_probe,
                   double step, ChiMethod method, double kappa) {
  return 0.5 * omega_probe * chi_slope(kind, p, r, step, method, kappa).value;
}

double absorption(cplx chi_value, double wavelength) {
  if (!(wavelength > 0.0)) throw Error(ErrorKind::InvalidRate, "wavelength must be positive");
  return 2.0 * std::numbers::pi / wavelength * chi_value.imag();
}

OpticalResponse optical_response(ChannelKind kind, const LambdaParams& p, const ChannelRates& r, ChiMethod method,
                                 double kappa, double wavelength) {
  OpticalResponse out;
  out.kappa = kappa;
  out.wavelength = wavelength;
  out.chi = chi(kind, method, p, r, kappa);
  out.n_g_integrand = chi_slope(kind, p, r, default_slope_step(p), method, kappa).value;
  out.alpha = absorption(out.chi, wavelength);
  return out;
}

NormalizedRates normalized_rates(double eta_z) {
  if (!std::isfinite(eta_z) || eta_z < 0.0) throw Error(ErrorKind::InvalidRate, "eta_z must be nonnegative");
  NormalizedRates out;
  out.dephase = rates_for_kind(ChannelKind::Dephase, eta_z);
  out.damp_bc = rates_for_kind(ChannelKind::DampBc, 4.0 * eta_z);
  out.damp_cb = rates_for_kind(ChannelKind::DampCb, 4.0 * eta_z);
  out.popex = rates_for_kind(ChannelKind::Popex, 4.0 * eta_z);
  out.depol = rates_for_kind(ChannelKind::Depol, 1.5 * eta_z);
  return out;
}

ChannelRates NormalizedRates::for_kind(ChannelKind kind) const {
  switch (kind) {
    case ChannelKind::Dephase: return dephase;
    case ChannelKind::DampBc: return damp_bc;
    case ChannelKind::DampCb: return damp_cb;
    case ChannelKind::Popex: return popex;
    case ChannelKind::Depol: return depol;
    case ChannelKind::Ideal: return {};
    case ChannelKind::General: break;
  }
  throw Error(ErrorKind::Config, "the general channel set has no normalized rates");
}

}  // namespace eitlab
