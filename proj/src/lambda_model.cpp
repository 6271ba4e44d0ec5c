#include "eitlab/lambda_model.hpp"

#include <cmath>

#include "eitlab/errors.hpp"

namespace eitlab {

namespace {

const double kSqrt3 = std::sqrt(3.0);

CVector unit(int one_based) {
  CVector e = CVector::Zero(8);
  e(one_based - 1) = 1.0;
  return e;
}

void rotation_block(RMatrix& m, int offset, cplx rate) {
  m(offset, offset) = -rate.real();
  m(offset, offset + 1) = -rate.imag();
  m(offset + 1, offset) = rate.imag();
  m(offset + 1, offset + 1) = -rate.real();
}

}  // namespace

LambdaParams LambdaParams::from_detunings(double delta, double mean_delta, cplx omega_b, cplx omega_c,
                                          double gamma) {
  LambdaParams p;
  p.delta_b = mean_delta + delta;
  p.delta_c = mean_delta - delta;
  p.omega_b = omega_b;
  p.omega_c = omega_c;
  p.gamma_b = 0.5 * gamma;
  p.gamma_c = 0.5 * gamma;
  return p;
}

void ChannelRates::validate() const {
  for (double rate : {eta_x, eta_y, eta_z, eta_depol, eta_bc, eta_cb}) {
    if (!std::isfinite(rate) || rate < 0.0) {
      throw Error(ErrorKind::InvalidRate, "channel rates must be finite and nonnegative");
    }
  }
}

bool ChannelRates::all_zero() const {
  return eta_x == 0.0 && eta_y == 0.0 && eta_z == 0.0 && eta_depol == 0.0 && eta_bc == 0.0 && eta_cb == 0.0;
}

CMatrix lambda_hamiltonian(const LambdaParams& p) {
  CMatrix h = CMatrix::Zero(3, 3);
  h(0, 0) = p.delta_b;
  h(1, 1) = p.delta_c;
  h(2, 0) = -p.omega_b;
  h(2, 1) = -p.omega_c;
  h(0, 2) = -std::conj(p.omega_b);
  h(1, 2) = -std::conj(p.omega_c);
  return h;
}

RVector omega_vector(const LambdaParams& p) {
  RVector w = RVector::Zero(8);
  w(2) = p.two_photon_detuning();
  w(3) = -p.omega_b.real();
  w(4) = -p.omega_b.imag();
  w(5) = -p.omega_c.real();
  w(6) = -p.omega_c.imag();
  w(7) = p.mean_detuning() / kSqrt3;
  return w;
}

double omega_offset(const LambdaParams& p) { return 2.0 * p.mean_detuning() / 3.0; }

RVector omega_vector_tabulated(const LambdaParams& p) {
  RVector w = omega_vector(p);
  w(7) = -p.mean_detuning() / kSqrt3;
  return w;
}

std::vector<LindbladChannel> standard_channels(const LambdaParams& p, const ChannelRates& r,
                                               DecayNormalization norm) {
  r.validate();
  if (!(p.gamma_b >= 0.0) || !(p.gamma_c >= 0.0) || !std::isfinite(p.gamma_b) || !std::isfinite(p.gamma_c)) {
    throw Error(ErrorKind::InvalidRate, "decay rates must be finite and nonnegative");
  }
  const double scale = norm == DecayNormalization::LineWidth ? 2.0 : 1.0;
  std::vector<LindbladChannel> out;
  out.push_back({"decay_b", 0.5 * std::sqrt(scale * p.gamma_b) * (unit(4) + kI * unit(5))});
  out.push_back({"decay_c", 0.5 * std::sqrt(scale * p.gamma_c) * (unit(6) + kI * unit(7))});

  const double per_axis = r.eta_depol / 3.0;
  const double axis_rates[3] = {r.eta_x + per_axis, r.eta_y + per_axis, r.eta_z + per_axis};
  const char* axis_labels[3] = {"axis_x", "axis_y", "axis_z"};
  for (int i = 0; i < 3; ++i) {
    if (axis_rates[i] > 0.0) out.push_back({axis_labels[i], std::sqrt(axis_rates[i]) * unit(i + 1)});
  }
  if (r.eta_bc > 0.0) out.push_back({"damp_bc", 0.5 * std::sqrt(r.eta_bc) * (unit(1) + kI * unit(2))});
  if (r.eta_cb > 0.0) out.push_back({"damp_cb", 0.5 * std::sqrt(r.eta_cb) * (unit(1) - kI * unit(2))});
  return out;
}

EvolutionModel lambda_model(const LambdaParams& p, const ChannelRates& r, DecayNormalization norm) {
  const auto channels = standard_channels(p, r, norm);
  return assemble(omega_vector(p), channels, su3().sc);
}

Eigen::Vector3cd dark_state(cplx omega_b, cplx omega_c) {
  const double norm = std::sqrt(std::norm(omega_b) + std::norm(omega_c));
  if (norm == 0.0) throw Error(ErrorKind::DegenerateInput, "dark state needs a nonzero Rabi frequency");
  return Eigen::Vector3cd(omega_c / norm, -omega_b / norm, 0.0);
}

Eigen::Vector3cd dark_state_conjugated(cplx omega_b, cplx omega_c) {
  const double norm = std::sqrt(std::norm(omega_b) + std::norm(omega_c));
  if (norm == 0.0) throw Error(ErrorKind::DegenerateInput, "dark state needs a nonzero Rabi frequency");
  return Eigen::Vector3cd(std::conj(omega_c) / norm, -std::conj(omega_b) / norm, 0.0);
}

RMatrix transform_T() {
  RMatrix t = RMatrix::Zero(8, 8);
  // (target, source), one-based
  const int pairs[8][2] = {{1, 1}, {2, 2}, {3, 3}, {5, 4}, {6, 5}, {7, 6}, {8, 7}, {4, 8}};
  for (const auto& pr : pairs) t(pr[0] - 1, pr[1] - 1) = 1.0;
  return t;
}

DerivedParams derived_params(const LambdaParams& p, const ChannelRates& r) {
  // Per-axis depolarization rate.
  const double eta = r.eta_depol / 3.0;
  const double gamma = p.gamma();
  DerivedParams d;
  d.delta = p.two_photon_detuning();
  d.mean_delta = p.mean_detuning();
  d.eta_minus = 0.5 * (r.eta_bc - r.eta_cb);
  d.eta_plus = r.eta_bc + r.eta_cb + 4.0 * eta;
  d.gamma_b_eff = cplx(gamma + 0.5 * (3.0 * eta + r.eta_cb + r.eta_z), p.delta_b);
  d.gamma_c_eff = cplx(gamma + 0.5 * (3.0 * eta + r.eta_bc + r.eta_z), p.delta_c);
  d.gamma_total = cplx(0.5 * (r.eta_bc + r.eta_cb) + 4.0 * eta + 2.0 * r.eta_z, 2.0 * d.delta);
  return d;
}

AnalyticBlocks analytic_blocks(const LambdaParams& p, const ChannelRates& r) {
  const DerivedParams d = derived_params(p, r);
  const double gamma = p.gamma();
  AnalyticBlocks out{RMatrix::Zero(4, 4), RMatrix::Zero(4, 4), RMatrix::Zero(4, 4), RVector::Zero(8)};

  rotation_block(out.a, 0, d.gamma_total);
  out.a(2, 2) = -d.eta_plus;
  out.a(2, 3) = d.eta_minus / kSqrt3;
  out.a(3, 3) = -2.0 * gamma;

  rotation_block(out.b, 0, d.gamma_b_eff);
  rotation_block(out.b, 2, d.gamma_c_eff);

  const double ab = std::abs(p.omega_b);
  const double pb = std::arg(p.omega_b);
  const double ac = std::abs(p.omega_c);
  const double pc = std::arg(p.omega_c);
  const double sb = ab * std::sin(pb), cb = ab * std::cos(pb);
  const double sc = ac * std::sin(pc), cc = ac * std::cos(pc);
  out.c << sc, -cc, sb, -cb,
           cc, sc, -cb, -sb,
           sb, -cb, -sc, cc,
           kSqrt3 * sb, -kSqrt3 * cb, kSqrt3 * sc, -kSqrt3 * cc;

  out.b_prime(2) = 2.0 * d.eta_minus / 3.0;
  out.b_prime(3) = gamma / kSqrt3;
  return out;
}

RMatrix AnalyticBlocks::assembled() const {
  RMatrix m(8, 8);
  m.topLeftCorner(4, 4) = a;
  m.topRightCorner(4, 4) = c;
  m.bottomLeftCorner(4, 4) = -c.transpose();
  m.bottomRightCorner(4, 4) = b;
  return m;
}

double BlockDiscrepancy::max_abs() const {
  return std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), c.cwiseAbs().maxCoeff(),
                   minus_ct.cwiseAbs().maxCoeff(), b_prime.cwiseAbs().maxCoeff()});
}

BlockDiscrepancy compare_blocks(const AnalyticBlocks& tab, const EvolutionModel& model) {
  const RMatrix t = transform_T();
  const RMatrix mt = t * model.m * t.transpose();
  const RVector bt = t * model.b;
  BlockDiscrepancy out;
  out.a = mt.topLeftCorner(4, 4) - tab.a;
  out.b = mt.bottomRightCorner(4, 4) - tab.b;
  out.c = mt.topRightCorner(4, 4) - tab.c;
  out.minus_ct = mt.bottomLeftCorner(4, 4) + tab.c.transpose();
  out.b_prime = bt - tab.b_prime;
  return out;
}

}  // namespace eitlab
