#include "eitlab/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eitlab/errors.hpp"

namespace eitlab {

namespace {

constexpr double kSingularThreshold = 1e-10;
constexpr double kDiagonalizableCondition = 1e8;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

SpectrumReport spectrum(const EvolutionModel& model) {
  Eigen::EigenSolver<RMatrix> solver(model.m, true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "eigensolver did not converge");
  }
  SpectrumReport out;
  const Eigen::VectorXcd values = solver.eigenvalues();
  out.eigenvalues.assign(values.data(), values.data() + values.size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  out.max_real_part = out.eigenvalues.empty() ? 0.0 : out.eigenvalues.front().real();

  const double scale = std::max(1.0, model.m.cwiseAbs().maxCoeff());
  const double zero_tol = 1e-9 * scale;
  out.zero_modes = static_cast<int>(std::count_if(out.eigenvalues.begin(), out.eigenvalues.end(), [&](cplx s) {
    return std::abs(s.real()) < zero_tol && std::abs(s.imag()) < zero_tol;
  }));

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(solver.eigenvectors());
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  out.eigenvector_condition = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
  out.diagonalizable = out.eigenvector_condition < kDiagonalizableCondition;
  return out;
}

CoherenceVector evolve(const CoherenceVector& x0, const EvolutionModel& model, double t,
                       const EvolveOptions& options) {
  if (!std::isfinite(t) || t < 0.0) {
    throw Error(ErrorKind::Numerical, "evolution time must be finite and nonnegative");
  }
  if (x0.size() != model.b.size()) {
    throw Error(ErrorKind::InvalidDimension, "initial coherence vector has wrong length");
  }
  RVector x = x0;
  if (t == 0.0) return x;

  auto f = [&](const RVector& y) -> RVector { return model.m * y + model.b; };

  double h = std::min(options.initial_step, t);
  double time = 0.0;
  RVector k1 = f(x);
  long steps = 0;
  while (time < t) {
    if (++steps > options.max_steps) throw Error(ErrorKind::Stiffness, "step budget exhausted");
    if (time + h > t) h = t - time;

    const RVector k2 = f(x + h * (a21 * k1));
    const RVector k3 = f(x + h * (a31 * k1 + a32 * k2));
    const RVector k4 = f(x + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const RVector k5 = f(x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const RVector k6 = f(x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const RVector next = x + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const RVector k7 = f(next);
    const RVector err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const RVector scale =
        (options.atol + options.rtol * x.cwiseAbs().cwiseMax(next.cwiseAbs()).array()).matrix();
    const double norm = std::sqrt((err.array() / scale.array()).square().mean());

    if (norm <= 1.0) {
      time += h;
      x = next;
      k1 = k7;
    }
    const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
    h *= factor;
    if (h < options.min_step && time < t) {
      throw Error(ErrorKind::Stiffness, "step size underflow at t = " + std::to_string(time));
    }
  }
  return x;
}

double relative_min_singular_value(const RMatrix& m) {
  Eigen::JacobiSVD<RMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

CoherenceVector asymptotic(const EvolutionModel& model) {
  const double rel = relative_min_singular_value(model.m);
  if (!(rel > kSingularThreshold)) {
    throw Error(ErrorKind::SingularEvolution,
                "evolution matrix is singular (relative singular value " + std::to_string(rel) +
                    "); the asymptotic state depends on the initial state");
  }
  Eigen::FullPivLU<RMatrix> lu(model.m);
  RVector x = lu.solve(-model.b);

  // One refinement step with the residual accumulated in extended precision.
  using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using LVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const LMatrix ml = model.m.cast<long double>();
  const LVector residual = -model.b.cast<long double>() - ml * x.cast<long double>();
  x += lu.solve(RVector(residual.cast<double>()));
  return x;
}

}  // namespace eitlab
