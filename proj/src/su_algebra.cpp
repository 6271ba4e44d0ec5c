#include "eitlab/su_algebra.hpp"

#include <array>
#include <cmath>

#include "eitlab/errors.hpp"

namespace eitlab {

namespace {

constexpr double kStructureThreshold = 1e-12;
constexpr double kStateTolerance = 1e-9;

void check_length(const CVector& a, const CVector& b, const StructureConstants& sc) {
  if (a.size() != sc.size || b.size() != sc.size) {
    throw Error(ErrorKind::InvalidDimension,
                "vector length must be " + std::to_string(sc.size));
  }
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::InvalidOperator: return "invalid-operator";
    case ErrorKind::InvalidRate: return "invalid-rate";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::SingularEvolution: return "singular-evolution";
    case ErrorKind::Regime: return "regime";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Stencil: return "stencil";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Stiffness: return "stiffness";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

GellMannBasis GellMannBasis::build(int n) {
  if (n < 2) {
    throw Error(ErrorKind::InvalidDimension, "basis dimension must be >= 2, got " + std::to_string(n));
  }
  std::vector<CMatrix> symmetric;
  std::vector<CMatrix> antisymmetric;
  std::vector<CMatrix> diagonal;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      CMatrix s = CMatrix::Zero(n, n);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      symmetric.push_back(std::move(s));

      CMatrix a = CMatrix::Zero(n, n);
      a(j, k) = -kI;
      a(k, j) = kI;
      antisymmetric.push_back(std::move(a));
    }
  }
  for (int l = 1; l < n; ++l) {
    CMatrix m = CMatrix::Zero(n, n);
    const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) m(j, j) = norm;
    m(l, l) = -l * norm;
    diagonal.push_back(std::move(m));
  }

  std::vector<CMatrix> generators;
  generators.reserve(static_cast<std::size_t>(n * n - 1));
  if (n == 3) {
    // lambda_1..lambda_8: (01)s, (01)a, diag1, (02)s, (02)a, (12)s, (12)a, diag2
    generators = {symmetric[0], antisymmetric[0], diagonal[0], symmetric[1],
                  antisymmetric[1], symmetric[2], antisymmetric[2], diagonal[1]};
  } else {
    for (auto& m : symmetric) generators.push_back(std::move(m));
    for (auto& m : antisymmetric) generators.push_back(std::move(m));
    for (auto& m : diagonal) generators.push_back(std::move(m));
  }
  return GellMannBasis(n, std::move(generators));
}

CMatrix GellMannBasis::compose(const CVector& v) const {
  if (v.size() != size()) {
    throw Error(ErrorKind::InvalidDimension, "coefficient vector length must be " + std::to_string(size()));
  }
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (int r = 0; r < size(); ++r) out += v(r) * generators_[static_cast<std::size_t>(r)];
  return out;
}

CMatrix GellMannBasis::compose(const RVector& v) const {
  return compose(CVector(v.cast<cplx>()));
}

StructureConstants structure_constants(const GellMannBasis& basis) {
  StructureConstants sc;
  sc.dim = basis.dim();
  sc.size = basis.size();
  const int k = sc.size;
  const std::size_t k3 = static_cast<std::size_t>(k) * k * k;
  std::vector<double> f_raw(k3, 0.0);
  std::vector<double> d_raw(k3, 0.0);

  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      const CMatrix prod = basis[r] * basis[s];
      const CMatrix rev = basis[s] * basis[r];
      const CMatrix comm = prod - rev;
      const CMatrix anti = prod + rev;
      for (int t = 0; t < k; ++t) {
        const cplx fv = (comm * basis[t]).trace() / (4.0 * kI);
        const cplx dv = (anti * basis[t]).trace() / 4.0;
        sc.max_imag_residue = std::max({sc.max_imag_residue, std::abs(fv.imag()), std::abs(dv.imag())});
        f_raw[sc.index(r, s, t)] = fv.real();
        d_raw[sc.index(r, s, t)] = dv.real();
      }
    }
  }

  // Project onto exact total (anti)symmetry, then drop float noise.
  sc.f_data.assign(k3, 0.0);
  sc.d_data.assign(k3, 0.0);
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      for (int t = 0; t < k; ++t) {
        const double fv = (f_raw[sc.index(r, s, t)] + f_raw[sc.index(s, t, r)] + f_raw[sc.index(t, r, s)] -
                           f_raw[sc.index(s, r, t)] - f_raw[sc.index(r, t, s)] - f_raw[sc.index(t, s, r)]) /
                          6.0;
        const double dv = (d_raw[sc.index(r, s, t)] + d_raw[sc.index(s, t, r)] + d_raw[sc.index(t, r, s)] +
                           d_raw[sc.index(s, r, t)] + d_raw[sc.index(r, t, s)] + d_raw[sc.index(t, s, r)]) /
                          6.0;
        sc.f_data[sc.index(r, s, t)] = std::abs(fv) < kStructureThreshold ? 0.0 : fv;
        sc.d_data[sc.index(r, s, t)] = std::abs(dv) < kStructureThreshold ? 0.0 : dv;
      }
    }
  }

  const std::size_t k4 = k3 * static_cast<std::size_t>(k);
  sc.plus_data.assign(k4, 0.0);
  sc.minus_data.assign(k4, 0.0);
  for (int r = 0; r < k; ++r) {
    for (int t = 0; t < k; ++t) {
      for (int s = 0; s < k; ++s) {
        for (int v = 0; v < k; ++v) {
          double plus = 0.0;
          double minus = 0.0;
          for (int m = 0; m < k; ++m) {
            plus += sc.f(r, s, m) * sc.f(m, v, t);
            minus += sc.d(r, m, s) * sc.f(m, v, t) - sc.d(r, m, t) * sc.f(m, s, v) +
                     3.0 * sc.f(r, m, s) * sc.d(m, v, t);
          }
          sc.plus_data[sc.index(r, t, s, v)] = plus;
          sc.minus_data[sc.index(r, t, s, v)] = minus;
        }
      }
    }
  }
  return sc;
}

const Su3& su3() {
  static const Su3 instance = [] {
    GellMannBasis basis = GellMannBasis::build(3);
    StructureConstants sc = structure_constants(basis);
    return Su3{std::move(basis), std::move(sc)};
  }();
  return instance;
}

CVector wedge(const CVector& a, const CVector& b, const StructureConstants& sc) {
  check_length(a, b, sc);
  CVector out = CVector::Zero(sc.size);
  for (int r = 0; r < sc.size; ++r) {
    for (int s = 0; s < sc.size; ++s) {
      if (a(s) == 0.0) continue;
      for (int t = 0; t < sc.size; ++t) {
        const double f = sc.f(r, s, t);
        if (f != 0.0) out(r) += f * a(s) * b(t);
      }
    }
  }
  return out;
}

CVector star(const CVector& a, const CVector& b, const StructureConstants& sc) {
  check_length(a, b, sc);
  CVector out = CVector::Zero(sc.size);
  for (int r = 0; r < sc.size; ++r) {
    for (int s = 0; s < sc.size; ++s) {
      if (a(s) == 0.0) continue;
      for (int t = 0; t < sc.size; ++t) {
        const double d = sc.d(r, s, t);
        if (d != 0.0) out(r) += d * a(s) * b(t);
      }
    }
  }
  return out;
}

bool is_hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

RVector project_hermitian(const CMatrix& op, const GellMannBasis& basis) {
  if (op.rows() != basis.dim() || op.cols() != basis.dim()) {
    throw Error(ErrorKind::InvalidDimension, "operator must be " + std::to_string(basis.dim()) + "x" +
                                                 std::to_string(basis.dim()));
  }
  RVector x(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    // Tr[A B] without forming the product.
    x(i) = 0.5 * (op.transpose().cwiseProduct(basis[i]).sum()).real();
  }
  return x;
}

CoherenceVector to_coherence(const DensityMatrix& rho, const GellMannBasis& basis) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim()) {
    throw Error(ErrorKind::InvalidDimension, "density matrix has wrong shape");
  }
  if (!is_hermitian(rho, kStateTolerance)) {
    throw Error(ErrorKind::InvalidState, "density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > kStateTolerance) {
    throw Error(ErrorKind::InvalidState, "density matrix trace is not 1");
  }
  return project_hermitian(rho, basis);
}

DensityMatrix from_coherence(const CoherenceVector& x, const GellMannBasis& basis) {
  DensityMatrix rho = basis.compose(x);
  rho.diagonal().array() += 1.0 / basis.dim();
  return rho;
}

HamiltonianDecomposition decompose_hamiltonian(const CMatrix& h, const GellMannBasis& basis) {
  if (h.rows() != basis.dim() || h.cols() != basis.dim()) {
    throw Error(ErrorKind::InvalidDimension, "Hamiltonian has wrong shape");
  }
  if (!is_hermitian(h, 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))) {
    throw Error(ErrorKind::InvalidOperator, "Hamiltonian is not Hermitian");
  }
  HamiltonianDecomposition out;
  out.omega0 = h.trace().real() / basis.dim();
  out.omega = project_hermitian(h, basis);
  return out;
}

CMatrix compose_hamiltonian(const HamiltonianDecomposition& h, const GellMannBasis& basis) {
  CMatrix out = basis.compose(h.omega);
  out.diagonal().array() += h.omega0;
  return out;
}

}  // namespace eitlab
