#pragma once

// Generalized Gell-Mann bases, su(N) structure constants and the wedge/star
// vector products built from them.

#include <vector>

#include "eitlab/types.hpp"

namespace eitlab {

/// Ordered set of N^2-1 traceless Hermitian generators with Tr[l_r l_s] = 2 delta_rs.
///
/// For N = 3 the order is the conventional lambda_1 ... lambda_8 (the
/// interleaved symmetric/antisymmetric pairs (0,1), diagonal, (0,2), (1,2),
/// diagonal). For every other N the order is all symmetric pairs, then all
/// antisymmetric pairs, then the diagonal generators.
class GellMannBasis {
 public:
  /// Throws Error(InvalidDimension) for n < 2.
  static GellMannBasis build(int n);

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return static_cast<int>(generators_.size()); }
  const CMatrix& operator[](int r) const { return generators_[static_cast<std::size_t>(r)]; }
  const std::vector<CMatrix>& generators() const noexcept { return generators_; }

  /// v . lambda for a complex coefficient vector.
  CMatrix compose(const CVector& v) const;
  CMatrix compose(const RVector& v) const;

 private:
  GellMannBasis(int dim, std::vector<CMatrix> generators)
      : dim_(dim), generators_(std::move(generators)) {}

  int dim_;
  std::vector<CMatrix> generators_;
};

/// Dense f (antisymmetric) and d (symmetric) tensors of su(N).
///
/// Alongside f and d two contraction kernels are precomputed for the
/// dissipative generators:
///   plus_kernel(r,t,s,v)  = f_rsm f_mvt
///   minus_kernel(r,t,s,v) = d_rms f_mvt - d_rmt f_msv + 3 f_rms d_mvt
struct StructureConstants {
  int dim = 0;
  int size = 0;
  std::vector<double> f_data;
  std::vector<double> d_data;
  std::vector<double> plus_data;
  std::vector<double> minus_data;
  /// Largest imaginary part seen in the trace formulas before truncation.
  double max_imag_residue = 0.0;

  std::size_t index(int r, int s, int t) const {
    return (static_cast<std::size_t>(r) * size + s) * size + t;
  }
  std::size_t index(int r, int t, int s, int v) const {
    return ((static_cast<std::size_t>(r) * size + t) * size + s) * size + v;
  }
  double f(int r, int s, int t) const { return f_data[index(r, s, t)]; }
  double d(int r, int s, int t) const { return d_data[index(r, s, t)]; }
  double plus_kernel(int r, int t, int s, int v) const { return plus_data[index(r, t, s, v)]; }
  double minus_kernel(int r, int t, int s, int v) const { return minus_data[index(r, t, s, v)]; }
};

StructureConstants structure_constants(const GellMannBasis& basis);

/// Basis and constants for the three-level system, built once.
struct Su3 {
  GellMannBasis basis;
  StructureConstants sc;
};
const Su3& su3();

/// (a ^ b)_r = f_rst a_s b_t
CVector wedge(const CVector& a, const CVector& b, const StructureConstants& sc);
/// (a * b)_r = d_rst a_s b_t
CVector star(const CVector& a, const CVector& b, const StructureConstants& sc);

/// x_i = Tr[rho lambda_i] / 2. Rejects non-Hermitian or non-unit-trace input (1e-9).
CoherenceVector to_coherence(const DensityMatrix& rho, const GellMannBasis& basis);
/// rho = 1/N + x . lambda
DensityMatrix from_coherence(const CoherenceVector& x, const GellMannBasis& basis);

/// Same projection without the density-matrix checks; used for derivatives
/// (traceless) and other Hermitian operators.
RVector project_hermitian(const CMatrix& op, const GellMannBasis& basis);

struct HamiltonianDecomposition {
  double omega0 = 0.0;
  RVector omega;
};

/// H = omega0 * 1 + omega . lambda (hbar = 1). Throws Error(InvalidOperator) if H is not Hermitian.
HamiltonianDecomposition decompose_hamiltonian(const CMatrix& h, const GellMannBasis& basis);
CMatrix compose_hamiltonian(const HamiltonianDecomposition& h, const GellMannBasis& basis);

bool is_hermitian(const CMatrix& m, double tol);
/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const CMatrix& hermitian);

}  // namespace eitlab
