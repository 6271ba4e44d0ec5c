#include "eitlab/master_equation.hpp"

#include <cmath>

#include "eitlab/errors.hpp"

namespace eitlab {

namespace {

void check_channel(const LindbladChannel& channel, int size) {
  if (channel.g.size() != size) {
    throw Error(ErrorKind::InvalidDimension, "channel '" + channel.label + "' has wrong vector length");
  }
  if (!channel.g.allFinite()) {
    throw Error(ErrorKind::InvalidRate, "channel '" + channel.label + "' has non-finite entries");
  }
}

}  // namespace

CMatrix liouvillian_direct(const DensityMatrix& rho, const HamiltonianDecomposition& h,
                           std::span<const LindbladChannel> channels, const GellMannBasis& basis) {
  const CMatrix hm = compose_hamiltonian(h, basis);
  CMatrix out = -kI * (hm * rho - rho * hm);
  for (const auto& ch : channels) {
    check_channel(ch, basis.size());
    const CMatrix jump = basis.compose(ch.g);
    const CMatrix jump_dag = jump.adjoint();
    const CMatrix number = jump_dag * jump;
    out += jump * rho * jump_dag - 0.5 * (number * rho + rho * number);
  }
  return out;
}

CMatrices c_matrices(const LindbladChannel& channel) {
  const CVector& g = channel.g;
  const CMatrix outer = g.conjugate() * g.transpose();  // g*_s g_v
  const CMatrix outer_t = outer.transpose();            // g_s g*_v
  return CMatrices{(outer + outer_t).real(), outer - outer_t};
}

RMatrix hamiltonian_generator(const RVector& omega, const StructureConstants& sc) {
  if (omega.size() != sc.size) {
    throw Error(ErrorKind::InvalidDimension, "omega vector has wrong length");
  }
  RMatrix m0 = RMatrix::Zero(sc.size, sc.size);
  for (int r = 0; r < sc.size; ++r) {
    for (int s = 0; s < sc.size; ++s) {
      if (omega(s) == 0.0) continue;
      for (int t = 0; t < sc.size; ++t) m0(r, t) += 2.0 * sc.f(r, s, t) * omega(s);
    }
  }
  return m0;
}

ChannelGenerators channel_generators(const LindbladChannel& channel, const StructureConstants& sc) {
  check_channel(channel, sc.size);
  const int k = sc.size;
  const CMatrices c = c_matrices(channel);
  // C- is purely imaginary: (i/4) * C- = -(1/4) Im(C-).
  const RMatrix c_minus_im = c.minus.imag();

  ChannelGenerators out{RMatrix::Zero(k, k), RMatrix::Zero(k, k), RVector::Zero(k)};
  for (int r = 0; r < k; ++r) {
    for (int t = 0; t < k; ++t) {
      double plus = 0.0;
      double minus = 0.0;
      for (int s = 0; s < k; ++s) {
        for (int v = 0; v < k; ++v) {
          plus += sc.plus_kernel(r, t, s, v) * c.plus(s, v);
          minus += sc.minus_kernel(r, t, s, v) * c_minus_im(s, v);
        }
      }
      out.g_plus(r, t) = plus;
      out.g_minus(r, t) = -0.25 * minus;
    }
  }

  const CVector w = wedge(channel.g, channel.g.conjugate(), sc);
  const CVector b = (2.0 * kI / static_cast<double>(sc.dim)) * w;
  out.b = b.real();
  return out;
}

EvolutionModel assemble(const RVector& omega, std::span<const LindbladChannel> channels,
                        const StructureConstants& sc) {
  EvolutionModel model{hamiltonian_generator(omega, sc), RVector::Zero(sc.size)};
  for (const auto& ch : channels) {
    const ChannelGenerators gen = channel_generators(ch, sc);
    model.m += gen.g_plus + gen.g_minus;
    model.b += gen.b;
  }
  return model;
}

RVector rhs(const CoherenceVector& x, const EvolutionModel& model) {
  if (x.size() != model.b.size()) {
    throw Error(ErrorKind::InvalidDimension, "coherence vector has wrong length");
  }
  return model.m * x + model.b;
}

EvolutionModel superoperator_model(const HamiltonianDecomposition& h, std::span<const LindbladChannel> channels,
                                   const GellMannBasis& basis) {
  const int n = basis.dim();
  const int k = basis.size();
  const CMatrix mixed = CMatrix::Identity(n, n) / static_cast<double>(n);
  EvolutionModel model{RMatrix::Zero(k, k), project_hermitian(liouvillian_direct(mixed, h, channels, basis), basis)};
  // The generator is affine in x; probing with the unit coherence vectors
  // (the 1/N part cancels by subtraction) gives the columns of M.
  for (int t = 0; t < k; ++t) {
    model.m.col(t) = project_hermitian(liouvillian_direct(basis[t], h, channels, basis), basis);
  }
  return model;
}

CVector b_component_contraction(const LindbladChannel& channel, const StructureConstants& sc) {
  check_channel(channel, sc.size);
  const CMatrices c = c_matrices(channel);
  CVector out = CVector::Zero(sc.size);
  for (int r = 0; r < sc.size; ++r) {
    for (int s = 0; s < sc.size; ++s) {
      for (int v = 0; v < sc.size; ++v) out(r) += sc.f(r, v, s) * c.minus(s, v);
    }
  }
  return out;
}

}  // namespace eitlab
