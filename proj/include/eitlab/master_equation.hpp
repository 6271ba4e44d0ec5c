#pragma once

// Coherence-vector form of the Lindblad master equation, x' = M x + b,
// together with the density-matrix superoperator it is checked against.

#include <span>
#include <string>
#include <vector>

#include "eitlab/su_algebra.hpp"

namespace eitlab {

/// One Markovian channel. The jump operator is g . lambda; its rate lives in |g|^2.
struct LindbladChannel {
  std::string label;
  CVector g;
};

struct CMatrices {
  RMatrix plus;   // g*_s g_v + g_s g*_v, real symmetric
  CMatrix minus;  // g*_s g_v - g_s g*_v, imaginary antisymmetric
};

struct ChannelGenerators {
  RMatrix g_plus;
  RMatrix g_minus;
  RVector b;
};

struct EvolutionModel {
  RMatrix m;
  RVector b;
};

/// (1/i)[H, rho] + sum_k (G rho G^+ - 1/2 {G^+ G, rho}) with G = g_k . lambda.
CMatrix liouvillian_direct(const DensityMatrix& rho, const HamiltonianDecomposition& h,
                           std::span<const LindbladChannel> channels, const GellMannBasis& basis);

CMatrices c_matrices(const LindbladChannel& channel);

/// M0_rt = 2 f_rst omega_s
RMatrix hamiltonian_generator(const RVector& omega, const StructureConstants& sc);

/// G+ and G- from the index contractions against C+/C-; b_k = (2i/N) g ^ g*.
ChannelGenerators channel_generators(const LindbladChannel& channel, const StructureConstants& sc);

EvolutionModel assemble(const RVector& omega, std::span<const LindbladChannel> channels,
                        const StructureConstants& sc);

RVector rhs(const CoherenceVector& x, const EvolutionModel& model);

/// (M, b) read off column by column from liouvillian_direct. Independent of
/// the structure-constant contractions; used as the verification reference.
EvolutionModel superoperator_model(const HamiltonianDecomposition& h, std::span<const LindbladChannel> channels,
                                   const GellMannBasis& basis);

/// The inhomogeneous term evaluated as the bare component contraction
/// f_rvs C-_sv. Kept for reporting: it differs from b_k by a factor -3i.
CVector b_component_contraction(const LindbladChannel& channel, const StructureConstants& sc);

}  // namespace eitlab
