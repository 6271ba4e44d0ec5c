#pragma once

// Spectrum analysis, time evolution and the asymptotic state of x' = M x + b.

#include <vector>

#include "eitlab/master_equation.hpp"

namespace eitlab {

struct SpectrumReport {
  std::vector<cplx> eigenvalues;  // sorted by descending real part
  double max_real_part = 0.0;
  bool diagonalizable = false;
  double eigenvector_condition = 0.0;
  int zero_modes = 0;
};

/// Eigenvalues of M. Diagonalizable iff the eigenvector matrix has condition
/// number below 1e8; zero modes have |Re| and |Im| below 1e-9 * max(1, |M|).
SpectrumReport spectrum(const EvolutionModel& model);

struct EvolveOptions {
  double atol = 1e-12;
  double rtol = 1e-10;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  long max_steps = 50'000'000;
};

/// Adaptive Dormand-Prince 5(4) integration of x' = M x + b from 0 to t.
CoherenceVector evolve(const CoherenceVector& x0, const EvolutionModel& model, double t,
                       const EvolveOptions& options = {});

/// x = -M^{-1} b. Throws Error(SingularEvolution) when the smallest singular
/// value of M is below 1e-10 times the largest.
CoherenceVector asymptotic(const EvolutionModel& model);

/// Smallest over largest singular value of M.
double relative_min_singular_value(const RMatrix& m);

}  // namespace eitlab
