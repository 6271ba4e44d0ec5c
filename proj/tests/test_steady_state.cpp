#include <random>

#include "eitlab/lambda_model.hpp"
#include "eitlab/steady_state.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace eitlab;

namespace {

ChannelRates all_channels(double e) {
  ChannelRates r;
  r.eta_x = r.eta_y = r.eta_z = r.eta_depol = r.eta_bc = r.eta_cb = e;
  return r;
}

LambdaParams probe_scenario(double delta = 0.0) { return LambdaParams::from_detunings(delta, 0.0, 1.6e-5, 0.16); }

CMatrix kronecker_steady_state(const LambdaParams& p, const ChannelRates& r) {
  const auto lambda = oracle::gell_mann_3();
  std::vector<CMatrix> jumps;
  for (const auto& ch : standard_channels(p, r)) jumps.push_back(oracle::jump(ch.g, lambda));
  return oracle::null_space_state(oracle::superoperator(lambda_hamiltonian(p), jumps), 3);
}

}  // namespace

TEST_SUITE("steady-state") {
  TEST_CASE("asymptotic state equals the superoperator null vector") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, 0.3);
    for (int trial = 0; trial < 10; ++trial) {
      ChannelRates r;
      r.eta_x = u(rng);
      r.eta_y = u(rng);
      r.eta_z = u(rng);
      r.eta_depol = u(rng);
      r.eta_bc = u(rng);
      r.eta_cb = u(rng);
      const LambdaParams p =
          LambdaParams::from_detunings(u(rng) - 0.15, u(rng) - 0.15, std::polar(u(rng) + 0.05, 1.0 + u(rng)),
                                       std::polar(u(rng) + 0.1, u(rng) - 2.0));
      const CoherenceVector x = asymptotic(lambda_model(p, r));
      const CMatrix ref = kronecker_steady_state(p, r);
      CHECK((from_coherence(x, su3().basis) - ref).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("evolution from random states converges to the asymptotic state") {
    const EvolutionModel model = lambda_model(probe_scenario(0.05), all_channels(0.1));
    const CoherenceVector xs = asymptotic(model);
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 3; ++trial) {
      const CoherenceVector x0 = to_coherence(oracle::random_density(rng, 3), su3().basis);
      CHECK((evolve(x0, model, 200.0) - xs).cwiseAbs().maxCoeff() < 1e-6);
    }
  }

  TEST_CASE("integrator against the exact solution of a diagonal system") {
    EvolutionModel m{RMatrix::Zero(2, 2), RVector::Ones(2)};
    m.m(0, 0) = -1.0;
    m.m(1, 1) = -3.0;
    const RVector x = evolve(RVector::Zero(2), m, 2.0);
    CHECK(x(0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-9));
    CHECK(x(1) == doctest::Approx((1.0 - std::exp(-6.0)) / 3.0).epsilon(1e-9));
    CHECK((evolve(RVector::Ones(2), m, 0.0) - RVector::Ones(2)).norm() == 0.0);
    CHECK_ERROR_KIND(evolve(RVector::Zero(2), m, -1.0), ErrorKind::Numerical);
    CHECK_ERROR_KIND(evolve(RVector::Zero(3), m, 1.0), ErrorKind::InvalidDimension);
  }

  TEST_CASE("integrator on a rotation keeps the norm") {
    EvolutionModel m{RMatrix::Zero(2, 2), RVector::Zero(2)};
    m.m(0, 1) = 1.0;
    m.m(1, 0) = -1.0;
    RVector x0(2);
    x0 << 1.0, 0.0;
    const RVector x = evolve(x0, m, 10.0);
    CHECK(x(0) == doctest::Approx(std::cos(10.0)).epsilon(1e-8));
    CHECK(x(1) == doctest::Approx(-std::sin(10.0)).epsilon(1e-8));
  }

  TEST_CASE("spectrum with dephasing, depolarization and both dampings at rate 0.1") {
    ChannelRates r = all_channels(0.1);
    r.eta_x = r.eta_y = 0.0;
    const SpectrumReport s = spectrum(lambda_model(probe_scenario(), r));
    CHECK(s.zero_modes == 0);
    CHECK(s.max_real_part < 0.0);
    CHECK(s.diagonalizable);
    REQUIRE(s.eigenvalues.size() == 8);
    CHECK(s.max_real_part == doctest::Approx(-0.364).epsilon(2e-3));
    CHECK(s.eigenvalues.back().real() == doctest::Approx(-1.90).epsilon(5e-3));
  }

  TEST_CASE("unitary dynamics: conserved quantities are zero modes") {
    const EvolutionModel m = assemble(omega_vector(probe_scenario()), {}, su3().sc);
    const SpectrumReport s = spectrum(m);
    CHECK(s.zero_modes >= 2);
    for (cplx v : s.eigenvalues) CHECK(std::abs(v.real()) < 1e-12);
    CHECK_ERROR_KIND(asymptotic(m), ErrorKind::SingularEvolution);
  }

  TEST_CASE("relative singular value") {
    RMatrix m = RMatrix::Identity(3, 3);
    m(2, 2) = 1e-3;
    CHECK(relative_min_singular_value(m) == doctest::Approx(1e-3));
    CHECK(relative_min_singular_value(RMatrix::Zero(2, 2)) == 0.0);
  }

  TEST_CASE("asymptotic states are physical") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
      ChannelRates r;
      r.eta_z = u(rng) * 0.2;
      r.eta_bc = u(rng) * 0.2;
      r.eta_cb = u(rng) * 0.2;
      r.eta_depol = u(rng) * 0.2;
      const LambdaParams p = LambdaParams::from_detunings(u(rng) - 0.5, u(rng) - 0.5, 0.3 * u(rng), u(rng));
      const CoherenceVector x = asymptotic(lambda_model(p, r));
      CHECK(min_eigenvalue(from_coherence(x, su3().basis)) >= -1e-10);
      CHECK(x.squaredNorm() <= 1.0 / 3.0 + 1e-10);
    }
  }
}
