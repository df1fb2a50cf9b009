#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <spingyro/closed_form.hpp>
#include <spingyro/integrator.hpp>
#include <spingyro/propagator.hpp>
#include <spingyro/series.hpp>

using namespace spingyro;

namespace {
const HalfInt half = HalfInt::from_twice(1);
}

TEST_CASE("propagator eigenvalues of one spin-1/2 pair") {
  // K = (J^2 - S^2 - I^2)/2: J = 1 gives 1/4 (3 states), J = 0 gives -3/4.
  const CompositeSystem sys = build_composite(1, half, half, Mode::FullTensor);
  const PropagatorCache prop(sys);
  Eigen::VectorXd ev = prop.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size());
  CHECK(std::abs(ev(0) + 0.75) < 1e-13);
  for (int k = 1; k < 4; ++k) CHECK(std::abs(ev(k) - 0.25) < 1e-13);
}

TEST_CASE("eigenstates pick up a phase only") {
  const CompositeSystem sys = build_composite(2, half, HalfInt(1), Mode::FullTensor);
  const EigenSystem es = hermitian_eigensystem(sys.K);
  const PropagatorCache prop(sys);
  const StateVector v = es.vectors.col(3);
  const StateVector w = prop.exact_propagate(v, 2.31);
  CHECK(std::abs(std::abs(v.dot(w)) - 1.0) < 1e-12);
}

TEST_CASE("one spin-1/2 with a spin-1/2 impurity precesses as cos(phi)/2") {
  const CompositeSystem sys = build_composite(1, half, half, Mode::FullTensor);
  const InitialState st = ferromagnetic_state(sys, -half);
  const PropagatorCache prop(sys);
  for (double phi : {0.0, 0.3, 1.1, std::numbers::pi}) {
    CHECK(std::abs(prop.expectation(sys.Sz(), st.vector, phi) - 0.5 * std::cos(phi)) <
          1e-12);
  }
}

TEST_CASE("oracle conserves J_z, J^2, and J.S") {
  const CompositeSystem sys = build_composite(3, half, HalfInt(1), Mode::FullTensor);
  const InitialState st = ferromagnetic_state(sys, HalfInt(-1));
  const PropagatorCache prop(sys);
  const double jz0 = real_expectation(sys.Jz(), st.vector);
  const double j20 = real_expectation(sys.J2, st.vector);
  const double jds0 = real_expectation(sys.J_dot_S, st.vector);
  for (int k = 1; k <= 16; ++k) {
    const double phi = 4.0 * std::numbers::pi * k / 16.0;
    CHECK(std::abs(prop.expectation(sys.Jz(), st.vector, phi) - jz0) < 1e-11);
    CHECK(std::abs(prop.expectation(sys.J2, st.vector, phi) - j20) < 1e-11);
    CHECK(std::abs(prop.expectation(sys.J_dot_S, st.vector, phi) - jds0) < 1e-11);
  }
}

TEST_CASE("non-Hermitian observables are rejected") {
  const CompositeSystem sys = build_composite(1, half, half, Mode::FullTensor);
  const PropagatorCache prop(sys);
  const InitialState st = ferromagnetic_state(sys, -half);
  OperatorMatrix bad = sys.Sz();
  bad(0, 1) += Complex(0.0, 1e-3);
  CHECK_THROWS_AS(prop.expectation(bad, st.vector, 1.0), config_error);
}

TEST_CASE("state dimension mismatches are rejected") {
  const CompositeSystem sys = build_composite(1, half, half, Mode::FullTensor);
  const PropagatorCache prop(sys);
  CHECK_THROWS_AS(prop.exact_propagate(StateVector::Zero(3), 1.0), config_error);
}

TEST_CASE("zero pulse leaves the state alone") {
  const CompositeSystem sys = build_composite(2, half, half, Mode::FullTensor);
  const InitialState st = ferromagnetic_state(sys, -half);
  const Pulse pulse(GaussianPulse(0.0, 1.0));
  const TimeSeries ts = step_integrator(sys, st, pulse, linspace(-5.0, 5.0, 21), 200);
  for (double sz : ts.sz) CHECK(std::abs(sz - 1.0) < 1e-13);
  CHECK((ts.final_state - st.vector).norm() < 1e-13);
}

TEST_CASE("step integrator matches the exact propagator through a gaussian pulse") {
  const CompositeSystem sys = build_composite(2, half, HalfInt(1), Mode::FullTensor);
  const InitialState st = ferromagnetic_state(sys, HalfInt(-1));
  const Pulse pulse(GaussianPulse(2.0, 1.0));
  const TimeSeries ts = step_integrator(sys, st, pulse, linspace(-5.0, 5.0, 201));
  const PropagatorCache prop(sys);
  const StateVector exact = prop.exact_propagate(st.vector, pulse.phi(5.0));
  CHECK((ts.final_state - exact).norm() < 1e-6);
  CHECK(ts.max_norm_drift < 1e-8);
  // Observables recorded along the way agree with the closed form.
  const CoupledBasis basis = couple_basis(sys, st.m_j);
  const ExpectationEngine engine(sys, basis, st);
  for (std::size_t k = 0; k < ts.times.size(); k += 40)
    CHECK(std::abs(ts.sz[k] - engine.sz(ts.phi[k])) < 1e-6);
}

TEST_CASE("two pulse shapes with equal total phase land on the same state") {
  const CompositeSystem sys = build_composite(1, half, HalfInt(1), Mode::FullTensor);
  const InitialState st = ferromagnetic_state(sys, HalfInt(-1));
  const double area = 3.0;
  const Pulse triangle(TabulatedPulse({0.0, 1.0, 2.0}, {0.0, area / 1.0, 0.0}));
  const Pulse gauss(GaussianPulse(area / std::sqrt(std::numbers::pi), 1.0));
  const TimeSeries a = step_integrator(sys, st, triangle, linspace(0.0, 2.0, 41), 4000);
  const TimeSeries b = step_integrator(sys, st, gauss, linspace(-6.0, 6.0, 61), 4000);
  CHECK(std::abs(triangle.phi_infinity() - gauss.phi_infinity()) < 1e-12);
  CHECK((a.final_state - b.final_state).norm() < 5e-6);
}

TEST_CASE("a hopelessly coarse grid is flagged, not silently accepted") {
  const CompositeSystem sys = build_composite(2, half, HalfInt(1), Mode::FullTensor);
  const InitialState st = ferromagnetic_state(sys, HalfInt(-1));
  const Pulse pulse(GaussianPulse(500.0, 1.0));
  CHECK_THROWS_AS(step_integrator(sys, st, pulse, linspace(-5.0, 5.0, 2), 2), invariant_error);
}

TEST_CASE("time grids must be increasing and non-trivial") {
  const CompositeSystem sys = build_composite(1, half, half, Mode::FullTensor);
  const InitialState st = ferromagnetic_state(sys, -half);
  const Pulse pulse(GaussianPulse(1.0, 1.0));
  CHECK_THROWS_AS(step_integrator(sys, st, pulse, {0.0}), config_error);
  CHECK_THROWS_AS(step_integrator(sys, st, pulse, {0.0, 0.0}), config_error);
  CHECK_THROWS_AS(step_integrator(sys, st, pulse, {1.0, 0.5}), config_error);
}

TEST_CASE("truncated series reproduces the closed form when it converges") {
  const CompositeSystem sys = build_composite(2, half, HalfInt(1), Mode::FullTensor);
  const InitialState st = ferromagnetic_state(sys, HalfInt(-1));
  const CoupledBasis basis = couple_basis(sys, st.m_j);
  const ExpectationEngine engine(sys, basis, st);
  for (double phi : {0.5, 1.0, 2.0}) {
    const TruncatedSeries ts = series_truncated_sigma(sys, st, phi, 40);
    CHECK(std::abs(ts.values(2) - engine.sz(phi)) < 1e-10);
    CHECK(std::abs(ts.values(0)) < 1e-10);
    CHECK(std::abs(ts.values(1)) < 1e-10);
    CHECK(ts.imag_residue < 1e-10);
    CHECK(ts.truncation_estimate < 1e-12);
  }
}

TEST_CASE("series truncation error decays past the hump") {
  const CompositeSystem sys = build_composite(2, half, HalfInt(1), Mode::FullTensor);
  const InitialState st = ferromagnetic_state(sys, HalfInt(-1));
  const CoupledBasis basis = couple_basis(sys, st.m_j);
  const ExpectationEngine engine(sys, basis, st);
  const double phi = 2.0;
  const double exact = engine.sz(phi);
  // J_max = 2 here, so the hump sits near e * J_max * phi ~ 11.  Consecutive
  // partial sums spiral inward (terms carry powers of i*phi), so the error is
  // only monotone across a full period of four terms.
  std::vector<double> err;
  for (int n = 15; n <= 35; ++n)
    err.push_back(std::abs(series_truncated_sigma(sys, st, phi, n).values(2) - exact));
  for (std::size_t k = 4; k < err.size(); ++k)
    if (err[k - 4] > 1e-13) CHECK(err[k] < err[k - 4]);
  CHECK(err.back() < 1e-12);
  CHECK(err.back() < 1e-6 * err.front());
}

TEST_CASE("operator ladder identities hold on mixed systems") {
  const CompositeSystem cases[] = {
      build_composite(1, half, half, Mode::FullTensor),
      build_composite(2, half, HalfInt(1), Mode::FullTensor),
      build_composite(3, half, HalfInt(1), Mode::FullTensor),
      build_composite(4, half, HalfInt(1), Mode::Collective, HalfInt(2)),
      build_composite(2, HalfInt(1), HalfInt::from_twice(3), Mode::FullTensor),
  };
  for (const CompositeSystem& sys : cases) {
    const IdentityReport rep = verify_Pn_identities(sys);
    for (double d : rep.deviations) CHECK(d < 1e-12);
  }
}
