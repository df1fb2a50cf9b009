#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include <spingyro/composite.hpp>
#include <spingyro/linalg.hpp>

using namespace spingyro;

namespace {
const HalfInt half = HalfInt::from_twice(1);

std::vector<double> sorted_eigenvalues(const OperatorMatrix& m) {
  const EigenSystem es = hermitian_eigensystem(m);
  std::vector<double> v(es.values.data(), es.values.data() + es.values.size());
  std::sort(v.begin(), v.end());
  return v;
}
}  // namespace

TEST_CASE("composite dimensions") {
  CHECK(build_composite(2, half, HalfInt(1), Mode::FullTensor).dim == 12);
  CHECK(build_composite(4, half, HalfInt(1), Mode::Collective, HalfInt(2)).dim == 15);
  CHECK(build_composite(3, half, half, Mode::FullTensor).dim == 16);
  CHECK(build_composite(1, HalfInt(1), half, Mode::FullTensor).dim == 6);
}

TEST_CASE("K spectrum of two spin-1/2 plus a spin-1/2 impurity") {
  // S = 1 branch: J = 3/2 gives K = 1/2 (4 states), J = 1/2 gives K = -1 (2 states);
  // S = 0 branch: K = 0 (2 states).
  const CompositeSystem sys = build_composite(2, half, half, Mode::FullTensor);
  const auto ev = sorted_eigenvalues(sys.K);
  const std::vector<double> expected{-1.0, -1.0, 0.0, 0.0, 0.5, 0.5, 0.5, 0.5};
  REQUIRE(ev.size() == expected.size());
  for (std::size_t k = 0; k < ev.size(); ++k) CHECK(std::abs(ev[k] - expected[k]) < 1e-12);
}

TEST_CASE("collective mode reproduces the symmetric-sector K spectrum") {
  const CompositeSystem sys = build_composite(2, half, half, Mode::Collective, HalfInt(1));
  const auto ev = sorted_eigenvalues(sys.K);
  const std::vector<double> expected{-1.0, -1.0, 0.5, 0.5, 0.5, 0.5};
  REQUIRE(ev.size() == expected.size());
  for (std::size_t k = 0; k < ev.size(); ++k) CHECK(std::abs(ev[k] - expected[k]) < 1e-12);
}

TEST_CASE("rotation algebra of the composite operators") {
  for (Mode mode : {Mode::FullTensor, Mode::Collective}) {
    const CompositeSystem sys =
        mode == Mode::FullTensor ? build_composite(3, half, HalfInt(1), mode)
                                 : build_composite(3, half, HalfInt(1), mode, HalfInt::from_twice(3));
    for (int u = 0; u < 3; ++u) {
      CHECK(max_abs(commutator(sys.K, sys.J[u])) < 1e-13);
      CHECK(max_abs(commutator(sys.J_dot_S, sys.J[u])) < 1e-13);
      CHECK(max_abs(commutator(sys.J2, sys.J[u])) < 1e-13);
    }
    const auto jxs = cross_product(sys.J, sys.S);
    const auto sxj = cross_product(sys.S, sys.J);
    for (int u = 0; u < 3; ++u)
      CHECK(max_abs(jxs[u] + sxj[u] - 2.0 * imag_unit * sys.S[u]) < 1e-13);
    CHECK(max_abs(sys.J_dot_S - (sys.S2 + sys.K)) < 1e-15);
    CHECK(is_hermitian(sys.K, 1e-13));
    CHECK(is_hermitian(sys.J_dot_S, 1e-13));
  }
}

TEST_CASE("dimension cap guards the full tensor representation") {
  CHECK_THROWS_AS(build_composite(13, half, half, Mode::FullTensor), config_error);
  // The cap is a strict upper bound, checked before any allocation.
  CHECK_NOTHROW(build_composite(3, half, half, Mode::FullTensor, std::nullopt, 16));
  CHECK_THROWS_AS(build_composite(3, half, half, Mode::FullTensor, std::nullopt, 15),
                  config_error);
  CHECK_NOTHROW(build_composite(13, half, half, Mode::Collective, std::nullopt));
}

TEST_CASE("collective sector validity") {
  CHECK_THROWS_AS(build_composite(2, half, half, Mode::Collective, HalfInt(2)), config_error);
  CHECK_THROWS_AS(build_composite(2, half, half, Mode::Collective, HalfInt::from_twice(1)),
                  config_error);
  CHECK_THROWS_AS(build_composite(2, half, half, Mode::Collective, HalfInt(-1)), config_error);
  CHECK_THROWS_AS(build_composite(1, half, half, Mode::Collective, HalfInt(0)), config_error);
  CHECK_NOTHROW(build_composite(4, half, half, Mode::Collective, HalfInt(0)));
  CHECK_THROWS_AS(build_composite(2, half, half, Mode::FullTensor, HalfInt(1)), config_error);
  // Default collective sector is the maximal (symmetric) one.
  CHECK(build_composite(5, half, half, Mode::Collective).s_total.twice() == 5);
}

TEST_CASE("ferromagnetic start carries M_J = N s + m_I") {
  const CompositeSystem sys = build_composite(3, half, HalfInt(1), Mode::FullTensor);
  const InitialState st = ferromagnetic_state(sys, HalfInt(-1));
  CHECK(st.m_j.twice() == 1);
  CHECK(std::abs(st.vector(2) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(st.vector.norm() - 1.0) < 1e-15);
  const double mz = std::real(st.vector.dot(sys.Jz() * st.vector));
  CHECK(std::abs(mz - 0.5) < 1e-13);

  CHECK_THROWS_AS(ferromagnetic_state(sys, HalfInt(2)), config_error);
  CHECK_THROWS_AS(ferromagnetic_state(sys, HalfInt::from_twice(1)), config_error);
}

TEST_CASE("make_initial accepts J_z eigenvectors only") {
  const CompositeSystem sys = build_composite(2, half, half, Mode::FullTensor);
  StateVector v = StateVector::Zero(sys.dim);
  v(1) = Complex(0.0, 2.0);  // arbitrary norm and phase
  v(2) = Complex(1.0, 1.0);  // same J_z eigenvalue as index 1
  const InitialState st = make_initial(sys, v);
  CHECK(std::abs(st.vector.norm() - 1.0) < 1e-14);
  CHECK(st.m_j.twice() == 1);

  StateVector bad = StateVector::Zero(sys.dim);
  bad(0) = 1.0;  // M_J = 3/2
  bad(1) = 1.0;  // M_J = 1/2
  CHECK_THROWS_AS(make_initial(sys, bad), config_error);
  CHECK_THROWS_AS(make_initial(sys, StateVector::Zero(sys.dim)), config_error);
  CHECK_THROWS_AS(make_initial(sys, StateVector::Zero(3)), config_error);
}

TEST_CASE("cross product matches the component formula on commuting matrices") {
  std::array<OperatorMatrix, 3> a, b;
  for (int u = 0; u < 3; ++u) {
    a[u] = OperatorMatrix::Zero(2, 2);
    b[u] = OperatorMatrix::Zero(2, 2);
    a[u](0, 0) = 1.0 + u;
    b[u](0, 0) = 4.0 - u;
  }
  const auto c = cross_product(a, b);
  // (1,2,3) x (4,3,2) = (-5, 10, -5)
  CHECK(std::abs(c[0](0, 0) - Complex(-5.0)) < 1e-15);
  CHECK(std::abs(c[1](0, 0) - Complex(10.0)) < 1e-15);
  CHECK(std::abs(c[2](0, 0) - Complex(-5.0)) < 1e-15);

  std::array<OperatorMatrix, 3> wrong = a;
  wrong[1] = OperatorMatrix::Zero(3, 3);
  CHECK_THROWS_AS(cross_product(a, wrong), config_error);
}
