#include <doctest.h>

#include <cmath>

#include "syndemic/equilibria.hpp"
#include "syndemic/stability.hpp"

using namespace syndemic;

namespace {

Parameters fixed_run(double beta1, double beta2) {
  Parameters p = Parameters::table1(beta1, beta2);
  p.incidence = Incidence<double>::fixed(50000.0);
  return p;
}

}  // namespace

TEST_CASE("disease-free equilibrium") {
  const auto e = disease_free(Parameters::table1(6.0, 0.1));
  CHECK(e.kind == EquilibriumKind::disease_free);
  CHECK(e.state(S) == doctest::Approx(49980.0).epsilon(1e-15));
  CHECK(e.state.tail<9>().isZero(0.0));
  CHECK(e.residual == 0.0);
  CHECK(e.exists);
  CHECK(e.converged);
  CHECK(to_string(e.kind) == "disease-free");
}

TEST_CASE("TB-free closed form") {
  const Parameters p = Parameters::table1(0.0, 0.09);
  const double n = p.Lambda / p.mu;
  const TbFreeClosed c = tb_free_closed(p, n);
  CHECK(c.exists);
  CHECK(c.r2 == doctest::Approx(r2_closed(p, n)).epsilon(1e-15));
  CHECK(c.s == doctest::Approx(p.Lambda / (p.mu * c.r2)).epsilon(1e-15));
  const double m = p.alpha1 + p.mu + p.dA;
  CHECK(c.a / c.iH == doctest::Approx(p.rho1 / m).epsilon(1e-14));
  CHECK(c.iH == doctest::Approx(4472.41).epsilon(1e-5));
  CHECK(c.a == doctest::Approx(694.17).epsilon(1e-5));

  const TbFreeClosed below = tb_free_closed(Parameters::table1(0.0, 0.03), n);
  CHECK(!below.exists);
  CHECK(below.iH == 0.0);
  CHECK(below.a == 0.0);
  CHECK(below.s == doctest::Approx(n));
  CHECK(below.iH_formula < 0.0);

  const TbFreeClosed none = tb_free_closed(Parameters::table1(), n);
  CHECK(std::isnan(none.iH_formula));
  CHECK(!none.exists);
}

TEST_CASE("TB-free equilibrium is a fixed point of the HIV sub-model") {
  for (double beta2 : {0.06, 0.09, 0.2}) {
    const auto e = tb_free_numeric(Parameters::table1(0.0, beta2));
    CAPTURE(beta2);
    CHECK(e.kind == EquilibriumKind::tb_free);
    CHECK(e.exists);
    CHECK(e.converged);
    CHECK(e.state(LT) == 0.0);
    CHECK(e.state(IT) == 0.0);
    CHECK(e.state(IH) > 0.0);
    const double m = 0.33 + 0.3 + 1.0 / 70.0;
    CHECK(e.state(A) / e.state(IH) == doctest::Approx(0.1 / m).epsilon(1e-8));
  }
  // With the denominator held at Lambda/mu the numeric and closed forms coincide.
  const Parameters p = Parameters::table1(0.0, 0.09);
  const auto e = tb_free_numeric(p);
  const auto c = tb_free_closed(p, p.Lambda / p.mu);
  CHECK(e.state(IH) == doctest::Approx(c.iH).epsilon(1e-8));
  CHECK(e.state(A) == doctest::Approx(c.a).epsilon(1e-8));

  const auto none = tb_free_numeric(Parameters::table1(0.0, 0.03));
  CHECK(!none.exists);
  CHECK(none.state(IH) == 0.0);
}

TEST_CASE("HIV-free equilibrium") {
  const Parameters p = Parameters::table1(10.0, 0.0);
  const auto e = hiv_free(p);
  CHECK(e.kind == EquilibriumKind::hiv_free);
  CHECK(e.exists);
  CHECK(e.converged);
  CHECK(e.state(IT) == doctest::Approx(2205.69).epsilon(1e-5));
  CHECK(e.state.tail<6>().isZero(0.0));
  CHECK(residual(e.state, p) < 1e-8);

  const auto below = hiv_free(Parameters::table1(2.7, 0.0));
  CHECK(!below.exists);
  CHECK(below.state(IT) == 0.0);
}

TEST_CASE("syndemic equilibrium") {
  const Parameters p = fixed_run(6.0, 0.1);
  const auto e = syndemic_equilibrium(p, reference_initial_state());
  CHECK(e.kind == EquilibriumKind::syndemic);
  CHECK(e.converged);
  CHECK(e.residual < 1e-8);
  StateVector pub;
  pub << 4766.84, 2019.66, 943.06, 28621.89, 362.66, 56.29, 31.39, 55.15, 495.68, 112.33;
  for (int i = 0; i < kCompartments; ++i) CHECK(e.state(i) == doctest::Approx(pub(i)).epsilon(0.01));
  CHECK(analyze_stability(e.state, p).classification == Classification::stable);

  const auto gone = syndemic_equilibrium(fixed_run(2.7, 0.03), reference_initial_state());
  CHECK(gone.kind == EquilibriumKind::disease_free);
  CHECK(gone.state(S) == doctest::Approx(49980.0).epsilon(1e-6));
}

TEST_CASE("state classification") {
  StateVector x = StateVector::Zero();
  x(S) = 100.0;
  CHECK(classify_state(x) == EquilibriumKind::disease_free);
  x(IT) = 1.0;
  CHECK(classify_state(x) == EquilibriumKind::hiv_free);
  x(IT) = 0.0;
  x(A) = 1.0;
  CHECK(classify_state(x) == EquilibriumKind::tb_free);
  x(ITH) = 1e-7;
  CHECK(classify_state(x) == EquilibriumKind::tb_free);
  x(ITH) = 1e-3;
  CHECK(classify_state(x) == EquilibriumKind::syndemic);
}
