#include <doctest.h>

#include <limits>
#include <random>

#include "syndemic/reproduction.hpp"
#include "syndemic/stability.hpp"

using namespace syndemic;

namespace {

Parameters random_parameters(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> rate(0.01, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> mod(1.0, 2.0);
  Parameters p;
  p.Lambda = 100.0 + 1000.0 * unit(gen);
  p.mu = rate(gen) / 10.0;
  visit_fields(p, [&](std::string_view name, double& v) {
    if (name == "Lambda" || name == "mu") return;
    if (name == "beta1p") v = unit(gen);
    else if (name == "beta2p" || name == "psi" || name == "delta" || name == "eta") v = mod(gen);
    else v = rate(gen);
  });
  return p;
}

}  // namespace

TEST_CASE("R1 closed form") {
  const Parameters p = Parameters::table1(4.3, 0.0);
  const double n = p.Lambda / p.mu;
  CHECK(std::abs(r1_closed(p, n) - 0.99788) < 5e-5);
  CHECK(r1_closed(Parameters::table1(0.0, 0.0), n) == 0.0);
  CHECK(std::abs(r1_closed(Parameters::table1(50.0, 0.0), n) - 11.60326) < 5e-5);
}

TEST_CASE("R2 closed form") {
  const Parameters p = Parameters::table1(0.0, 0.055);
  CHECK(std::abs(r2_closed(p, p.Lambda / p.mu) - 1.01016) < 5e-5);
  CHECK(r2_closed(Parameters::table1(), 50000.0) == 0.0);
  CHECK(std::abs(r2_closed(Parameters::table1(0.0, 0.03), 50000.0) - 0.55077) < 5e-5);
}

TEST_CASE("R0 bundles the two numbers") {
  const Parameters p = Parameters::table1(6.0, 0.1);
  const auto r = reproduction_numbers(p, p.Lambda / p.mu);
  CHECK(std::abs(r.r1 - 1.39239) < 5e-5);
  CHECK(r.r2 > r.r1);
  CHECK(r.r0 == r.r2);
  CHECK(std::abs(r.r2 - 1.83666) < 5e-5);
  CHECK(std::abs(reproduction_numbers(p, 50000.0).r2 - 1.83593) < 5e-5);

  const auto z = reproduction_numbers(Parameters::table1(), 50000.0);
  CHECK(z.r1 == 0.0);
  CHECK(z.r2 == 0.0);
  CHECK(z.r0 == 0.0);

  const auto q = reproduction_numbers(Parameters::table1(2.7, 0.0), 50000.0);
  CHECK(q.r1 >= 0.62632);
  CHECK(q.r1 <= 0.62635);
  CHECK_THROWS_AS(reproduction_numbers(p, 0.0), std::invalid_argument);
}

TEST_CASE("closed forms are linear in the transmission coefficients") {
  const Parameters a = Parameters::table1(3.0, 0.04);
  const Parameters b = Parameters::table1(7.5, 0.1);
  const double n = 50000.0;
  CHECK(r1_closed(b, n) / r1_closed(a, n) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(r2_closed(b, n) / r2_closed(a, n) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("R2 = 1.81829 belongs to beta2 = 0.099, not 0.99") {
  const Parameters p = Parameters::table1(0.0, 0.099);
  CHECK(std::abs(r2_closed(p, p.Lambda / p.mu) - 1.81829) < 5e-5);
  const Parameters q = Parameters::table1(0.0, 0.99);
  CHECK(r2_closed(q, q.Lambda / q.mu) > 18.0);
}

TEST_CASE("next-generation spectral radius matches the closed forms") {
  const Parameters p = Parameters::table1(6.0, 0.1);
  const auto ngm = ngm_decomposition(p);
  const auto r = reproduction_numbers(p, p.Lambda / p.mu);
  CHECK(ngm.rho == doctest::Approx(r.r0).epsilon(1e-8));

  Parameters fixed = p;
  fixed.incidence = Incidence<double>::fixed(50000.0);
  CHECK(ngm_decomposition(fixed).rho == doctest::Approx(reproduction_numbers(p, 50000.0).r0).epsilon(1e-8));

  const auto zero = ngm_decomposition(Parameters::table1());
  CHECK(zero.F.isZero(0.0));
  CHECK(zero.rho == 0.0);
}

TEST_CASE("next-generation spectral radius on random parameter draws") {
  std::mt19937_64 gen(2024);
  for (int k = 0; k < 20; ++k) {
    const Parameters p = random_parameters(gen);
    const auto ngm = ngm_decomposition(p);
    const auto r = reproduction_numbers(p, p.Lambda / p.mu);
    CAPTURE(k);
    CHECK(ngm.rho == doctest::Approx(r.r0).epsilon(1e-6));
  }
}

TEST_CASE("F and V structure") {
  std::mt19937_64 gen(5);
  for (int k = 0; k < 5; ++k) {
    const Parameters p = random_parameters(gen);
    const auto ngm = ngm_decomposition(p);
    CHECK(ngm.F.minCoeff() >= -1e-9);
    for (int i = 0; i < 8; ++i) {
      CHECK(ngm.V(i, i) > 0.0);
      for (int j = 0; j < 8; ++j) {
        if (i != j) CHECK(ngm.V(i, j) <= 1e-9);
      }
    }
  }
}

TEST_CASE("F - V is the infected block of the Jacobian") {
  const Parameters p = Parameters::table1(6.0, 0.1);
  const auto ngm = ngm_decomposition(p);
  StateVector dfe = StateVector::Zero();
  dfe(S) = p.Lambda / p.mu;
  const Matrix10d j = jacobian(dfe, p);
  Matrix8d block;
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) block(a, b) = j(kInfected[a], kInfected[b]);
  }
  CHECK((ngm.F - ngm.V - block).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("split terms recombine into the infected equations") {
  const Parameters p = Parameters::table1(13.0, 0.06);
  const StateVector x = reference_initial_state();
  const StateVector d = full_rhs(x, p);
  const auto f = new_infection_terms(x, p);
  const auto v = transition_terms(x, p);
  for (int i = 0; i < 8; ++i) CHECK(f(i) - v(i) == doctest::Approx(d(kInfected[i])).epsilon(1e-12));
}

TEST_CASE("degenerate parameters") {
  Parameters p = Parameters::table1(6.0, 0.1);
  p.mu = 0.0;
  CHECK_THROWS_AS(ngm_decomposition(p), std::domain_error);
}

TEST_CASE("spectral radius") {
  CHECK(spectral_radius(Eigen::MatrixXd::Identity(3, 3)) == doctest::Approx(1.0));
  Eigen::MatrixXd d(2, 2);
  d << 2, 0, 0, -5;
  CHECK(spectral_radius(d) == doctest::Approx(5.0));
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(spectral_radius(swap) == doctest::Approx(1.0));
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(spectral_radius(bad), std::invalid_argument);
}
