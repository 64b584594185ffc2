// One line per acceptance criterion. Exit status is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "syndemic/dynamics.hpp"
#include "syndemic/equilibria.hpp"
#include "syndemic/reproduction.hpp"
#include "syndemic/scenarios.hpp"
#include "syndemic/stability.hpp"

using namespace syndemic;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("criterion %d: %s  %s  (%s)\n", id, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::string failed_checks(const ScenarioResult& r) {
  std::ostringstream os;
  int n = 0;
  for (const auto& c : r.checks) {
    if (c.passed) continue;
    if (n++ < 8) os << (n > 1 ? "; " : "") << c.variant << ' ' << c.name << " got " << c.actual << " want " << c.expected;
  }
  if (n == 0) return std::to_string(r.checks.size()) + " checks";
  if (n > 8) os << "; +" << n - 8 << " more";
  return os.str();
}

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

void table2() {
  const ScenarioResult r = run_table2(Parameters::table1());
  report(1, r.passed(), "Table 2: R1 and I_T of the HIV-free state", failed_checks(r));
}

void table3() {
  const ScenarioResult r = run_table3(Parameters::table1());
  bool ok = true;
  ScenarioResult shown = r;
  shown.checks.clear();
  for (const auto& c : r.checks) {
    if (c.name == "R2" || c.name == "I_H" || c.name == "A" || c.name == "A/I_H") {
      ok = ok && c.passed;
      shown.checks.push_back(c);
    }
  }
  report(2, ok, "Table 3: R2, I_H and A of the TB-free state", failed_checks(shown));
}

void ngm() {
  std::mt19937_64 gen(2024);
  double worst = 0.0;
  auto probe = [&](const Parameters& p) {
    const double rho = ngm_decomposition(p).rho;
    const double r0 = reproduction_numbers(p, p.Lambda / p.mu).r0;
    worst = std::max(worst, r0 > 0.0 ? std::abs(rho - r0) / r0 : std::abs(rho));
  };
  for (int k = 0; k < 20; ++k) probe(random_parameters(gen));
  for (double b1 : {4.3, 6.0, 10.0, 15.0, 50.0}) probe(Parameters::table1(b1, 0.0));
  for (double b2 : {0.051, 0.055, 0.07, 0.09, 0.099}) probe(Parameters::table1(0.0, b2));
  for (auto [b1, b2] : {std::pair{2.7, 0.03}, {6.0, 0.1}, {13.0, 0.06}}) probe(Parameters::table1(b1, b2));
  char buf[64];
  std::snprintf(buf, sizeof buf, "max relative gap %.3g", worst);
  report(3, worst <= 1e-6, "next-generation spectral radius equals max(R1, R2)", buf);
}

void syndemic_state() {
  const ScenarioResult r = run_syndemic_stability(Parameters::table1());
  report(4, r.passed(), "interior equilibrium at beta1 = 6, beta2 = 0.1", failed_checks(r));
}

void dfe() {
  const ScenarioResult r = run_dfe_stability(Parameters::table1());
  const Parameters p = Parameters::table1(2.7, 0.03);
  StateVector x = StateVector::Zero();
  x(S) = p.Lambda / p.mu;
  const StabilityReport s = analyze_stability(x, p);
  const bool ok = r.passed() && s.dominant_real < -1e-7;
  char buf[64];
  std::snprintf(buf, sizeof buf, "max Re = %.6g; ", s.dominant_real);
  report(5, ok, "disease-free state at beta1 = 2.7, beta2 = 0.03", buf + failed_checks(r));
}

void bifurcation() {
  const Parameters p = Parameters::table1();
  const BifurcationReport b = bifurcation_analysis(p);
  const Parameters at = Parameters::table1(0.0, b.beta_star);
  const double r2 = r2_closed(at, at.Lambda / at.mu);
  std::vector<double> re;
  for (auto z : b.eigenvalues) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  const bool spectrum = std::abs(re[2]) < 1e-8 && std::abs(re[1] + p.mu) < 1e-8 && re[0] < 0.0 &&
                        b.eigenvalues.imag().cwiseAbs().maxCoeff() < 1e-8;
  const double ga = std::abs(b.a_fd - b.a_closed) / std::abs(b.a_closed);
  const double gb = std::abs(b.b_fd - b.b_closed) / std::abs(b.b_closed);
  const bool ok = std::abs(b.beta_star - 0.054447) <= 1e-5 && std::abs(r2 - 1.0) <= 1e-8 && spectrum &&
                  b.a() < 0.0 && b.b() > 0.0 && ga <= 1e-6 && gb <= 1e-6;
  char buf[256];
  std::snprintf(buf, sizeof buf, "beta* = %.8f, R2(beta*) - 1 = %.2g, a = %.6g, b = %.6g, fd gaps %.2g / %.2g",
                b.beta_star, r2 - 1.0, b.a(), b.b(), ga, gb);
  report(6, ok, "forward bifurcation of the HIV/AIDS sub-model", buf);
}

void treatment() {
  const ScenarioResult r = run_treatment_impact(Parameters::table1(), TreatmentFamily::tb, true);
  std::ostringstream os;
  for (const auto& v : r.variants) os << v.name << " N(20) = " << total_population(v.terminal) << "; ";
  report(7, r.passed(), "treatment impact at beta1 = 13, beta2 = 0.06", os.str() + failed_checks(r));
}

StateVector random_state(std::mt19937_64& gen, double scale) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  StateVector x;
  for (int i = 0; i < kCompartments; ++i) x(i) = u(gen);
  return x / x.sum() * scale;
}

void properties() {
  std::mt19937_64 gen(31337);
  std::uniform_real_distribution<double> beta(0.0, 20.0), unit(0.0, 1.0);
  std::ostringstream bad;

  double balance = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Parameters p = Parameters::table1(beta(gen), beta(gen) / 50.0);
    if (k % 2) p.incidence = Incidence<double>::instantaneous();
    const StateVector x = random_state(gen, 50000.0 * (0.5 + unit(gen)));
    const StateVector d = full_rhs(x, p);
    balance = std::max(balance, std::abs(d.sum() - population_balance(x, p)) / (d.cwiseAbs().sum() + p.Lambda));
  }
  if (balance > 1e-13) bad << "mass balance " << balance << "; ";

  int invariance = 0;
  for (int k = 0; k < 100; ++k) {
    Parameters p = Parameters::table1(beta(gen), beta(gen) / 60.0);
    if (k % 2) p.incidence = Incidence<double>::instantaneous();
    const StateVector x0 = random_state(gen, 1000.0 + 79000.0 * unit(gen));
    const double n0 = total_population(x0);
    const Trajectory tr = simulate(p, x0, 0.0, 50.0);
    const double upper = std::max(n0, p.Lambda / p.mu) + 1e-6 * n0;
    for (const auto& x : tr.states) {
      if (x.minCoeff() < -1e-9 * n0 || total_population(x) > upper) {
        ++invariance;
        break;
      }
    }
  }
  if (invariance) bad << invariance << " runs leave the invariant region; ";

  double homogeneity = 0.0;
  const Parameters inst = [] {
    Parameters p = Parameters::table1(6.0, 0.1);
    p.incidence = Incidence<double>::instantaneous();
    return p;
  }();
  for (int k = 0; k < 100; ++k) {
    const StateVector x = random_state(gen, 50000.0);
    const double c = 0.01 + 100.0 * unit(gen);
    const auto a = force_of_infection(x, inst);
    const auto b = force_of_infection(StateVector(c * x), inst);
    homogeneity = std::max({homogeneity, std::abs(a.lambdaT - b.lambdaT) / a.lambdaT,
                            std::abs(a.lambdaH - b.lambdaH) / a.lambdaH});
  }
  if (homogeneity > 1e-13) bad << "homogeneity " << homogeneity << "; ";

  int restriction = 0;
  for (int k = 0; k < 200; ++k) {
    const Parameters p = k % 2 ? inst : Parameters::table1(6.0, 0.1);
    const HivState<double> h(20000.0 * unit(gen), 20000.0 * unit(gen), 20000.0 * unit(gen));
    const StateVector fh = full_rhs(embed_hiv(h), p);
    const auto sh = hiv_submodel_rhs(h, p);
    if (fh(S) != sh(0) || fh(IH) != sh(1) || fh(A) != sh(2)) ++restriction;
    const TbState<double> t(20000.0 * unit(gen), 20000.0 * unit(gen), 20000.0 * unit(gen), 20000.0 * unit(gen));
    if (full_rhs(embed_tb(t), p).head<4>() != tb_submodel_rhs(t, p)) ++restriction;
  }
  if (restriction) bad << restriction << " restriction mismatches; ";

  int h2 = 0;
  for (int k = 0; k < 500; ++k) {
    const Parameters p = Parameters::table1(beta(gen), beta(gen) / 50.0);
    const StateVector x = random_state(gen, p.Lambda / p.mu);
    if (x(IT) > 0.0 && force_of_infection(x, p).lambdaH > 0.0 && h2_condition_check(x, p).violating.empty()) ++h2;
  }
  if (h2) bad << h2 << " states satisfy H2; ";

  double eig = 0.0;
  std::normal_distribution<double> n(0.0, 1.0);
  for (int size = 1; size <= 10; ++size) {
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::MatrixXd m(size, size);
      for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) m(i, j) = n(gen);
      }
      for (auto z : eigenvalues(m)) {
        const Eigen::MatrixXcd shifted = m.cast<std::complex<double>>() - z * Eigen::MatrixXcd::Identity(size, size);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
        eig = std::max(eig, svd.singularValues().minCoeff() / m.norm());
      }
    }
  }
  if (eig > 1e-7) bad << "eigenvalue residual " << eig << "; ";

  const std::string detail = bad.str();
  report(8, detail.empty(), "property suite", detail.empty() ? "all properties hold" : detail);
}

}  // namespace

int main() {
  table2();
  table3();
  ngm();
  syndemic_state();
  dfe();
  bifurcation();
  treatment();
  properties();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
