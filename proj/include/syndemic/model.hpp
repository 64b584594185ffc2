#pragma once

#include <stdexcept>

#include "syndemic/parameters.hpp"
#include "syndemic/state.hpp"

namespace syndemic {

template <typename Scalar>
struct ForceOfInfection {
  Scalar lambdaT{0};
  Scalar lambdaH{0};
};

namespace detail {

template <typename Scalar>
Scalar checked_denominator(const ModelParameters<Scalar>& p, const Scalar& total) {
  const Scalar n = incidence_denominator(p, total);
  if (!(n > Scalar(0))) throw std::domain_error("incidence denominator must be positive");
  return n;
}

}  // namespace detail

/// lambda_T = beta1 (I_T + I_TH + A_T) / N,
/// lambda_H = beta2 (I_H + I_TH + L_TH + R_TH + eta (A + A_T)) / N.
template <typename Scalar>
ForceOfInfection<Scalar> force_of_infection(const State<Scalar>& x,
                                            const ModelParameters<Scalar>& p) {
  const Scalar n = detail::checked_denominator(p, total_population(x));
  ForceOfInfection<Scalar> f;
  f.lambdaT = p.beta1 * (x(IT) + x(ITH) + x(AT)) / n;
  f.lambdaH = p.beta2 * (x(IH) + x(ITH) + x(LTH) + x(RTH) + p.eta * (x(A) + x(AT))) / n;
  return f;
}

/// Right-hand side of the ten-compartment TB-HIV/AIDS system.
template <typename Scalar>
State<Scalar> full_rhs(const State<Scalar>& x, const ModelParameters<Scalar>& p) {
  const auto [lT, lH] = force_of_infection(x, p);
  const Scalar& mu = p.mu;
  State<Scalar> dx;
  dx(S) = p.Lambda - lT * x(S) - lH * x(S) - mu * x(S);
  dx(LT) = lT * x(S) + p.beta1p * lT * x(RT) - (p.k1 + p.tau1 + mu) * x(LT);
  dx(IT) = p.k1 * x(LT) - (p.tau2 + p.dT + mu + p.delta * lH) * x(IT);
  dx(RT) = p.tau1 * x(LT) + p.tau2 * x(IT) - (p.beta1p * lT + lH + mu) * x(RT);
  dx(IH) = lH * x(S) - (p.rho1 + p.psi * lT + mu) * x(IH) + p.alpha1 * x(A) + lH * x(RT);
  dx(A) = p.rho1 * x(IH) - p.alpha1 * x(A) - (mu + p.dA) * x(A);
  dx(LTH) = p.beta2p * lT * x(RTH) - (p.k2 + p.tau4 + mu) * x(LTH);
  dx(ITH) = p.delta * lH * x(IT) + p.psi * lT * x(IH) + p.alpha2 * x(AT) + p.k2 * x(LTH) -
            (p.tau3 + p.rho2 + mu + p.dT) * x(ITH);
  dx(RTH) = p.tau3 * x(ITH) + p.tau4 * x(LTH) - (p.beta2p * lT + p.rho3 + mu) * x(RTH);
  dx(AT) = p.rho2 * x(ITH) + p.rho3 * x(RTH) - (p.alpha2 + mu + p.dTA) * x(AT);
  return dx;
}

/// HIV/AIDS-only sub-model on (S, I_H, A) with lambda_H = beta2 (I_H + eta A) / N_H.
/// Written term for term in the same order as full_rhs so that it equals the
/// restriction of full_rhs to zero-padded states bit for bit.
template <typename Scalar>
HivState<Scalar> hiv_submodel_rhs(const HivState<Scalar>& h, const ModelParameters<Scalar>& p) {
  const Scalar& s = h(0);
  const Scalar& ih = h(1);
  const Scalar& a = h(2);
  const Scalar n = detail::checked_denominator(p, Scalar((s + ih) + a));
  const Scalar zero(0);
  const Scalar lH = p.beta2 * (ih + zero + zero + zero + p.eta * (a + zero)) / n;
  const Scalar& mu = p.mu;
  HivState<Scalar> dh;
  dh(0) = p.Lambda - zero * s - lH * s - mu * s;
  dh(1) = lH * s - (p.rho1 + p.psi * zero + mu) * ih + p.alpha1 * a + lH * zero;
  dh(2) = p.rho1 * ih - p.alpha1 * a - (mu + p.dA) * a;
  return dh;
}

/// TB-only sub-model on (S, L_T, I_T, R_T): the first four equations with
/// lambda_H = 0 and N = S + L_T + I_T + R_T.
template <typename Scalar>
TbState<Scalar> tb_submodel_rhs(const TbState<Scalar>& t, const ModelParameters<Scalar>& p) {
  const Scalar n = detail::checked_denominator(p, total_population(t));
  const Scalar zero(0);
  const Scalar lT = p.beta1 * (t(2) + zero + zero) / n;
  const Scalar lH = p.beta2 * (zero + zero + zero + zero + p.eta * (zero + zero)) / n;
  const Scalar& mu = p.mu;
  TbState<Scalar> dt;
  dt(0) = p.Lambda - lT * t(0) - lH * t(0) - mu * t(0);
  dt(1) = lT * t(0) + p.beta1p * lT * t(3) - (p.k1 + p.tau1 + mu) * t(1);
  dt(2) = p.k1 * t(1) - (p.tau2 + p.dT + mu + p.delta * lH) * t(2);
  dt(3) = p.tau1 * t(1) + p.tau2 * t(2) - (p.beta1p * lT + lH + mu) * t(3);
  return dt;
}

/// Lambda - mu N - dT (I_T + I_TH) - dA A - dTA A_T: what the components of
/// full_rhs must add up to.
template <typename Scalar>
Scalar population_balance(const State<Scalar>& x, const ModelParameters<Scalar>& p) {
  return p.Lambda - p.mu * total_population(x) - p.dT * (x(IT) + x(ITH)) - p.dA * x(A) -
         p.dTA * x(AT);
}

/// ||full_rhs(x)||_2 / N, in 1/year. Zero exactly at an equilibrium.
template <typename Scalar>
Scalar residual(const State<Scalar>& x, const ModelParameters<Scalar>& p) {
  const Scalar n = total_population(x);
  if (!(n > Scalar(0))) throw std::domain_error("residual: total population must be positive");
  return full_rhs(x, p).norm() / n;
}

}  // namespace syndemic
