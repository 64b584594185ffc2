#pragma once

#include <array>
#include <string_view>

#include <Eigen/Core>

namespace syndemic {

/// Compartment indices in the fixed ordering used by every vector, Jacobian
/// and CSV column in the project.
enum Compartment : Eigen::Index {
  S = 0,
  LT = 1,
  IT = 2,
  RT = 3,
  IH = 4,
  A = 5,
  LTH = 6,
  ITH = 7,
  RTH = 8,
  AT = 9,
};

inline constexpr int kCompartments = 10;

inline constexpr std::array<std::string_view, kCompartments> kCompartmentNames = {
    "S", "L_T", "I_T", "R_T", "I_H", "A", "L_TH", "I_TH", "R_TH", "A_T"};

/// The eight infected compartments, in state order.
inline constexpr std::array<Compartment, 8> kInfected = {LT, IT, IH, A, LTH, ITH, RTH, AT};

template <typename Scalar>
using State = Eigen::Matrix<Scalar, kCompartments, 1>;
using StateVector = State<double>;

template <typename Scalar>
using HivState = Eigen::Matrix<Scalar, 3, 1>;  // (S, I_H, A)
template <typename Scalar>
using TbState = Eigen::Matrix<Scalar, 4, 1>;  // (S, L_T, I_T, R_T)

/// Sum of all components, accumulated left to right so that zero padding of a
/// sub-model state does not change the rounding of the total.
template <typename Derived>
typename Derived::Scalar total_population(const Eigen::MatrixBase<Derived>& x) {
  typename Derived::Scalar n = x(0);
  for (Eigen::Index i = 1; i < x.size(); ++i) n += x(i);
  return n;
}

/// The reference initial condition: fractions (60, 14, 3, 0, 4, 1, 12, 5, 0, 1)/100
/// of `total` people.
inline StateVector reference_initial_state(double total = 50000.0) {
  StateVector x;
  x << 60, 14, 3, 0, 4, 1, 12, 5, 0, 1;
  return x * (total / 100.0);
}

template <typename Scalar>
State<Scalar> embed_hiv(const HivState<Scalar>& h) {
  State<Scalar> x = State<Scalar>::Zero();
  x(S) = h(0);
  x(IH) = h(1);
  x(A) = h(2);
  return x;
}

template <typename Scalar>
State<Scalar> embed_tb(const TbState<Scalar>& t) {
  State<Scalar> x = State<Scalar>::Zero();
  x.template head<4>() = t;
  return x;
}

}  // namespace syndemic
