#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <string>

#include "horolab/core/rational.hpp"

namespace horolab {

/// 50-digit binary float used where double cancellation would swamp the
/// quantity being measured (Taylor remainders, expanded translates).
using HiReal = boost::multiprecision::cpp_bin_float_50;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational abs(const Rational& x) { return rabs(x); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double abs(double x) { return std::fabs(x); }
  static bool is_zero(double x) { return x == 0.0; }
};

template <>
struct scalar_traits<HiReal> {
  static constexpr bool exact = false;
  static HiReal abs(const HiReal& x) { return boost::multiprecision::abs(x); }
  static bool is_zero(const HiReal& x) { return x == 0; }
};

template <class To, class From>
To scalar_cast(const From& x);

template <>
inline double scalar_cast<double, double>(const double& x) { return x; }
template <>
inline double scalar_cast<double, Rational>(const Rational& x) { return x.get_d(); }
template <>
inline double scalar_cast<double, HiReal>(const HiReal& x) { return x.convert_to<double>(); }
template <>
inline HiReal scalar_cast<HiReal, HiReal>(const HiReal& x) { return x; }
template <>
inline HiReal scalar_cast<HiReal, double>(const double& x) { return HiReal(x); }
template <>
inline HiReal scalar_cast<HiReal, Rational>(const Rational& x) {
  return HiReal(x.get_num().get_str()) / HiReal(x.get_den().get_str());
}
template <>
inline Rational scalar_cast<Rational, Rational>(const Rational& x) { return x; }
template <>
inline Rational scalar_cast<Rational, double>(const double& x) { return Rational(x); }

}  // namespace horolab
