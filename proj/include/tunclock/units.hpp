#pragma once

// Dimensioned quantities with exact rational SI exponents.
//
// Every magnitude is a double in coherent SI units; the dimension vector
// records exponents of (m, kg, s, A, K, mol, cd) as reduced rationals so that
// square roots of half-integral intermediates stay exact.

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "tunclock/error.hpp"

namespace tunclock::units {

class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "3", "-1/2"
  std::string to_string() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

enum class BaseDim : std::size_t { length, mass, time, current, temperature, amount, luminosity };
inline constexpr std::size_t kBaseDims = 7;

class DimensionVector {
 public:
  DimensionVector() = default;
  explicit DimensionVector(const std::array<Rational, kBaseDims>& exps) : exps_(exps) {}

  /// Single base dimension raised to `power`.
  static DimensionVector base(BaseDim d, Rational power = 1);
  static DimensionVector dimensionless() { return {}; }

  /// Convenience for integral SI combinations (length, mass, time first).
  static DimensionVector of(int m, int kg, int s, int A = 0, int K = 0, int mol = 0, int cd = 0);

  const Rational& operator[](BaseDim d) const { return exps_[static_cast<std::size_t>(d)]; }
  const std::array<Rational, kBaseDims>& exponents() const noexcept { return exps_; }

  bool is_dimensionless() const noexcept;

  friend DimensionVector operator+(const DimensionVector& a, const DimensionVector& b);
  friend DimensionVector operator-(const DimensionVector& a, const DimensionVector& b);
  friend DimensionVector operator*(const DimensionVector& a, const Rational& p);

  friend bool operator==(const DimensionVector&, const DimensionVector&) = default;

  /// ASCII SI form such as "m^2*kg*s^-2"; "1" when dimensionless.
  std::string to_string() const;

 private:
  std::array<Rational, kBaseDims> exps_{};
};

namespace dims {
inline DimensionVector none() { return {}; }
inline DimensionVector length() { return DimensionVector::of(1, 0, 0); }
inline DimensionVector mass() { return DimensionVector::of(0, 1, 0); }
inline DimensionVector time() { return DimensionVector::of(0, 0, 1); }
inline DimensionVector frequency() { return DimensionVector::of(0, 0, -1); }
inline DimensionVector velocity() { return DimensionVector::of(1, 0, -1); }
inline DimensionVector energy() { return DimensionVector::of(2, 1, -2); }
inline DimensionVector action() { return DimensionVector::of(2, 1, -1); }
inline DimensionVector energy_density() { return DimensionVector::of(-1, 1, -2); }
}  // namespace dims

class DimensionError : public Error {
 public:
  DimensionError(const std::string& what, DimensionVector lhs, DimensionVector rhs,
                 std::optional<Span> span = std::nullopt);

  const DimensionVector& lhs() const noexcept { return lhs_; }
  const DimensionVector& rhs() const noexcept { return rhs_; }

 private:
  DimensionVector lhs_;
  DimensionVector rhs_;
};

class Quantity {
 public:
  /// Throws RangeError for NaN or infinite values.
  explicit Quantity(double value, DimensionVector dim = {});

  double value() const noexcept { return value_; }
  const DimensionVector& dim() const noexcept { return dim_; }

  /// Value with dimension in parentheses, e.g. "2.99792458e+08 (m*s^-1)".
  std::string to_string() const;

 private:
  double value_;
  DimensionVector dim_;
};

Quantity q_mul(const Quantity& a, const Quantity& b);
Quantity q_div(const Quantity& a, const Quantity& b);
Quantity q_pow(const Quantity& a, const Rational& p);
Quantity q_checked_add(const Quantity& a, const Quantity& b);
Quantity q_checked_sub(const Quantity& a, const Quantity& b);
Quantity q_neg(const Quantity& a);
Quantity q_scale(const Quantity& a, double s);

inline Quantity operator*(const Quantity& a, const Quantity& b) { return q_mul(a, b); }
inline Quantity operator/(const Quantity& a, const Quantity& b) { return q_div(a, b); }
inline Quantity operator+(const Quantity& a, const Quantity& b) { return q_checked_add(a, b); }
inline Quantity operator-(const Quantity& a, const Quantity& b) { return q_checked_sub(a, b); }

}  // namespace tunclock::units
