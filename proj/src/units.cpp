#include "tunclock/units.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace tunclock::units {

namespace {

__extension__ typedef __int128 Wide;

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw RangeError("rational exponent overflow");
  }
  return static_cast<std::int64_t>(v);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make_reduced(Wide num, Wide den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num) : num_(num), den_(1) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    if (num == std::numeric_limits<std::int64_t>::min() || den == std::numeric_limits<std::int64_t>::min()) {
      throw RangeError("rational exponent overflow");
    }
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return make_reduced(-Wide{num_}, den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return make_reduced(Wide{a.num_} * b.den_ + Wide{b.num_} * a.den_, Wide{a.den_} * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make_reduced(Wide{a.num_} * b.den_ - Wide{b.num_} * a.den_, Wide{a.den_} * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_reduced(Wide{a.num_} * b.num_, Wide{a.den_} * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw DomainError("rational division by zero");
  return make_reduced(Wide{a.num_} * b.den_, Wide{a.den_} * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = Wide{a.num_} * b.den_;
  Wide rhs = Wide{b.num_} * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// --- DimensionVector -------------------------------------------------------

DimensionVector DimensionVector::base(BaseDim d, Rational power) {
  DimensionVector v;
  v.exps_[static_cast<std::size_t>(d)] = power;
  return v;
}

DimensionVector DimensionVector::of(int m, int kg, int s, int A, int K, int mol, int cd) {
  return DimensionVector({Rational(m), Rational(kg), Rational(s), Rational(A), Rational(K), Rational(mol),
                          Rational(cd)});
}

bool DimensionVector::is_dimensionless() const noexcept {
  for (const auto& e : exps_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

DimensionVector operator+(const DimensionVector& a, const DimensionVector& b) {
  DimensionVector out;
  for (std::size_t i = 0; i < kBaseDims; ++i) out.exps_[i] = a.exps_[i] + b.exps_[i];
  return out;
}

DimensionVector operator-(const DimensionVector& a, const DimensionVector& b) {
  DimensionVector out;
  for (std::size_t i = 0; i < kBaseDims; ++i) out.exps_[i] = a.exps_[i] - b.exps_[i];
  return out;
}

DimensionVector operator*(const DimensionVector& a, const Rational& p) {
  DimensionVector out;
  for (std::size_t i = 0; i < kBaseDims; ++i) out.exps_[i] = a.exps_[i] * p;
  return out;
}

std::string DimensionVector::to_string() const {
  static constexpr std::array<const char*, kBaseDims> kSymbols = {"m", "kg", "s", "A", "K", "mol", "cd"};
  std::string out;
  for (std::size_t i = 0; i < kBaseDims; ++i) {
    const Rational& e = exps_[i];
    if (e.is_zero()) continue;
    if (!out.empty()) out += '*';
    out += kSymbols[i];
    if (e == Rational(1)) continue;
    out += '^';
    if (e.is_integer()) {
      out += e.to_string();
    } else {
      out += '(' + e.to_string() + ')';
    }
  }
  return out.empty() ? "1" : out;
}

DimensionError::DimensionError(const std::string& what, DimensionVector lhs, DimensionVector rhs,
                               std::optional<Span> span)
    : Error(ErrorKind::dimension, what + " [" + lhs.to_string() + " vs " + rhs.to_string() + "]", span),
      lhs_(std::move(lhs)),
      rhs_(std::move(rhs)) {}

// --- Quantity --------------------------------------------------------------

Quantity::Quantity(double value, DimensionVector dim) : value_(value), dim_(std::move(dim)) {
  if (!std::isfinite(value)) throw RangeError("non-finite quantity value");
}

std::string Quantity::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << value_ << " (" << dim_.to_string() << ")";
  return os.str();
}

namespace {

double checked(double v, const char* op) {
  if (!std::isfinite(v)) throw RangeError(std::string("non-finite result in ") + op);
  return v;
}

}  // namespace

Quantity q_mul(const Quantity& a, const Quantity& b) {
  return Quantity(checked(a.value() * b.value(), "multiplication"), a.dim() + b.dim());
}

Quantity q_div(const Quantity& a, const Quantity& b) {
  if (b.value() == 0.0) throw RangeError("division by zero quantity");
  return Quantity(checked(a.value() / b.value(), "division"), a.dim() - b.dim());
}

Quantity q_pow(const Quantity& a, const Rational& p) {
  const double x = a.value();
  double v = 0.0;
  if (p.is_zero()) {
    v = 1.0;
  } else if (x < 0.0) {
    if (p.den() % 2 == 0) throw DomainError("negative base with even-root exponent " + p.to_string());
    double mag = std::pow(-x, p.to_double());
    v = (p.num() % 2 != 0) ? -mag : mag;
  } else if (p == Rational(1, 2)) {
    v = std::sqrt(x);
  } else if (p == Rational(1, 3)) {
    v = std::cbrt(x);
  } else if (p.is_integer()) {
    v = std::pow(x, static_cast<double>(p.num()));
  } else {
    v = std::pow(x, p.to_double());
  }
  return Quantity(checked(v, "power"), a.dim() * p);
}

Quantity q_checked_add(const Quantity& a, const Quantity& b) {
  if (a.dim() != b.dim()) throw DimensionError("cannot add quantities of different dimension", a.dim(), b.dim());
  return Quantity(checked(a.value() + b.value(), "addition"), a.dim());
}

Quantity q_checked_sub(const Quantity& a, const Quantity& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("cannot subtract quantities of different dimension", a.dim(), b.dim());
  }
  return Quantity(checked(a.value() - b.value(), "subtraction"), a.dim());
}

Quantity q_neg(const Quantity& a) { return Quantity(-a.value(), a.dim()); }

Quantity q_scale(const Quantity& a, double s) { return Quantity(checked(a.value() * s, "scaling"), a.dim()); }

}  // namespace tunclock::units
