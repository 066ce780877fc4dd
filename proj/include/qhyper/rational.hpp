#pragma once

#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "qhyper/errors.hpp"

namespace qhyper {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Division by zero raises
/// DivisionByZero (a PoleError) instead of aborting, so evaluators can treat
/// a vanishing divisor as a rejected sample point.
class QRational {
 public:
  QRational() = default;

  template <std::integral T>
  QRational(T value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

  QRational(long numerator, long denominator);

  explicit QRational(mpq_class value);

  /// Parses "p", "-p" or "p/r" (decimal integers of any length).
  static QRational parse(std::string_view text);

  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  int sign() const { return sgn(value_); }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  /// Integer power; negative exponents invert (DivisionByZero on 0).
  QRational pow(long exponent) const;

  /// 1 / value.
  QRational inverse() const;

  /// Bit length of the larger of |numerator| and denominator.
  std::size_t height_bits() const;

  /// "p" for integers, "p/r" otherwise.
  std::string str() const;

  QRational operator-() const { return QRational(mpq_class(-value_)); }

  QRational& operator+=(const QRational& other) {
    value_ += other.value_;
    return *this;
  }
  QRational& operator-=(const QRational& other) {
    value_ -= other.value_;
    return *this;
  }
  QRational& operator*=(const QRational& other) {
    value_ *= other.value_;
    return *this;
  }
  QRational& operator/=(const QRational& other);

  friend QRational operator+(QRational lhs, const QRational& rhs) { return lhs += rhs; }
  friend QRational operator-(QRational lhs, const QRational& rhs) { return lhs -= rhs; }
  friend QRational operator*(QRational lhs, const QRational& rhs) { return lhs *= rhs; }
  friend QRational operator/(QRational lhs, const QRational& rhs) { return lhs /= rhs; }

  friend bool operator==(const QRational& lhs, const QRational& rhs) {
    return lhs.value_ == rhs.value_;
  }
  friend std::strong_ordering operator<=>(const QRational& lhs, const QRational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const QRational& value) {
    return os << value.str();
  }

 private:
  mpq_class value_{0};
};

}  // namespace qhyper
