#include "qhyper/rational.hpp"

#include <algorithm>
#include <cstdlib>

namespace qhyper {

QRational::QRational(long numerator, long denominator) {
  if (denominator == 0) throw DivisionByZero();
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

QRational::QRational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

QRational QRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string num_text(text.substr(0, slash));
  const std::string den_text = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  mpz_class num, den;
  if (num_text.empty() || num.set_str(num_text, 10) != 0 || den_text.empty() ||
      den.set_str(den_text, 10) != 0) {
    throw DomainError("not a rational literal: '" + std::string(text) + "'");
  }
  if (den == 0) throw DivisionByZero();
  return QRational(mpq_class(num, den));
}

QRational QRational::pow(long exponent) const {
  if (exponent == 0) return QRational(1);
  if (exponent < 0 && is_zero()) throw DivisionByZero();
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), e);
  if (exponent < 0) std::swap(num, den);
  // Powers of a reduced fraction stay reduced; only the sign may need moving.
  if (den < 0) {
    num = -num;
    den = -den;
  }
  mpq_class out;
  mpq_set_num(out.get_mpq_t(), num.get_mpz_t());
  mpq_set_den(out.get_mpq_t(), den.get_mpz_t());
  QRational result;
  result.value_ = std::move(out);
  return result;
}

QRational QRational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return QRational(mpq_class(1 / value_));
}

std::size_t QRational::height_bits() const {
  return std::max(mpz_sizeinbase(value_.get_num_mpz_t(), 2), mpz_sizeinbase(value_.get_den_mpz_t(), 2));
}

std::string QRational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

QRational& QRational::operator/=(const QRational& other) {
  if (other.is_zero()) throw DivisionByZero();
  value_ /= other.value_;
  return *this;
}

}  // namespace qhyper
