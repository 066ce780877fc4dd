#include "qhyper/qcore.hpp"

#include <algorithm>

namespace qhyper {

const QRational& ParamPoint::sym(std::string_view name) const {
  const auto it = symbols.find(name);
  if (it == symbols.end()) throw MissingSymbol(std::string(name));
  return it->second;
}

long ParamPoint::index(std::string_view name) const {
  const auto it = indices.find(name);
  if (it == indices.end()) throw MissingSymbol(std::string(name));
  return it->second;
}

const QRational& ParamPoint::q() const {
  const QRational& value = sym("q");
  if (value.is_zero() || value.is_one()) throw DegenerateQ("q must not be 0 or 1");
  return value;
}

std::string x_name(long i) { return "x" + std::to_string(i); }

namespace {

// prod_{j=1}^{m} (1 - a q^{-j})
QRational negative_factor_product(const QRational& a, const QRational& q, long m) {
  const QRational q_inv = q.inverse();
  QRational power = q_inv;
  QRational product(1);
  for (long j = 1; j <= m; ++j) {
    product *= QRational(1) - a * power;
    power *= q_inv;
  }
  return product;
}

}  // namespace

QRational qpoch(const QRational& a, const QRational& q, long n) {
  if (n >= 0) {
    QRational product(1);
    QRational term = a;
    for (long j = 0; j < n; ++j) {
      product *= QRational(1) - term;
      term *= q;
    }
    return product;
  }
  const QRational denominator = negative_factor_product(a, q, -n);
  if (denominator.is_zero()) {
    throw PoleError("(" + a.str() + ";" + q.str() + ")_" + std::to_string(n) + " has a vanishing factor");
  }
  return denominator.inverse();
}

QRational qpoch_inv(const QRational& a, const QRational& q, long n) {
  if (n < 0) return negative_factor_product(a, q, -n);
  const QRational value = qpoch(a, q, n);
  if (value.is_zero()) {
    throw PoleError("1/(" + a.str() + ";" + q.str() + ")_" + std::to_string(n) + " has a vanishing factor");
  }
  return value.inverse();
}

QRational qpoch_multi(std::span<const QRational> as, const QRational& q, long n) {
  QRational product(1);
  for (std::size_t i = 0; i < as.size(); ++i) {
    try {
      product *= qpoch(as[i], q, n);
    } catch (const PoleError& e) {
      throw PoleError("factor " + std::to_string(i) + ": " + e.what());
    }
  }
  return product;
}

QRational qpoch_multi(std::initializer_list<QRational> as, const QRational& q, long n) {
  return qpoch_multi(std::span<const QRational>(as.begin(), as.size()), q, n);
}

QRational qbinom(long n, long k, const QRational& q) {
  if (q.is_zero() || q.is_one()) throw DegenerateQ("q-binomial at q in {0, 1}");
  if (k < 0 || k > n) return QRational(0);
  k = std::min(k, n - k);
  // prod_{i=1}^{k} (1 - q^{n-k+i}) / (1 - q^i)
  QRational num(1), den(1);
  QRational top = q.pow(n - k + 1);
  QRational bottom = q;
  for (long i = 1; i <= k; ++i) {
    num *= QRational(1) - top;
    den *= QRational(1) - bottom;
    top *= q;
    bottom *= q;
  }
  if (den.is_zero()) throw PoleError("q-binomial denominator vanishes (q is a root of unity)");
  return num / den;
}

}  // namespace qhyper
