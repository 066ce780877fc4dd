#pragma once

#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "qhyper/rational.hpp"

namespace qhyper {

/// Values for the free symbols of an identity (a, b, ..., q, x1..xr) plus its
/// integer indices (n, m, r, ...).
struct ParamPoint {
  std::map<std::string, QRational, std::less<>> symbols;
  std::map<std::string, long, std::less<>> indices;

  /// Symbol lookup; throws MissingSymbol.
  const QRational& sym(std::string_view name) const;
  long index(std::string_view name) const;
  bool has_sym(std::string_view name) const { return symbols.find(name) != symbols.end(); }
  bool has_index(std::string_view name) const { return indices.find(name) != indices.end(); }

  ParamPoint& set(std::string name, QRational value) {
    symbols.insert_or_assign(std::move(name), std::move(value));
    return *this;
  }
  ParamPoint& set_index(std::string name, long value) {
    indices.insert_or_assign(std::move(name), value);
    return *this;
  }

  /// q, checked against the degenerate values 0 and 1.
  const QRational& q() const;

  friend bool operator==(const ParamPoint&, const ParamPoint&) = default;
};

/// Name of the i-th (1-based) coordinate of the x vector: "x1", "x2", ...
std::string x_name(long i);

/// (a;q)_n for any integer n. Negative n uses (a;q)_{-m} = 1/(a q^{-m};q)_m.
/// Throws PoleError if a negative-index factor (1 - a q^{-j}) vanishes.
QRational qpoch(const QRational& a, const QRational& q, long n);

/// 1/(a;q)_n. Finite for every negative n; throws PoleError when n > 0 and a
/// factor of (a;q)_n vanishes.
QRational qpoch_inv(const QRational& a, const QRational& q, long n);

/// (a_1, ..., a_m; q)_n.
QRational qpoch_multi(std::span<const QRational> as, const QRational& q, long n);
QRational qpoch_multi(std::initializer_list<QRational> as, const QRational& q, long n);

/// Gaussian binomial [n k]_q via the k-factor product; 0 outside 0 <= k <= n.
/// Throws DegenerateQ for q in {0, 1}.
QRational qbinom(long n, long k, const QRational& q);

}  // namespace qhyper
