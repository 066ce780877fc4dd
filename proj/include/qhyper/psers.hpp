#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qhyper/identities.hpp"
#include "qhyper/qcore.hpp"

namespace qhyper {

/// sum_{j=0}^{N} c_j q^j + O(q^{N+1}).
class QSeries {
 public:
  explicit QSeries(long order);
  QSeries(long order, std::vector<QRational> coefficients);

  static QSeries constant(long order, const QRational& value);
  /// c q^e (zero when e > order).
  static QSeries monomial(long order, const QRational& c, long e);

  long order() const { return order_; }
  const std::vector<QRational>& coefficients() const { return coeffs_; }
  const QRational& operator[](long j) const { return coeffs_[static_cast<std::size_t>(j)]; }

  bool is_zero() const;
  QSeries truncate(long order) const;

  QSeries& operator+=(const QSeries& other);
  QSeries& operator-=(const QSeries& other);
  QSeries& operator*=(const QRational& scalar);
  friend QSeries operator+(QSeries lhs, const QSeries& rhs) { return lhs += rhs; }
  friend QSeries operator-(QSeries lhs, const QSeries& rhs) { return lhs -= rhs; }
  friend QSeries operator*(const QSeries& lhs, const QSeries& rhs);
  friend QSeries operator*(QSeries lhs, const QRational& rhs) { return lhs *= rhs; }

  /// In place: times (1 - c q^e), and divided by (1 - c q^e). Division with
  /// e = 0 and c = 1 raises PoleError.
  QSeries& mul_factor(const QRational& c, long e);
  QSeries& div_factor(const QRational& c, long e);

  /// Multiplicative inverse; PoleError when the constant term is zero.
  QSeries inverse() const;

  friend bool operator==(const QSeries&, const QSeries&) = default;

 private:
  long order_;
  std::vector<QRational> coeffs_;
};

std::string to_string(const QSeries& series);

struct Factor {
  QRational coefficient;
  long exponent = 0;
};

/// k -> factor (1 - c_k q^{e_k}); std::nullopt ends a finite product.
using FactorRule = std::function<std::optional<Factor>(long k)>;

/// prod_k (1 - c_k q^{e_k}) mod q^{N+1}. Exponents must be nonnegative and
/// strictly increasing; the product stops once e_k > N.
QSeries series_product(const FactorRule& rule, long order);

/// (c q^{e0}; q^{step})_inf truncated, as a FactorRule.
FactorRule pochhammer_rule(const QRational& c, long e0, long step);

/// The six infinite identities checked as truncated series.
const std::vector<std::string>& series_identity_ids();
/// Non-q symbols each identity needs.
std::vector<std::string> series_symbols(std::string_view id);

/// LHS - RHS to order N; the zero series when the identity holds.
QSeries infinite_identity_residual(std::string_view id, const ParamPoint& params, long order);

/// The two product rearrangements used on the way to the triple and
/// quintuple product limits.
QSeries jacobi_product_relation_residual(const QRational& z, long order);
QSeries quintuple_product_relation_residual(const QRational& z, long order);

inline constexpr long kDefaultSeriesOrder = 60;

struct SeriesOptions {
  long trials = 5;
  std::uint64_t seed = 42;
  long order = kDefaultSeriesOrder;
  long height = kDefaultHeight;
  long retry_cap = 100;
};

struct SeriesFailure {
  long trial = 0;
  ParamPoint point;
  long degree = 0;  // lowest nonzero residual coefficient
  QRational coefficient;
};

struct SeriesReport {
  std::string id;
  VerifyStatus status = VerifyStatus::kPass;
  long attempted = 0;
  long succeeded = 0;
  long failed = 0;
  long rejected = 0;
  long resamples = 0;
  std::uint64_t seed = 0;
  long order = 0;
  double elapsed_ms = 0.0;
  std::optional<SeriesFailure> first_failure;
};

/// Residual series at random rational specializations; trials in parallel.
SeriesReport check_series(std::string_view id, const SeriesOptions& options);

}  // namespace qhyper
