#include "qhyper/psers.hpp"

#include <chrono>
#include <exception>
#include <mutex>
#include <sstream>

namespace qhyper {

namespace {

const QRational kOne(1);
constexpr long kIterationCap = 1'000'000;

void check_order(long order) {
  if (order < 0) throw DomainError("series order must be nonnegative");
}

QSeries poch(const QRational& c, long e0, long step, long order) {
  return series_product(pochhammer_rule(c, e0, step), order);
}

// (c q^{e0}; q^{step})_count
QSeries poch_finite(const QRational& c, long e0, long step, long count, long order) {
  QSeries result = QSeries::constant(order, kOne);
  for (long j = 0; j < count; ++j) result.mul_factor(c, e0 + step * j);
  return result;
}

QSeries jacobi_triple(const ParamPoint& params, long N) {
  const QRational& z = params.sym("z");
  QSeries lhs(N);
  for (long k = 0; k * k <= N; ++k) {
    lhs += QSeries::monomial(N, z.pow(k), k * k);
    if (k > 0) lhs += QSeries::monomial(N, z.pow(-k), k * k);
  }
  const QSeries rhs = poch(kOne, 2, 2, N) * poch(-z.inverse(), 1, 2, N) * poch(-z, 1, 2, N);
  return lhs - rhs;
}

QSeries quintuple(const ParamPoint& params, long N) {
  const QRational& z = params.sym("z");
  QSeries lhs(N);
  // both exponents are >= 0 for every integer k and grow quadratically in |k|
  for (long m = 0;; ++m) {
    bool any = false;
    for (const long k : {m, -m - 1}) {
      const long e1 = k * (3 * k + 1) / 2;
      const long e2 = e1 + 2 * k + 1;
      if (e1 <= N || e2 <= N) any = true;
      lhs += QSeries::monomial(N, z.pow(3 * k + 3), e2);
      lhs -= QSeries::monomial(N, z.pow(3 * k + 1), e1);
    }
    if (!any) break;
  }
  const QRational z2 = z * z;
  const QSeries rhs = poch(kOne, 1, 1, N) * poch(z, 0, 1, N) * poch(z.inverse(), 1, 1, N) * poch(z2, 1, 2, N) *
                      poch(z2.inverse(), 1, 2, N);
  return lhs - rhs;
}

QSeries lebesgue_inf(const ParamPoint& params, long N) {
  const QRational& a = params.sym("a");
  QSeries lhs(N);
  QSeries term = QSeries::constant(N, kOne);  // (a;q)_k/(q;q)_k
  for (long k = 0; k * (k + 1) / 2 <= N; ++k) {
    if (k > 0) {
      term.mul_factor(a, k - 1);
      term.div_factor(kOne, k);
    }
    QSeries shifted(N);
    const long e = k * (k + 1) / 2;
    for (long j = 0; j + e <= N; ++j) shifted = shifted + QSeries::monomial(N, term[j], j + e);
    lhs += shifted;
  }
  const QSeries rhs = poch(a, 1, 2, N) * poch(-kOne, 1, 1, N);
  return lhs - rhs;
}

QSeries shift_by(const QSeries& s, const QRational& c, long e) {
  std::vector<QRational> out(static_cast<std::size_t>(s.order() + 1));
  for (long j = 0; j + e <= s.order(); ++j) out[static_cast<std::size_t>(j + e)] = s[j] * c;
  return QSeries(s.order(), std::move(out));
}

QSeries ab_product(const QRational& z, long N) { return poch(-z, 1, 2, N) * poch(z * z, 4, 4, N); }

QSeries ab11(const ParamPoint& params, long N) {
  const QRational& z = params.sym("z");
  const QRational z2 = z * z;
  // k = 0 term: (z^2q^2;q^2)_{-1}(1 - z^2) = 1
  QSeries lhs = QSeries::constant(N, kOne);
  for (long k = 1; 2 * k * k - k <= N; ++k) {
    QSeries term = poch_finite(z2, 2, 2, k - 1, N);
    term.mul_factor(z2, 4 * k);
    for (long j = 1; j <= k; ++j) term.div_factor(kOne, 2 * j);
    lhs += shift_by(term, z.pow(k), 2 * k * k - k);
  }
  return lhs - ab_product(z, N);
}

QSeries ab00(const ParamPoint& params, long N) {
  const QRational& z = params.sym("z");
  const QRational z2 = z * z;
  QSeries lhs(N);
  for (long k = 0; 2 * k * k + k <= N; ++k) {
    QSeries term = poch_finite(z2, 2, 2, k, N);
    term.mul_factor(-z, 2 * k + 1);
    for (long j = 1; j <= k; ++j) term.div_factor(kOne, 2 * j);
    lhs += shift_by(term, z.pow(k), 2 * k * k + k);
  }
  return lhs - ab_product(z, N);
}

QSeries q_kummer(const ParamPoint& params, long N) {
  const QRational& a = params.sym("a");
  const QRational& b = params.sym("b");
  QSeries lhs(N);
  QSeries term = QSeries::constant(N, kOne);  // (a,b;q)_k/(q,aq/b;q)_k (-q/b)^k
  for (long k = 0; k <= N; ++k) {
    if (k > 0) {
      term.mul_factor(a, k - 1);
      term.mul_factor(b, k - 1);
      term.div_factor(kOne, k);
      term.div_factor(a / b, k);
      term = shift_by(term, -b.inverse(), 1);
    }
    lhs += term;
  }
  QSeries rhs = poch(a, 1, 2, N) * poch(a / (b * b), 2, 2, N) * poch(-kOne, 1, 1, N);
  rhs = rhs * (poch(a / b, 1, 1, N) * poch(-b.inverse(), 1, 1, N)).inverse();
  return lhs - rhs;
}

}  // namespace

QSeries::QSeries(long order) : order_(order), coeffs_(static_cast<std::size_t>(order + 1)) { check_order(order); }

QSeries::QSeries(long order, std::vector<QRational> coefficients) : order_(order), coeffs_(std::move(coefficients)) {
  check_order(order);
  coeffs_.resize(static_cast<std::size_t>(order + 1));
}

QSeries QSeries::constant(long order, const QRational& value) {
  QSeries s(order);
  s.coeffs_[0] = value;
  return s;
}

QSeries QSeries::monomial(long order, const QRational& c, long e) {
  QSeries s(order);
  if (e < 0) throw DomainError("negative exponent in a power series");
  if (e <= order) s.coeffs_[static_cast<std::size_t>(e)] = c;
  return s;
}

bool QSeries::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

QSeries QSeries::truncate(long order) const {
  if (order > order_) throw DomainError("cannot extend a truncated series");
  return QSeries(order, std::vector<QRational>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

QSeries& QSeries::operator+=(const QSeries& other) {
  if (other.order_ != order_) throw DomainError("series orders differ");
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& other) {
  if (other.order_ != order_) throw DomainError("series orders differ");
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  return *this;
}

QSeries& QSeries::operator*=(const QRational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

QSeries operator*(const QSeries& lhs, const QSeries& rhs) {
  if (lhs.order_ != rhs.order_) throw DomainError("series orders differ");
  QSeries out(lhs.order_);
  for (long i = 0; i <= lhs.order_; ++i) {
    const QRational& x = lhs.coeffs_[static_cast<std::size_t>(i)];
    if (x.is_zero()) continue;
    for (long j = 0; i + j <= lhs.order_; ++j) out.coeffs_[static_cast<std::size_t>(i + j)] += x * rhs.coeffs_[static_cast<std::size_t>(j)];
  }
  return out;
}

QSeries& QSeries::mul_factor(const QRational& c, long e) {
  if (e < 0) throw DomainError("negative exponent in a power series");
  if (e == 0) return *this *= kOne - c;
  for (long j = order_; j >= e; --j) coeffs_[static_cast<std::size_t>(j)] -= c * coeffs_[static_cast<std::size_t>(j - e)];
  return *this;
}

QSeries& QSeries::div_factor(const QRational& c, long e) {
  if (e < 0) throw DomainError("negative exponent in a power series");
  if (e == 0) {
    const QRational unit = kOne - c;
    if (unit.is_zero()) throw PoleError("division by the series factor (1 - q^0)");
    for (auto& x : coeffs_) x /= unit;
    return *this;
  }
  // y = x / (1 - c q^e)  <=>  y_j = x_j + c y_{j-e}
  for (long j = e; j <= order_; ++j) coeffs_[static_cast<std::size_t>(j)] += c * coeffs_[static_cast<std::size_t>(j - e)];
  return *this;
}

QSeries QSeries::inverse() const {
  if (coeffs_[0].is_zero()) throw PoleError("series with zero constant term is not invertible");
  QSeries out(order_);
  const QRational c0 = coeffs_[0].inverse();
  out.coeffs_[0] = c0;
  for (long n = 1; n <= order_; ++n) {
    QRational acc(0);
    for (long k = 1; k <= n; ++k) acc += coeffs_[static_cast<std::size_t>(k)] * out.coeffs_[static_cast<std::size_t>(n - k)];
    out.coeffs_[static_cast<std::size_t>(n)] = -acc * c0;
  }
  return out;
}

std::string to_string(const QSeries& series) {
  std::ostringstream os;
  bool first = true;
  for (long j = 0; j <= series.order(); ++j) {
    if (series[j].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << series[j] << ")q^" << j;
    first = false;
  }
  if (first) os << "0";
  os << " + O(q^" << series.order() + 1 << ")";
  return os.str();
}

QSeries series_product(const FactorRule& rule, long order) {
  QSeries result = QSeries::constant(order, kOne);
  long previous = -1;
  for (long k = 0; k < kIterationCap; ++k) {
    const auto factor = rule(k);
    if (!factor) return result;
    if (factor->exponent <= previous || factor->exponent < 0) {
      throw NonTerminatingExponent("factor exponents must be nonnegative and strictly increasing (k = " +
                                   std::to_string(k) + ")");
    }
    previous = factor->exponent;
    if (factor->exponent > order) return result;
    result.mul_factor(factor->coefficient, factor->exponent);
  }
  throw NonTerminatingExponent("factor exponents did not exceed the order within the iteration cap");
}

FactorRule pochhammer_rule(const QRational& c, long e0, long step) {
  return [c, e0, step](long k) -> std::optional<Factor> { return Factor{c, e0 + step * k}; };
}

const std::vector<std::string>& series_identity_ids() {
  static const std::vector<std::string> ids = {"jacobi_triple", "quintuple", "lebesgue_inf",
                                               "ab11",          "ab00",      "q_kummer"};
  return ids;
}

std::vector<std::string> series_symbols(std::string_view id) {
  if (id == "lebesgue_inf") return {"a"};
  if (id == "q_kummer") return {"a", "b"};
  if (id == "jacobi_triple" || id == "quintuple" || id == "ab11" || id == "ab00") return {"z"};
  throw ConfigError("unknown series identity: " + std::string(id));
}

QSeries infinite_identity_residual(std::string_view id, const ParamPoint& params, long order) {
  check_order(order);
  if (id == "jacobi_triple") return jacobi_triple(params, order);
  if (id == "quintuple") return quintuple(params, order);
  if (id == "lebesgue_inf") return lebesgue_inf(params, order);
  if (id == "ab11") return ab11(params, order);
  if (id == "ab00") return ab00(params, order);
  if (id == "q_kummer") return q_kummer(params, order);
  throw ConfigError("unknown series identity: " + std::string(id));
}

QSeries jacobi_product_relation_residual(const QRational& z, long N) {
  const QRational zi = z.inverse();
  const QSeries lhs = poch(-kOne, 1, 1, N) * poch(kOne, 1, 1, N) * poch(-zi, 1, 1, N) * poch(-z, 0, 1, N) *
                      (poch(-zi, 2, 2, N) * poch(-z, 0, 2, N)).inverse();
  const QSeries rhs = poch(kOne, 2, 2, N) * poch(-zi, 1, 2, N) * poch(-z, 1, 2, N);
  return lhs - rhs;
}

QSeries quintuple_product_relation_residual(const QRational& z, long N) {
  const QRational z2 = z * z;
  const QSeries lhs = poch(-z, 0, 1, N) * poch(-z.inverse(), 1, 1, N) *
                      (poch(z2, 1, 1, N) * poch(z2.inverse(), 0, 1, N)).inverse();
  const QSeries rhs = (poch(z2, 1, 2, N) * poch(z, 0, 1, N) * poch(z2.inverse(), 1, 2, N) * poch(z.inverse(), 1, 1, N))
                          .inverse() *
                      (-z2);
  return lhs - rhs;
}

namespace {

struct SeriesTrial {
  enum class Kind { kPass, kFail, kExhausted } kind = Kind::kExhausted;
  long resamples = 0;
  ParamPoint point;
  long degree = 0;
  QRational coefficient;
};

SeriesTrial run_series_trial(std::string_view id, const std::vector<std::string>& symbols, const SeriesOptions& o,
                             long trial) {
  Sampler sampler(o.seed, "series/" + std::string(id), static_cast<std::uint64_t>(trial), o.height);
  SeriesTrial out;
  for (long attempt = 0; attempt < o.retry_cap; ++attempt) {
    ParamPoint p;
    for (const auto& name : symbols) p.set(name, sampler.rational());
    try {
      const QSeries residual = infinite_identity_residual(id, p, o.order);
      out.kind = SeriesTrial::Kind::kPass;
      for (long j = 0; j <= o.order; ++j) {
        if (!residual[j].is_zero()) {
          out.kind = SeriesTrial::Kind::kFail;
          out.degree = j;
          out.coefficient = residual[j];
          break;
        }
      }
      out.point = std::move(p);
      return out;
    } catch (const PoleError&) {
      ++out.resamples;
    }
  }
  return out;
}

}  // namespace

SeriesReport check_series(std::string_view id, const SeriesOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (options.trials < 1) throw ConfigError("trials must be at least 1");
  if (options.order < 0) throw ConfigError("series order must be nonnegative");
  const auto symbols = series_symbols(id);

  std::vector<SeriesTrial> outcomes(static_cast<std::size_t>(options.trials));
  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 1)
  for (long t = 0; t < options.trials; ++t) {
    try {
      outcomes[static_cast<std::size_t>(t)] = run_series_trial(id, symbols, options, t);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  SeriesReport report;
  report.id = std::string(id);
  report.seed = options.seed;
  report.order = options.order;
  for (long t = 0; t < options.trials; ++t) {
    auto& o = outcomes[static_cast<std::size_t>(t)];
    ++report.attempted;
    report.resamples += o.resamples;
    switch (o.kind) {
      case SeriesTrial::Kind::kPass:
        ++report.succeeded;
        break;
      case SeriesTrial::Kind::kFail:
        ++report.failed;
        if (!report.first_failure) report.first_failure = SeriesFailure{t, std::move(o.point), o.degree, o.coefficient};
        break;
      case SeriesTrial::Kind::kExhausted:
        ++report.rejected;
        break;
    }
  }
  if (report.failed > 0) {
    report.status = VerifyStatus::kCounterexample;
  } else if (report.rejected > 0) {
    report.status = VerifyStatus::kRetryExhausted;
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace qhyper
