#include "qhyper/schlosser.hpp"

#include <exception>
#include <limits>

#include <omp.h>

namespace qhyper::schlosser {

namespace {

const QRational kOne(1);

// Writes the idx-th point of {0..n}^r (mixed radix, x_1 fastest) into k.
void decode(long idx, long n, std::vector<long>& k) {
  for (auto& ki : k) {
    ki = idx % (n + 1);
    idx /= n + 1;
  }
}

template <typename Term>
QRational box_sum_serial(long n, long r, const Term& term) {
  const long total = box_size(n, r);
  std::vector<long> k(static_cast<std::size_t>(r));
  QRational sum(0);
  for (long idx = 0; idx < total; ++idx) {
    decode(idx, n, k);
    sum += term(k);
  }
  return sum;
}

// Exceptions cannot cross the parallel region, so the first one is captured
// and rethrown after the join.
template <typename Term>
QRational box_sum_parallel(long n, long r, const Term& term) {
  const long total = box_size(n, r);
  if (total < 32 || omp_in_parallel()) return box_sum_serial(n, r, term);

  std::vector<QRational> partial(static_cast<std::size_t>(omp_get_max_threads()));
  std::exception_ptr failure;
#pragma omp parallel
  {
    std::vector<long> k(static_cast<std::size_t>(r));
    QRational local(0);
#pragma omp for schedule(static)
    for (long idx = 0; idx < total; ++idx) {
      try {
        decode(idx, n, k);
        local += term(k);
      } catch (...) {
#pragma omp critical(qhyper_box_sum_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = std::move(local);
  }
  if (failure) std::rethrow_exception(failure);
  QRational sum(0);
  for (const auto& value : partial) sum += value;
  return sum;
}

QRational pair_product_nq(std::span<const QRational> x, const QRational& a, const QRational& factor) {
  QRational product(1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) product *= kOne - a * x[i] * x[j] * factor;
  }
  return product;
}

QRational cr_summand(const QRational& a, const QRational& q, std::span<const QRational> x,
                     CrSign sign, std::span<const long> s, const QRational& base_denominator) {
  const long r = static_cast<long>(x.size());
  QRational term = vandermonde(x, s, a, q) / base_denominator;
  long total = 0;
  for (const long si : s) total += si;
  const long exponent = (r - 1) * total;
  term /= q.pow(exponent);
  switch (sign) {
    case CrSign::kPlus:
      break;
    case CrSign::kAlternating:
      if (total % 2 != 0) term = -term;
      break;
    case CrSign::kAlternatingAsPrinted:
      if (exponent % 2 != 0) term = -term;
      break;
  }
  return term;
}

QRational cr_base_denominator(const QRational& a, const QRational& q, std::span<const QRational> x,
                              long n) {
  QRational den(1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) den *= x[i] - x[j];
  }
  return den * pair_product_nq(x, a, q.pow(n));
}

}  // namespace

Params Params::from_point(const ParamPoint& point) {
  Params p{point.sym("a"), point.sym("b"), point.sym("c"), point.sym("d"), point.q(), {}};
  const long r = point.index("r");
  for (long i = 1; i <= r; ++i) p.x.push_back(point.sym(x_name(i)));
  return p;
}

long box_size(long n, long r) {
  long total = 1;
  for (long i = 0; i < r; ++i) {
    if (total > std::numeric_limits<long>::max() / (n + 1)) return std::numeric_limits<long>::max();
    total *= n + 1;
  }
  return total;
}

QRational vandermonde(std::span<const QRational> x, std::span<const long> k, const QRational& a,
                      const QRational& q) {
  std::vector<QRational> shifted;
  shifted.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) shifted.push_back(x[i] * q.pow(k[i]));
  QRational product(1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      product *= (shifted[i] - shifted[j]) * (kOne - a * shifted[i] * x[j] * q.pow(k[j]));
    }
  }
  return product;
}

QRational summand(const Params& p, long n, std::span<const long> k) {
  const long r = p.r();
  for (const long ki : k) {
    if (ki < 0 || ki > n) return QRational(0);
  }
  const std::vector<long> zeros(static_cast<std::size_t>(r), 0);
  QRational term = vandermonde(p.x, k, p.a, p.q) / vandermonde(p.x, zeros, p.a, p.q);
  const QRational bcd = p.b * p.c * p.d;
  const QRational& q = p.q;
  for (long i = 0; i < r; ++i) {
    const QRational& xi = p.x[static_cast<std::size_t>(i)];
    const long ki = k[static_cast<std::size_t>(i)];
    const QRational axx = p.a * xi * xi;
    term *= (kOne - axx * q.pow(2 * ki)) / (kOne - axx);
    const QRational num = qpoch_multi({axx, p.b * xi, p.c * xi, p.d * xi,
                                       p.a * p.a * xi * q.pow(n - r + 2) / bcd, q.pow(-n)},
                                      q, ki);
    const QRational den = qpoch_multi({q, p.a * xi * q / p.b, p.a * xi * q / p.c, p.a * xi * q / p.d,
                                       bcd * xi * q.pow(r - n - 1) / p.a, axx * q.pow(n + 1)},
                                      q, ki);
    term *= num * q.pow(ki) / den;
  }
  return term;
}

QRational rhs(const Params& p, long n) {
  const long r = p.r();
  const QRational& q = p.q;
  const QRational bcd = p.b * p.c * p.d;
  QRational value = pair_product_nq(p.x, p.a, q.pow(n)) / pair_product_nq(p.x, p.a, kOne);
  for (long i = 1; i <= r; ++i) {
    const QRational& xi = p.x[static_cast<std::size_t>(i - 1)];
    const QRational aqi = p.a * q.pow(2 - i);
    value *= qpoch_multi({p.a * xi * xi * q, aqi / (p.b * p.c), aqi / (p.b * p.d), aqi / (p.c * p.d)}, q, n);
    value /= qpoch_multi({p.a * q.pow(2 - r) / (bcd * xi), p.a * xi * q / p.b, p.a * xi * q / p.c,
                          p.a * xi * q / p.d},
                         q, n);
  }
  return value;
}

QRational lhs(const Params& p, long n) {
  return box_sum_parallel(n, p.r(), [&](std::span<const long> k) { return summand(p, n, k); });
}

QRational lhs_serial(const Params& p, long n) {
  return box_sum_serial(n, p.r(), [&](std::span<const long> k) { return summand(p, n, k); });
}

QRational lemma_lhs(const Params& p) {
  const long r = p.r();
  const QRational& q = p.q;
  const QRational bcd = p.b * p.c * p.d;
  QRational base(1);
  for (long i = 0; i < r; ++i) {
    for (long j = i + 1; j < r; ++j) {
      const QRational& xi = p.x[static_cast<std::size_t>(i)];
      const QRational& xj = p.x[static_cast<std::size_t>(j)];
      base *= (xi - xj) * (kOne - p.a * xi * xj * q);
    }
  }
  return box_sum_serial(1, r, [&](std::span<const long> s) {
    QRational term = vandermonde(p.x, s, p.a, q) / base;
    for (long i = 0; i < r; ++i) {
      const QRational& xi = p.x[static_cast<std::size_t>(i)];
      const long si = s[static_cast<std::size_t>(i)];
      if (si == 0) continue;
      term *= -qpoch_multi({p.b * xi, p.c * xi, p.d * xi, p.a * p.a * xi * q.pow(3 - r) / bcd}, q, 1) /
              qpoch_multi({p.a * xi * q / p.b, p.a * xi * q / p.c, p.a * xi * q / p.d,
                           bcd * xi * q.pow(r - 2) / p.a},
                          q, 1);
    }
    return term;
  });
}

QRational lemma_rhs(const Params& p) {
  const long r = p.r();
  const QRational& q = p.q;
  const QRational bcd = p.b * p.c * p.d;
  QRational value(1);
  for (long i = 1; i <= r; ++i) {
    const QRational& xi = p.x[static_cast<std::size_t>(i - 1)];
    const QRational aqi = p.a * q.pow(2 - i);
    value *= qpoch_multi({p.a * xi * xi * q, aqi / (p.b * p.c), aqi / (p.b * p.d), aqi / (p.c * p.d)}, q, 1);
    value /= qpoch_multi({p.a * q.pow(2 - r) / (bcd * xi), p.a * xi * q / p.b, p.a * xi * q / p.c,
                          p.a * xi * q / p.d},
                         q, 1);
  }
  return value;
}

QRational cr_prop_lhs(const QRational& a, const QRational& q, std::span<const QRational> x, long n,
                      CrSign sign) {
  const QRational base = cr_base_denominator(a, q, x, n);
  return box_sum_parallel(n, static_cast<long>(x.size()),
                          [&](std::span<const long> s) { return cr_summand(a, q, x, sign, s, base); });
}

QRational cr_prop_lhs_serial(const QRational& a, const QRational& q, std::span<const QRational> x,
                             long n, CrSign sign) {
  const QRational base = cr_base_denominator(a, q, x, n);
  return box_sum_serial(n, static_cast<long>(x.size()),
                        [&](std::span<const long> s) { return cr_summand(a, q, x, sign, s, base); });
}

QRational cr_prop_1_rhs(const QRational& q, long n, long r) {
  const QRational qn1 = q.pow(n + 1);
  return QRational(n + 1) * qpoch(qn1, qn1, r - 1) / (q.pow(n * (r * (r - 1) / 2)) * qpoch(q, q, r - 1));
}

QRational cr_prop_2_rhs(const QRational& q, long n, long r) {
  if (n % 2 != 0) return QRational(0);
  const QRational qn1 = q.pow(n + 1);
  return qpoch(-qn1, qn1, r - 1) / (q.pow(n * (r * (r - 1) / 2)) * qpoch(-q, q, r - 1));
}

}  // namespace qhyper::schlosser
