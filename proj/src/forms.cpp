#include "qhyper/forms.hpp"

#include <array>

#include "qhyper/hyper.hpp"

namespace qhyper::forms {

namespace {

const QRational kOne(1);

}  // namespace

QRational jackson_8phi7_lhs(const QRational& a, const QRational& b, const QRational& c,
                            const QRational& d, const QRational& e, const QRational& q, long n) {
  const std::array others{b, c, d, e, q.pow(-n)};
  return vwp_sum(a, others, q, q, n);
}

QRational jackson_8phi7_rhs(const QRational& a, const QRational& b, const QRational& c,
                            const QRational& d, const QRational& q, long n) {
  const QRational aq = a * q;
  return qpoch_multi({aq, aq / (b * c), aq / (b * d), aq / (c * d)}, q, n) /
         qpoch_multi({aq / b, aq / c, aq / d, aq / (b * c * d)}, q, n);
}

QRational jackson_6phi5_lhs(const QRational& a, const QRational& b, const QRational& c,
                            const QRational& q, long n) {
  const std::array others{b, c, q.pow(-n)};
  return vwp_sum(a, others, q, a * q.pow(n + 1) / (b * c), n);
}

QRational jackson_6phi5_rhs(const QRational& a, const QRational& b, const QRational& c,
                            const QRational& q, long n) {
  const QRational aq = a * q;
  return qpoch_multi({aq, aq / (b * c)}, q, n) / qpoch_multi({aq / b, aq / c}, q, n);
}

QRational watson_8phi7(const QRational& a, const QRational& b, const QRational& c,
                       const QRational& d, const QRational& e, const QRational& q, long n) {
  const std::array others{b, c, d, e, q.pow(-n)};
  return vwp_sum(a, others, q, a * a * q.pow(n + 2) / (b * c * d * e), n);
}

QRational watson_4phi3_side(const QRational& a, const QRational& b, const QRational& c,
                            const QRational& d, const QRational& e, const QRational& q, long n) {
  const QRational aq = a * q;
  const QRational prefactor =
      qpoch_multi({aq, aq / (d * e)}, q, n) / qpoch_multi({aq / d, aq / e}, q, n);
  const PhiSpec spec{{aq / (b * c), d, e, q.pow(-n)}, {aq / b, aq / c, d * e * q.pow(-n) / a}, q, q, n + 1};
  return prefactor * phi_sum(spec);
}

QRational vwp_transform_rhs(const QRational& a, const QRational& b, const QRational& c,
                            const QRational& d, const QRational& e, const QRational& lambda,
                            const QRational& q, long n) {
  const QRational prefactor = qpoch_multi({a * q, lambda * q / e}, q, n) /
                              qpoch_multi({a * q / e, lambda * q}, q, n);
  const std::array others{lambda * b / a, lambda * c / a, lambda * d / a, e, q.pow(-n)};
  return prefactor * vwp_sum(lambda, others, q, a * q.pow(n + 1) / e, n);
}

QRational bailey_lhs(const QRational& a, const QRational& b, const QRational& c, const QRational& d,
                     const QRational& e, const QRational& f, const QRational& lambda,
                     const QRational& q, long n) {
  const std::array others{b, c, d, e, f, lambda * a * q.pow(n + 1) / (e * f), q.pow(-n)};
  return vwp_sum(a, others, q, q, n);
}

QRational bailey_rhs(const QRational& a, const QRational& b, const QRational& c, const QRational& d,
                     const QRational& e, const QRational& f, const QRational& lambda,
                     const QRational& q, long n) {
  const QRational aq = a * q;
  const QRational lq = lambda * q;
  const QRational prefactor = qpoch_multi({aq, aq / (e * f), lq / e, lq / f}, q, n) /
                              qpoch_multi({aq / e, aq / f, lq / (e * f), lq}, q, n);
  const std::array others{lambda * b / a, lambda * c / a, lambda * d / a, e, f,
                          lambda * a * q.pow(n + 1) / (e * f), q.pow(-n)};
  return prefactor * vwp_sum(lambda, others, q, q, n);
}

QRational singh_lhs(const QRational& A, const QRational& B, const QRational& c, const QRational& d,
                    const QRational& q, long n) {
  // (ab q^{1/2}, -ab q^{1/2};q)_k = (a^2 b^2 q;q^2)_k
  const QRational q2 = q * q;
  QRational sum(0);
  for (long k = 0; k <= n; ++k) {
    const QRational num = qpoch_multi({A, B, c, d}, q, k) * q.pow(k);
    const QRational den = qpoch(q, q, k) * qpoch(A * B * q, q2, k) * qpoch(-c * d, q, k);
    sum += num / den;
  }
  return sum;
}

QRational singh_rhs(const QRational& A, const QRational& B, const QRational& c, const QRational& d,
                    const QRational& q, long n) {
  // (-cd, -cdq;q^2)_k = (-cd;q)_{2k}
  const QRational q2 = q * q;
  QRational sum(0);
  for (long k = 0; k <= n; ++k) {
    const QRational num = qpoch_multi({A, B, c * c, d * d}, q2, k) * q2.pow(k);
    const QRational den = qpoch(q2, q2, k) * qpoch(A * B * q, q2, k) * qpoch(-c * d, q, 2 * k);
    sum += num / den;
  }
  return sum;
}

QRational lebesgue_finite_lhs(const QRational& a, const QRational& q, long n) {
  QRational sum(0);
  for (long k = 0; k <= n; ++k) {
    sum += qbinom(n, k, q) * q.pow(k * (k + 1) / 2) / qpoch(a * q.pow(k), q, n + 1);
  }
  return sum;
}

QRational lebesgue_finite_rhs(const QRational& a, const QRational& q, long n) {
  return qpoch(-q, q, n) / qpoch(a, q * q, n + 1);
}

QRational jacobi_finite_lhs(const QRational& z, const QRational& q, long m, long n) {
  const QRational q2 = q * q;
  const QRational common = qpoch(-q2 / z, q2, m) * qpoch(-z, q2, n + 1);
  QRational sum(0);
  for (long k = -m; k <= n; ++k) {
    const QRational den = qpoch(-q / z, q, m - k) * qpoch(-z, q, n + k + 1);
    sum += qbinom(m + n, m + k, q) * common * q.pow(k * k) * z.pow(k) / den;
  }
  return sum;
}

QRational jacobi_finite_rhs(const QRational& q, long m, long n) { return qpoch(-q, q, m + n); }

QRational jacobi_prefactor_lhs(const QRational& z, const QRational& q, long m, long n, long k) {
  const QRational num = qpoch(-z * q.pow(-2 * m), q * q, m + n + 1);
  const QRational den = qpoch(-z * q.pow(k - m), q, m + n + 1);
  return num / den * q.pow((m + k + 1) * (m + k) / 2);
}

QRational jacobi_prefactor_rhs(const QRational& z, const QRational& q, long m, long n, long k) {
  const QRational q2 = q * q;
  const QRational num = qpoch(-q2 / z, q2, m) * qpoch(-z, q2, n + 1);
  const QRational den = qpoch(-q / z, q, m - k) * qpoch(-z, q, n + k + 1);
  return num / den * q.pow(k * k) * z.pow(k);
}

QRational quintuple_finite_lhs(const QRational& z, const QRational& q, long n) {
  const QRational z2 = z * z;
  const QRational common = qpoch(z * q, q, n);
  QRational sum(0);
  for (long k = 0; k <= n; ++k) {
    sum += (kOne - z2 * q.pow(2 * k + 1)) * qbinom(n, k, q) * common /
           qpoch(z2 * q.pow(k + 1), q, n + 1) * z.pow(k) * q.pow(k * k);
  }
  return sum;
}

QRational quintuple_finite_mn_lhs(const QRational& z, const QRational& q, long m, long n) {
  const QRational z2 = z * z;
  const QRational common = qpoch(-q / z, q, m - 1) * qpoch(-z, q, n + 1);
  QRational sum(0);
  for (long k = -m; k <= n; ++k) {
    const QRational den = qpoch(z2.inverse(), q, m - k) * qpoch(z2 * q, q, n + k + 1);
    // k(3k+1)/2 is an integer for every k
    sum += (kOne - z2 * q.pow(2 * k + 1)) * qbinom(m + n, m + k, q) * common / den *
           z.pow(3 * k - 1) * q.pow(k * (3 * k + 1) / 2);
  }
  return sum;
}

QRational quintuple_ccg_lhs(const QRational& z, const QRational& q, long n) {
  const QRational common = qpoch(z, q, n + 1);
  QRational sum(0);
  for (long k = 0; k <= n; ++k) {
    sum += (kOne + z * q.pow(k)) * qbinom(n, k, q) * common / qpoch(z * z * q.pow(k), q, n + 1) *
           z.pow(k) * q.pow(k * k);
  }
  return sum;
}

QRational andrews_jain_lhs(const QRational& a, const QRational& b, const QRational& q, long n) {
  const QRational q2 = q * q;
  const QRational top = q.pow(-2 * n);
  QRational sum(0);
  for (long k = 0; k <= n; ++k) {
    const QRational num = qpoch_multi({a, b}, q, k) * qpoch(top, q2, k) * q.pow(k);
    const QRational den = qpoch(q, q, k) * qpoch(a * b * q, q2, k) * qpoch(top, q, k);
    sum += num / den;
  }
  return sum;
}

QRational andrews_jain_rhs(const QRational& a, const QRational& b, const QRational& q, long n) {
  const QRational q2 = q * q;
  return qpoch_multi({a * q, b * q}, q2, n) / qpoch_multi({q, a * b * q}, q2, n);
}

QRational sch_8phi7_lhs(const QRational& a, const QRational& b, const QRational& c,
                        const QRational& d, const QRational& q, long r) {
  const QRational aq = a * q;
  const QRational bcd = b * c * d;
  QRational sum(0);
  for (long k = 0; k <= r; ++k) {
    // q^{k(k+1-2r)/2}: k(k+1) is even, so the exponent is an integer
    const QRational sign = (k % 2 == 0) ? QRational(1) : QRational(-1);
    const QRational num = qpoch_multi({aq / b, aq / c, aq / d, bcd * q.pow(r - 2) / a}, q, k);
    const QRational den = qpoch_multi({b, c, d, a * a * q.pow(3 - r) / bcd}, q, k);
    sum += sign * q.pow(k * (k + 1 - 2 * r) / 2) * qbinom(r, k, q) * (kOne - a * q.pow(2 * k)) /
           qpoch(a * q.pow(k), q, r + 1) * num / den;
  }
  return sum;
}

QRational sch_8phi7_rhs(const QRational& a, const QRational& b, const QRational& c,
                        const QRational& d, const QRational& q, long r) {
  const QRational bcd = b * c * d;
  const QRational head = (bcd * q.pow(r - 2) / a).pow(r);
  const QRational aq = a * q.pow(2 - r);
  return head * qpoch_multi({aq / (b * c), aq / (b * d), aq / (c * d)}, q, r) /
         qpoch_multi({b, c, d, a * a * q.pow(3 - r) / bcd}, q, r);
}

}  // namespace qhyper::forms
