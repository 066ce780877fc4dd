#include "qhyper/hyper.hpp"

namespace qhyper {

namespace {

const QRational kOne(1);

void require_nonzero(const QRational& factor, const char* what, long k) {
  if (factor.is_zero()) throw PoleError(std::string(what) + " vanishes at k = " + std::to_string(k));
}

}  // namespace

QRational phi_sum(const PhiSpec& spec) {
  if (spec.term_count <= 0) return QRational(0);
  QRational term(1);
  QRational sum(1);
  QRational qk(1);  // q^k
  for (long k = 0; k + 1 < spec.term_count; ++k) {
    QRational num = spec.z;
    for (const auto& a : spec.numerator_params) num *= kOne - a * qk;
    QRational den = kOne - qk * spec.q;
    for (const auto& b : spec.denominator_params) den *= kOne - b * qk;
    require_nonzero(den, "phi denominator", k + 1);
    term *= num / den;
    sum += term;
    qk *= spec.q;
  }
  return sum;
}

QRational wp_term(const WellPoisedTerm& t, long k) {
  if (k < 0) return QRational(0);
  const QRational& a1 = t.a_list.front();
  QRational num = qpoch_multi(t.a_list, t.q, k) * t.z.pow(k);
  QRational den = qpoch(t.q, t.q, k);
  for (std::size_t i = 1; i < t.a_list.size(); ++i) den *= qpoch(a1 * t.q / t.a_list[i], t.q, k);
  require_nonzero(den, "well-poised denominator", k);
  return num / den;
}

QRational vwp_term(const QRational& a, std::span<const QRational> others, const QRational& q,
                   const QRational& z, long k) {
  if (k < 0) return QRational(0);
  QRational num = (kOne - a * q.pow(2 * k)) * qpoch(a, q, k) * z.pow(k);
  QRational den = (kOne - a) * qpoch(q, q, k);
  for (const auto& b : others) {
    num *= qpoch(b, q, k);
    den *= qpoch(a * q / b, q, k);
  }
  require_nonzero(den, "very-well-poised denominator", k);
  return num / den;
}

QRational vwp_sum(const QRational& a, std::span<const QRational> others, const QRational& q,
                  const QRational& z, long n) {
  QRational sum(0);
  for (long k = 0; k <= n; ++k) sum += vwp_term(a, others, q, z, k);
  return sum;
}

QRational contiguous_alpha(const WellPoisedTerm& t) {
  const std::size_t r = t.r();
  if (r < 2) throw DomainError("first contiguous relation needs r >= 2 (a_r must differ from a_1)");
  const auto& a = t.a_list;
  const QRational& a1 = a[0];
  const QRational& ar = a[r - 1];
  const QRational& ar1 = a[r];
  QRational num = (ar - ar1) * (kOne - a1 / (ar * ar1)) * (kOne - a1) * (kOne - a1 * t.q) * t.z;
  for (std::size_t i = 1; i + 1 < r; ++i) num *= kOne - a[i];
  QRational den = (kOne - a1 / ar) * (kOne - a1 / ar1);
  for (std::size_t i = 1; i <= r; ++i) den *= kOne - a1 * t.q / a[i];
  return num / den;
}

QRational contiguous_beta(const WellPoisedTerm& t) {
  const std::size_t r = t.r();
  if (r < 1) throw DomainError("second contiguous relation needs r >= 1");
  const auto& a = t.a_list;
  const QRational& a1 = a[0];
  QRational num = (kOne - a1) * (kOne - a1 * t.q) * t.z;
  for (std::size_t i = 1; i < r; ++i) num *= kOne - a[i];
  QRational den = kOne - a1 / a[r];
  for (std::size_t i = 1; i <= r; ++i) den *= kOne - a1 * t.q / a[i];
  return -(num / den);
}

WellPoisedTerm contiguous_shift(const WellPoisedTerm& t) {
  WellPoisedTerm shifted = t;
  shifted.a_list[0] *= t.q * t.q;
  for (std::size_t i = 1; i < shifted.a_list.size(); ++i) shifted.a_list[i] *= t.q;
  return shifted;
}

QRational contiguous_residual_1(const WellPoisedTerm& t, long k) {
  const QRational alpha = contiguous_alpha(t);
  const std::size_t r = t.r();
  WellPoisedTerm left = t;
  left.a_list[r - 1] *= t.q;
  WellPoisedTerm right = t;
  right.a_list[r] *= t.q;
  return wp_term(left, k) - wp_term(right, k) - alpha * wp_term(contiguous_shift(t), k - 1);
}

QRational contiguous_residual_2(const WellPoisedTerm& t, long k) {
  const QRational beta = contiguous_beta(t);
  WellPoisedTerm left = t;
  left.z *= t.q;
  WellPoisedTerm right = t;
  right.a_list[t.r()] *= t.q;
  return wp_term(left, k) - wp_term(right, k) - beta * wp_term(contiguous_shift(t), k - 1);
}

std::pair<QRational, QRational> trivial_identity_residuals(const QRational& a, const QRational& b,
                                                           const QRational& c, const QRational& x) {
  const QRational denom_b = (kOne - b) * (kOne - a / b);
  const QRational denom_c = (kOne - c) * (kOne - a / c);
  const QRational first = (kOne - b * x) * (kOne - a * x / b) / denom_b -
                          (kOne - c * x) * (kOne - a * x / c) / denom_c -
                          (b - c) * (kOne - a / (b * c)) * (kOne - x) * (kOne - a * x) / (denom_b * denom_c);
  const QRational second =
      x - (kOne - c * x) * (kOne - a * x / c) / denom_c + (kOne - x) * (kOne - a * x) / denom_c;
  return {first, second};
}

}  // namespace qhyper
