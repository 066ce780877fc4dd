#include "qhyper/certs.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <exception>
#include <mutex>
#include <initializer_list>
#include <utility>

#include "qhyper/forms.hpp"
#include "qhyper/hyper.hpp"
#include "qhyper/schlosser.hpp"

namespace qhyper {

namespace {

const QRational kOne(1);

const QRational& S(const ParamPoint& p, std::string_view name) { return p.sym(name); }

// Multiplies each named symbol by q^e.
ParamMap scaled(std::initializer_list<std::pair<const char*, long>> moves) {
  std::vector<std::pair<std::string, long>> list(moves.begin(), moves.end());
  return [list](const ParamPoint& p) {
    ParamPoint out = p;
    const QRational& q = p.q();
    for (const auto& [name, e] : list) out.set(name, p.sym(name) * q.pow(e));
    return out;
  };
}

TermFn zero_outside(TermFn f) {
  return [f = std::move(f)](const ParamPoint& p, long n, long k) {
    if (n < 0 || k < 0 || k > n) return QRational(0);
    return f(p, n, k);
  };
}

// ---- Jackson -------------------------------------------------------------

QRational jackson_e(const ParamPoint& p, long n) {
  return S(p, "a") * S(p, "a") * p.q().pow(n + 1) / (S(p, "b") * S(p, "c") * S(p, "d"));
}

QRational jackson_alpha(const ParamPoint& p, long n) {
  const QRational &a = S(p, "a"), &b = S(p, "b"), &c = S(p, "c"), &d = S(p, "d"), &q = p.q();
  const QRational bcd = b * c * d;
  const QRational num = (a * a * q.pow(n) / bcd - q.pow(-n)) * (kOne - bcd / a) * (kOne - a * q) *
                        (kOne - a * q * q) * (kOne - b) * (kOne - c) * (kOne - d) * q;
  const QRational den = (kOne - bcd * q.pow(-n) / a) * (kOne - a * q.pow(n)) * (kOne - a * q / b) *
                        (kOne - a * q / c) * (kOne - a * q / d) * (kOne - bcd * q.pow(1 - n) / a) *
                        (kOne - a * q.pow(n + 1));
  return num / den;
}

ProofCertificate jackson_cert() {
  ProofCertificate cert;
  cert.id = "jackson";
  cert.symbols = {"a", "b", "c", "d", "q"};
  cert.term = zero_outside([](const ParamPoint& p, long n, long k) {
    const QRational& q = p.q();
    const std::array others{S(p, "b"), S(p, "c"), S(p, "d"), jackson_e(p, n), q.pow(-n)};
    return vwp_term(S(p, "a"), others, q, q, k);
  });
  cert.recurrences = {{"main",
                       {{[](const ParamPoint&, long) { return QRational(1); }, 1, 0, {}},
                        {jackson_alpha, 1, 1, scaled({{"a", 2}, {"b", 1}, {"c", 1}, {"d", 1}})}},
                       1}};
  cert.closed_form = [](const ParamPoint& p, long n) {
    return forms::jackson_8phi7_rhs(S(p, "a"), S(p, "b"), S(p, "c"), S(p, "d"), p.q(), n);
  };
  return cert;
}

// ---- Watson --------------------------------------------------------------

QRational watson_beta(const ParamPoint& p, long n) {
  const QRational &a = S(p, "a"), &b = S(p, "b"), &c = S(p, "c"), &d = S(p, "d"), &e = S(p, "e"), &q = p.q();
  const QRational num = (kOne - a * q) * (kOne - a * q * q) * (kOne - b) * (kOne - c) * (kOne - d) * (kOne - e) *
                        a * a * q.pow(n + 1);
  const QRational den = (kOne - a * q / b) * (kOne - a * q / c) * (kOne - a * q / d) * (kOne - a * q / e) *
                        (kOne - a * q.pow(n)) * (kOne - a * q.pow(n + 1)) * b * c * d * e;
  return -(num / den);
}

ProofCertificate watson_cert() {
  ProofCertificate cert;
  cert.id = "watson";
  cert.symbols = {"a", "b", "c", "d", "e", "q"};
  cert.term = zero_outside([](const ParamPoint& p, long n, long k) {
    const QRational &a = S(p, "a"), &b = S(p, "b"), &c = S(p, "c"), &d = S(p, "d"), &e = S(p, "e"), &q = p.q();
    const std::array others{b, c, d, e, q.pow(-n)};
    return vwp_term(a, others, q, a * a * q.pow(n + 2) / (b * c * d * e), k);
  });
  cert.recurrences = {{"main",
                       {{[](const ParamPoint&, long) { return QRational(1); }, 1, 0, {}},
                        {watson_beta, 1, 1, scaled({{"a", 2}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", 1}})}},
                       1}};
  cert.rhs_term = zero_outside([](const ParamPoint& p, long n, long k) {
    const QRational &a = S(p, "a"), &b = S(p, "b"), &c = S(p, "c"), &d = S(p, "d"), &e = S(p, "e"), &q = p.q();
    const QRational aq = a * q;
    return qpoch_multi({aq, aq / (d * e)}, q, n) / qpoch_multi({aq / d, aq / e}, q, n) *
           qpoch_multi({aq / (b * c), d, e, q.pow(-n)}, q, k) /
           qpoch_multi({q, aq / b, aq / c, d * e * q.pow(-n) / a}, q, k) * q.pow(k);
  });
  cert.anti_diff = [](const ParamPoint& p, long n, long k) {
    if (k < 0) return QRational(0);
    const QRational &a = S(p, "a"), &b = S(p, "b"), &c = S(p, "c"), &d = S(p, "d"), &e = S(p, "e"), &q = p.q();
    const QRational aq = a * q;
    return qpoch(aq, q, n - 1) * qpoch(aq / (d * e), q, n) / qpoch_multi({aq / d, aq / e}, q, n) *
           qpoch_multi({aq / (b * c), q.pow(1 - n)}, q, k) * qpoch_multi({d, e}, q, k + 1) /
           (qpoch_multi({q, aq / b, aq / c}, q, k) * qpoch(d * e * q.pow(-n) / a, q, k + 1));
  };
  return cert;
}

// ---- Bailey --------------------------------------------------------------

QRational bailey_lambda(const ParamPoint& p) {
  return S(p, "a") * S(p, "a") * p.q() / (S(p, "b") * S(p, "c") * S(p, "d"));
}

QRational bailey_alpha(const ParamPoint& p, long n) {
  const QRational &a = S(p, "a"), &b = S(p, "b"), &c = S(p, "c"), &d = S(p, "d"), &e = S(p, "e"),
                  &f = S(p, "f"), &q = p.q();
  const QRational lam = bailey_lambda(p);
  const QRational head = (kOne - b) * (kOne - c) * (kOne - d) * (kOne - e) * (kOne - f) /
                         ((kOne - a * q / b) * (kOne - a * q / c) * (kOne - a * q / d) * (kOne - a * q / e) *
                          (kOne - a * q / f));
  const QRational tail = (kOne - a * q) * (kOne - a * q * q) * (kOne - e * f / lam) *
                         (kOne - lam * a * q.pow(2 * n) / (e * f)) /
                         ((kOne - a * q.pow(n)) * (kOne - a * q.pow(n + 1)) * (kOne - e * f * q.pow(1 - n) / lam) *
                          (kOne - e * f * q.pow(-n) / lam) * q.pow(n - 1));
  return -(head * tail);
}

ProofCertificate bailey_cert() {
  ProofCertificate cert;
  cert.id = "bailey";
  cert.symbols = {"a", "b", "c", "d", "e", "f", "q"};
  cert.term = zero_outside([](const ParamPoint& p, long n, long k) {
    const QRational &a = S(p, "a"), &e = S(p, "e"), &f = S(p, "f"), &q = p.q();
    const QRational lam = bailey_lambda(p);
    const std::array others{S(p, "b"), S(p, "c"), S(p, "d"), e, f, lam * a * q.pow(n + 1) / (e * f), q.pow(-n)};
    return vwp_term(a, others, q, q, k);
  });
  cert.recurrences = {
      {"main",
       {{[](const ParamPoint&, long) { return QRational(1); }, 1, 0, {}},
        {bailey_alpha, 1, 1, scaled({{"a", 2}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", 1}, {"f", 1}})}},
       1}};
  cert.rhs_term = zero_outside([](const ParamPoint& p, long n, long k) {
    const QRational &a = S(p, "a"), &b = S(p, "b"), &c = S(p, "c"), &d = S(p, "d"), &e = S(p, "e"),
                    &f = S(p, "f"), &q = p.q();
    const QRational lam = bailey_lambda(p);
    const QRational aq = a * q;
    const QRational lq = lam * q;
    const QRational pre = qpoch_multi({aq, aq / (e * f), lq / e, lq / f}, q, n) /
                          qpoch_multi({aq / e, aq / f, lq / (e * f), lq}, q, n);
    const std::array others{lam * b / a, lam * c / a, lam * d / a, e, f, lam * a * q.pow(n + 1) / (e * f), q.pow(-n)};
    return pre * vwp_term(lam, others, q, q, k);
  });
  // The prefactor denominator carries (lambda;q)_n as printed.
  cert.anti_diff = [](const ParamPoint& p, long n, long k) {
    if (k < 0) return QRational(0);
    const QRational &a = S(p, "a"), &b = S(p, "b"), &c = S(p, "c"), &d = S(p, "d"), &e = S(p, "e"),
                    &f = S(p, "f"), &q = p.q();
    const QRational lam = bailey_lambda(p);
    const QRational aq = a * q;
    const QRational pre = (kOne - a * lam * q.pow(2 * n) / (e * f)) *
                          qpoch_multi({aq, lam * q / e, lam * q / f}, q, n - 1) * qpoch(aq / (e * f), q, n) /
                          qpoch_multi({aq / e, aq / f, lam * q / (e * f), lam}, q, n);
    const QRational num = (kOne - lam * q.pow(k) / a) *
                          qpoch_multi({lam * b / a, lam * c / a, lam * d / a, lam * a * q.pow(n + 1) / (e * f),
                                       q.pow(1 - n)},
                                      q, k) *
                          qpoch_multi({lam, e, f}, q, k + 1);
    const QRational den = qpoch_multi({q, aq / b, aq / c, aq / d, lam * q / e, lam * q / f}, q, k) *
                          qpoch_multi({e * f * q.pow(-n) / a, lam * q.pow(n)}, q, k + 1);
    return pre * num / den;
  };
  return cert;
}

// ---- Singh (A = a^2, B = b^2; d = q^{-n}) -------------------------------

QRational singh_first_coeff(const ParamPoint& p, long n) {
  const QRational &A = S(p, "A"), &B = S(p, "B"), &c = S(p, "c"), &q = p.q();
  return -(kOne - A) * (kOne - B) * (kOne - c * c) * q.pow(1 - n) /
         ((kOne - A * B * q) * (kOne + c * q.pow(-n)) * (kOne + c * q.pow(1 - n)));
}

QRational singh_alpha(const ParamPoint& p, long n) {
  const QRational &c = S(p, "c"), &q = p.q();
  return (kOne + q) * (kOne + c * q.pow(1 - n)) / (q * (kOne + c * q.pow(-n)));
}

QRational singh_minus_beta(const ParamPoint& p, long n) {
  const QRational &c = S(p, "c"), &q = p.q();
  return -((kOne + c * q.pow(2 - n)) / (q * (kOne + c * q.pow(-n))));
}

QRational singh_gamma(const ParamPoint& p, long n) {
  const QRational &A = S(p, "A"), &B = S(p, "B"), &c = S(p, "c"), &q = p.q();
  const QRational num = (kOne - A) * (kOne - B) * (kOne - c * c) * (kOne - A * q) * (kOne - B * q) *
                        (kOne - c * c * q * q) * q.pow(3 - 2 * n);
  const QRational den = (kOne - A * B * q) * (kOne - A * B * q.pow(3)) * (kOne + c * q.pow(-n)) *
                        (kOne + c * q.pow(1 - n)) * (kOne + c * q.pow(2 - n)) * (kOne + c * q.pow(3 - n));
  return num / den;
}

ProofCertificate singh_cert() {
  ProofCertificate cert;
  cert.id = "singh";
  cert.symbols = {"A", "B", "c", "q"};
  cert.term = zero_outside([](const ParamPoint& p, long n, long k) {
    const QRational &A = S(p, "A"), &B = S(p, "B"), &c = S(p, "c"), &q = p.q();
    return qpoch_multi({A, B, c, q.pow(-n)}, q, k) /
           (qpoch(q, q, k) * qpoch(A * B * q, q * q, k) * qpoch(-c * q.pow(-n), q, k)) * q.pow(k);
  });
  cert.recurrences = {
      {"three-term",
       {{singh_alpha, 1, 0, {}},
        {singh_minus_beta, 2, 0, {}},
        {singh_gamma, 2, 2, scaled({{"A", 2}, {"B", 2}, {"c", 2}})}},
       2},
      {"first-order",
       {{[](const ParamPoint&, long) { return QRational(1); }, 1, 0, {}},
        {singh_first_coeff, 1, 1, scaled({{"A", 1}, {"B", 1}, {"c", 1}})}},
       1}};
  cert.rhs_term = zero_outside([](const ParamPoint& p, long n, long k) {
    const QRational &A = S(p, "A"), &B = S(p, "B"), &c = S(p, "c"), &q = p.q();
    const QRational q2 = q * q;
    return qpoch_multi({A, B, c * c, q.pow(-2 * n)}, q2, k) /
           (qpoch(q2, q2, k) * qpoch(A * B * q, q2, k) * qpoch(-c * q.pow(-n), q, 2 * k)) * q2.pow(k);
  });
  // 1/(q^2;q^2)_{k-1} vanishes at k = 0 through the negative-index convention.
  cert.anti_diff = [](const ParamPoint& p, long n, long k) {
    if (k < 0) return QRational(0);
    const QRational &A = S(p, "A"), &B = S(p, "B"), &c = S(p, "c"), &q = p.q();
    const QRational q2 = q * q;
    return -(kOne - q.pow(2 * k - 1)) * qpoch_multi({A, B}, q2, k) * qpoch(q.pow(4 - 2 * n), q2, k - 1) *
           qpoch(c * c, q2, k + 1) * q.pow(2 - 2 * n) * qpoch_inv(q2, q2, k - 1) /
           (qpoch(A * B * q, q2, k) * qpoch(-c * q.pow(-n), q, 2 * k + 2));
  };
  return cert;
}

// ---- Lebesgue ------------------------------------------------------------

ProofCertificate lebesgue_cert() {
  ProofCertificate cert;
  cert.id = "lebesgue";
  cert.symbols = {"a", "q"};
  cert.term = zero_outside([](const ParamPoint& p, long n, long k) {
    const QRational& q = p.q();
    return qbinom(n, k, q) * q.pow(k * (k + 1) / 2) / qpoch(S(p, "a") * q.pow(k), q, n + 1);
  });
  cert.recurrences = {{"main",
                       {{[](const ParamPoint& p, long n) { return (kOne - S(p, "a") * p.q().pow(n)).inverse(); },
                         1, 0, {}},
                        {[](const ParamPoint& p, long n) {
                           return p.q().pow(n) / (kOne - S(p, "a") * p.q().pow(n));
                         },
                         1, 1, scaled({{"a", 2}})}},
                       1}};
  cert.closed_form = [](const ParamPoint& p, long n) { return forms::lebesgue_finite_rhs(S(p, "a"), p.q(), n); };
  return cert;
}

// ---- quintuple -----------------------------------------------------------

ProofCertificate quintuple_cert() {
  ProofCertificate cert;
  cert.id = "quintuple";
  cert.symbols = {"z", "q"};
  cert.term = zero_outside([](const ParamPoint& p, long n, long k) {
    const QRational &z = S(p, "z"), &q = p.q();
    const QRational z2 = z * z;
    return (kOne - z2 * q.pow(2 * k + 1)) * qbinom(n, k, q) * qpoch(z * q, q, n) /
           qpoch(z2 * q.pow(k + 1), q, n + 1) * z.pow(k) * q.pow(k * k);
  });
  cert.recurrences = {{"main",
                       {{[](const ParamPoint& p, long n) {
                           const QRational &z = S(p, "z"), &q = p.q();
                           return (kOne - z * q.pow(n)) / (kOne - z * z * q.pow(n + 1));
                         },
                         1, 0, {}},
                        {[](const ParamPoint& p, long n) {
                           const QRational &z = S(p, "z"), &q = p.q();
                           return (kOne - z * q) * z * q.pow(n) / (kOne - z * z * q.pow(n + 1));
                         },
                         1, 1, scaled({{"z", 1}})}},
                       1}};
  cert.closed_form = [](const ParamPoint&, long) { return QRational(1); };
  return cert;
}

QRational apply_recurrence(const Recurrence& rec, const ParamPoint& point, long n, long k, const TermFn& f) {
  QRational value(0);
  for (const auto& t : rec.terms) {
    const QRational coeff = t.coeff(point, n);
    if (coeff.is_zero()) continue;
    const ParamPoint target = t.shift ? t.shift(point) : point;
    value += coeff * f(target, n - t.level_drop, k - t.k_drop);
  }
  return value;
}

QRational propagated(const ProofCertificate& cert, const ParamPoint& point, long n) {
  if (n < cert.order()) return sum_side(cert, point, n);
  const Recurrence& rec = cert.recurrences.front();
  QRational value(0);
  for (const auto& t : rec.terms) {
    const ParamPoint target = t.shift ? t.shift(point) : point;
    value += t.coeff(point, n) * propagated(cert, target, n - t.level_drop);
  }
  return value;
}

}  // namespace

int ProofCertificate::order() const {
  long order = 0;
  for (const auto& t : recurrences.front().terms) order = std::max(order, t.level_drop);
  return static_cast<int>(order);
}

const std::vector<ProofCertificate>& single_sum_certificates() {
  static const std::vector<ProofCertificate> certs = {jackson_cert(), watson_cert(),   bailey_cert(),
                                                      singh_cert(),   lebesgue_cert(), quintuple_cert()};
  return certs;
}

const std::vector<std::string>& proof_ids() {
  static const std::vector<std::string> ids = {"jackson",  "watson",    "bailey",   "singh",
                                               "lebesgue", "quintuple", "schlosser"};
  return ids;
}

const ProofCertificate& find_certificate(std::string_view id) {
  for (const auto& cert : single_sum_certificates()) {
    if (cert.id == id) return cert;
  }
  throw ConfigError("no single-sum certificate named " + std::string(id));
}

QRational term_recurrence_residual(const ProofCertificate& cert, const ParamPoint& point, long n, long k,
                                   std::size_t which) {
  const Recurrence& rec = cert.recurrences.at(which);
  if (n < rec.min_n) throw DomainError(cert.id + ": recurrence " + rec.name + " needs n >= " + std::to_string(rec.min_n));
  return cert.term(point, n, k) - apply_recurrence(rec, point, n, k, cert.term);
}

QRational telescoping_residual(const ProofCertificate& cert, const ParamPoint& point, long n, long k) {
  if (!cert.rhs_term || !cert.anti_diff) throw DomainError(cert.id + ": no telescoping certificate");
  const Recurrence& rec = cert.recurrences.front();
  if (n < rec.min_n) throw DomainError(cert.id + ": telescoping needs n >= " + std::to_string(rec.min_n));
  return cert.rhs_term(point, n, k) - apply_recurrence(rec, point, n, k, cert.rhs_term) -
         (cert.anti_diff(point, n, k) - cert.anti_diff(point, n, k - 1));
}

bool boundary_check(const ProofCertificate& cert, const ParamPoint& point, long n) {
  if (!cert.rhs_term) throw DomainError(cert.id + ": no transformed side to telescope");
  const Recurrence& rec = cert.recurrences.front();
  QRational total(0);
  for (long k = 0; k <= n; ++k) total += cert.rhs_term(point, n, k) - apply_recurrence(rec, point, n, k, cert.rhs_term);
  return total.is_zero();
}

QRational sum_side(const ProofCertificate& cert, const ParamPoint& point, long n) {
  QRational total(0);
  for (long k = 0; k <= n; ++k) total += cert.term(point, n, k);
  return total;
}

QRational closed_form_value(const ProofCertificate& cert, const ParamPoint& point, long n) {
  if (cert.closed_form) return cert.closed_form(point, n);
  QRational total(0);
  for (long k = 0; k <= n; ++k) total += cert.rhs_term(point, n, k);
  return total;
}

QRational closed_form_recurrence_residual(const ProofCertificate& cert, const ParamPoint& point, long n) {
  const Recurrence& rec = cert.recurrences.front();
  QRational value = closed_form_value(cert, point, n);
  for (const auto& t : rec.terms) {
    const ParamPoint target = t.shift ? t.shift(point) : point;
    value -= t.coeff(point, n) * closed_form_value(cert, target, n - t.level_drop);
  }
  return value;
}

bool inductive_replay(const ProofCertificate& cert, const ParamPoint& point, long n_max) {
  if (n_max < 0 || n_max > 8) throw DomainError("inductive replay is limited to 0 <= n_max <= 8");
  if (!(sum_side(cert, point, 0) == closed_form_value(cert, point, 0))) return false;
  for (long n = 1; n <= n_max; ++n) {
    const QRational direct = closed_form_value(cert, point, n);
    if (n >= cert.order() && !closed_form_recurrence_residual(cert, point, n).is_zero()) return false;
    if (!(propagated(cert, point, n) == direct)) return false;
    if (!(sum_side(cert, point, n) == direct)) return false;
  }
  return true;
}

QRational generic_alpha_jackson(const ParamPoint& point, long n) {
  const QRational &s = S(point, "sqrt_a"), &q = point.q();
  const QRational a = s * s;
  ParamPoint p = point;
  p.set("a", a);
  const QRational e = jackson_e(p, n);
  const WellPoisedTerm t{{a, q * s, -q * s, S(p, "b"), S(p, "c"), S(p, "d"), e / q, q.pow(-n)}, q, q};
  return contiguous_alpha(t);
}

QRational generic_alpha_bailey(const ParamPoint& point, long n) {
  const QRational &s = S(point, "sqrt_a"), &q = point.q();
  const QRational a = s * s;
  ParamPoint p = point;
  p.set("a", a);
  const QRational &e = S(p, "e"), &f = S(p, "f");
  const QRational lam = bailey_lambda(p);
  const WellPoisedTerm t{
      {a, q * s, -q * s, S(p, "b"), S(p, "c"), S(p, "d"), e, f, lam * a * q.pow(n) / (e * f), q.pow(-n)}, q, q};
  return contiguous_alpha(t);
}

QRational generic_beta_watson(const ParamPoint& point, long n) {
  const QRational &s = S(point, "sqrt_a"), &q = point.q();
  const QRational a = s * s;
  const QRational &b = S(point, "b"), &c = S(point, "c"), &d = S(point, "d"), &e = S(point, "e");
  const WellPoisedTerm t{{a, q * s, -q * s, b, c, d, e, q.pow(-n)}, q, a * a * q.pow(n + 1) / (b * c * d * e)};
  return contiguous_beta(t);
}

namespace schlosser_proof {

namespace {

std::vector<QRational> xs(const ParamPoint& p) {
  std::vector<QRational> x;
  for (long i = 1; i <= p.index("r"); ++i) x.push_back(p.sym(x_name(i)));
  return x;
}

QRational pow01(const QRational& base, long e) { return e == 0 ? QRational(1) : base; }

QRational alpha_s(const ParamPoint& p, long n, const std::vector<long>& s) {
  const auto x = xs(p);
  const long r = static_cast<long>(x.size());
  const QRational &a = S(p, "a"), &q = p.q();
  const QRational bcd = S(p, "b") * S(p, "c") * S(p, "d");
  QRational t = (kOne - q.pow(n + 1)).pow(-r);
  for (long i = 0; i < r; ++i) {
    const QRational& xi = x[static_cast<std::size_t>(i)];
    const long si = s[static_cast<std::size_t>(i)];
    t *= pow01(-q.pow(n + 1), 1 - si) / (kOne - a * xi * xi * q.pow(n + 1));
    t *= pow01((kOne - a * a * xi * q.pow(n - r + 2) / bcd) * (kOne - bcd * xi * q.pow(r - n - 2) / a), 1 - si);
    t *= pow01((kOne - a * a * xi * q.pow(2 * n - r + 3) / bcd) * (kOne - bcd * xi * q.pow(r - 1) / a), si);
  }
  return t;
}

}  // namespace

QRational split_residual(const ParamPoint& point, long n, long r, long i, long k_i) {
  const QRational &a = S(point, "a"), &q = point.q();
  const QRational& xi = point.sym(x_name(i));
  const QRational bcd = S(point, "b") * S(point, "c") * S(point, "d");
  const QRational axx = a * xi * xi;
  const QRational cleared = (kOne - q.pow(k_i - n - 1)) * (kOne - axx * q.pow(n + k_i + 1));
  const QRational common = (kOne - q.pow(n + 1)) * (kOne - axx * q.pow(n + 1));
  const QRational left =
      (kOne - a * a * xi * q.pow(n + k_i - r + 2) / bcd) * (kOne - bcd * xi * q.pow(k_i + r - n - 2) / a);
  const QRational first = -q.pow(n + 1) * (kOne - a * a * xi * q.pow(n - r + 2) / bcd) *
                          (kOne - bcd * xi * q.pow(r - n - 2) / a) * cleared / common;
  const QRational second = (kOne - a * a * xi * q.pow(2 * n - r + 3) / bcd) * (kOne - bcd * xi * q.pow(r - 1) / a) *
                           (kOne - axx * q.pow(k_i)) * (kOne - q.pow(k_i)) / common;
  return left - first - second;
}

QRational coeff_beta_defining(const ParamPoint& point, long n, const std::vector<long>& s) {
  const auto x = xs(point);
  const long r = static_cast<long>(x.size());
  const QRational &a = S(point, "a"), &b = S(point, "b"), &c = S(point, "c"), &d = S(point, "d"), &q = point.q();
  const QRational bcd = b * c * d;
  const std::vector<long> zeros(x.size(), 0);
  QRational t = alpha_s(point, n, s) * schlosser::vandermonde(x, s, a, q) / schlosser::vandermonde(x, zeros, a, q);
  for (long i = 0; i < r; ++i) {
    const QRational& xi = x[static_cast<std::size_t>(i)];
    const long si = s[static_cast<std::size_t>(i)];
    const QRational axx = a * xi * xi;
    t *= (kOne - axx * q.pow(2 * si)) / (kOne - axx);
    t *= qpoch(axx, q, 2 * si) * qpoch_multi({b * xi, c * xi, d * xi}, q, si) * q.pow(si) *
         (kOne - axx * q.pow(n + si + 1)).pow(1 - 2 * si) * (kOne - q.pow(-n - 1));
    t /= qpoch_multi({a * xi * q / b, a * xi * q / c, a * xi * q / d}, q, si) *
         qpoch(bcd * xi * q.pow(r - n - 2) / a, q, si + 1) * qpoch(a * a * xi * q.pow(n - r + 2) / bcd, q, 1 - si);
  }
  return t;
}

QRational coeff_beta(const ParamPoint& point, long n, const std::vector<long>& s) {
  const auto x = xs(point);
  const long r = static_cast<long>(x.size());
  const QRational &a = S(point, "a"), &b = S(point, "b"), &c = S(point, "c"), &d = S(point, "d"), &q = point.q();
  const QRational bcd = b * c * d;
  const std::vector<long> zeros(x.size(), 0);
  QRational t = schlosser::vandermonde(x, s, a, q) / schlosser::vandermonde(x, zeros, a, q);
  for (long i = 0; i < r; ++i) {
    const QRational& xi = x[static_cast<std::size_t>(i)];
    const long si = s[static_cast<std::size_t>(i)];
    if (si % 2 != 0) t = -t;
    t *= qpoch(a * xi * xi * q, q, 2 * si) *
         qpoch_multi({b * xi, c * xi, d * xi, bcd * xi * q.pow(r - 1) / a, a * a * xi * q.pow(2 * n - r + 3) / bcd},
                     q, si);
    t /= q.pow(n * si) *
         qpoch_multi({a * xi * xi * q.pow(n + 1), bcd * xi * q.pow(r - n - 2) / a}, q, 2 * si) *
         qpoch_multi({a * xi * q / b, a * xi * q / c, a * xi * q / d}, q, si);
  }
  return t;
}

QRational coeff_residual(const ParamPoint& point, long n, long r, const std::vector<long>& s) {
  if (static_cast<long>(s.size()) != r || point.index("r") != r) throw DomainError("s-vector length must equal r");
  return coeff_beta_defining(point, n, s) - coeff_beta(point, n, s);
}

namespace {

template <typename Visit>
void for_each_s(long r, Visit visit) {
  std::vector<long> s(static_cast<std::size_t>(r), 0);
  for (long mask = 0; mask < (1L << r); ++mask) {
    for (long i = 0; i < r; ++i) s[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    visit(s);
  }
}

std::vector<QRational> shifted_x(const std::vector<QRational>& x, const std::vector<long>& s, const QRational& q) {
  std::vector<QRational> out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= q.pow(s[i]);
  return out;
}

}  // namespace

QRational induction_residual(const ParamPoint& point, long n, const std::vector<long>& k) {
  const auto params = schlosser::Params::from_point(point);
  const long r = params.r();
  QRational value = schlosser::summand(params, n + 1, k);
  for_each_s(r, [&](const std::vector<long>& s) {
    schlosser::Params moved = params;
    moved.x = shifted_x(params.x, s, params.q);
    std::vector<long> lowered = k;
    for (std::size_t i = 0; i < lowered.size(); ++i) lowered[i] -= s[i];
    value -= coeff_beta(point, n, s) * schlosser::summand(moved, n, lowered);
  });
  return value;
}

QRational end_form(const ParamPoint& point, long n) {
  const auto x = xs(point);
  const long r = static_cast<long>(x.size());
  const QRational &a = S(point, "a"), &b = S(point, "b"), &c = S(point, "c"), &d = S(point, "d"), &q = point.q();
  const QRational bcd = b * c * d;
  QRational total(0);
  for_each_s(r, [&](const std::vector<long>& s) {
    QRational t(1);
    for (long i = 0; i < r; ++i) {
      for (long j = i + 1; j < r; ++j) {
        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        t *= (x[ui] * q.pow(s[ui]) - x[uj] * q.pow(s[uj])) * (kOne - a * x[ui] * x[uj] * q.pow(n + s[ui] + s[uj])) /
             ((x[ui] - x[uj]) * (kOne - a * x[ui] * x[uj]));
      }
    }
    for (long i = 1; i <= r; ++i) {
      const QRational& xi = x[static_cast<std::size_t>(i - 1)];
      const long si = s[static_cast<std::size_t>(i - 1)];
      const QRational aqi = a * q.pow(2 - i);
      t *= qpoch_multi({b * xi, c * xi, d * xi, a * a * xi * q.pow(2 * n - r + 3) / bcd}, q, si) *
           qpoch_multi({a * xi * xi * q, aqi / (b * c), aqi / (b * d), aqi / (c * d)}, q, n);
      t /= (bcd * xi * q.pow(r - n - 2) / a).pow(si) *
           qpoch_multi({a * q.pow(2 - r) / (bcd * xi), a * xi * q / b, a * xi * q / c, a * xi * q / d}, q, n + si);
    }
    total += t;
  });
  return total;
}

QRational relemma_residual(const ParamPoint& point, long n) {
  auto params = schlosser::Params::from_point(point);
  params.a *= params.q.pow(n);
  return schlosser::lemma_lhs(params) - schlosser::lemma_rhs(params);
}

bool inductive_replay(const ParamPoint& point, long n_max) {
  const long r = point.index("r");
  if (r < 1 || r > 3 || n_max < 0 || n_max > 3) throw DomainError("C_r replay is limited to 1 <= r <= 3, n_max <= 3");
  const auto params = schlosser::Params::from_point(point);
  if (!(schlosser::lhs(params, 0) == schlosser::rhs(params, 0))) return false;
  for (long n = 0; n < n_max; ++n) {
    for (long i = 1; i <= r; ++i) {
      for (long k_i = 0; k_i <= n + 1; ++k_i) {
        if (!split_residual(point, n, r, i, k_i).is_zero()) return false;
      }
    }
    bool ok = true;
    QRational propagated(0);
    for_each_s(r, [&](const std::vector<long>& s) {
      if (!coeff_residual(point, n, r, s).is_zero()) ok = false;
      schlosser::Params moved = params;
      moved.x = shifted_x(params.x, s, params.q);
      propagated += coeff_beta(point, n, s) * schlosser::rhs(moved, n);
    });
    if (!ok) return false;
    const long total = schlosser::box_size(n + 1, r);
    std::vector<long> k(static_cast<std::size_t>(r));
    for (long idx = 0; idx < total; ++idx) {
      long rest = idx;
      for (auto& ki : k) {
        ki = rest % (n + 2);
        rest /= n + 2;
      }
      if (!induction_residual(point, n, k).is_zero()) return false;
    }
    if (!relemma_residual(point, n).is_zero()) return false;
    const QRational closed = schlosser::rhs(params, n + 1);
    if (!(propagated == end_form(point, n)) || !(propagated == closed)) return false;
    if (!(schlosser::lhs(params, n + 1) == closed)) return false;
  }
  return true;
}

}  // namespace schlosser_proof

namespace {

struct ProofTrial {
  enum class Kind { kPass, kFail, kExhausted } kind = Kind::kExhausted;
  long resamples = 0;
  long checks = 0;
  long r = 0;
  ParamPoint point;
  std::string check;
};

// Returns the first failing check, or an empty string.
class Checker {
 public:
  explicit Checker(long& checks) : checks_(checks) {}
  bool zero(const QRational& value, const std::string& what) { return holds(value.is_zero(), what); }
  bool holds(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failure.empty()) failure = what;
    return ok;
  }
  std::string failure;

 private:
  long& checks_;
};

std::string at(long n, long k) { return " n=" + std::to_string(n) + " k=" + std::to_string(k); }

std::string single_sum_checks(const ProofCertificate& cert, const ParamPoint& p, const CertifyOptions& o, long& checks) {
  Checker c(checks);
  for (std::size_t w = 0; w < cert.recurrences.size(); ++w) {
    const auto& rec = cert.recurrences[w];
    for (long n = rec.min_n; n <= o.n_max; ++n) {
      for (long k = -1; k <= n + 1; ++k) {
        if (!c.zero(term_recurrence_residual(cert, p, n, k, w), "recurrence " + rec.name + at(n, k))) return c.failure;
      }
    }
  }
  const long min_n = cert.recurrences.front().min_n;
  if (cert.rhs_term) {
    for (long n = min_n; n <= o.n_max; ++n) {
      if (cert.anti_diff) {
        for (long k = 0; k <= n; ++k) {
          if (!c.zero(telescoping_residual(cert, p, n, k), "telescoping" + at(n, k))) return c.failure;
        }
      }
      if (!c.holds(boundary_check(cert, p, n), "boundary n=" + std::to_string(n))) return c.failure;
    }
  }
  for (long n = min_n; n <= o.n_max; ++n) {
    if (!c.zero(closed_form_recurrence_residual(cert, p, n), "closed form recurrence n=" + std::to_string(n))) {
      return c.failure;
    }
  }
  c.holds(inductive_replay(cert, p, o.replay_n_max), "inductive replay n_max=" + std::to_string(o.replay_n_max));
  return c.failure;
}

std::vector<std::vector<long>> cube(long r, long lo, long hi) {
  std::vector<std::vector<long>> out;
  std::vector<long> v(static_cast<std::size_t>(r), lo);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < v.size() && v[i] == hi) v[i++] = lo;
    if (i == v.size()) return out;
    ++v[i];
  }
}

std::string schlosser_checks(const ParamPoint& p, long r, long n_max, long replay_n_max, long& checks) {
  using namespace schlosser_proof;
  Checker c(checks);
  for (long n = 0; n <= n_max; ++n) {
    for (long i = 1; i <= r; ++i) {
      for (long k = 0; k <= n + 1; ++k) {
        if (!c.zero(split_residual(p, n, r, i, k), "split i=" + std::to_string(i) + at(n, k))) return c.failure;
      }
    }
    for (const auto& s : cube(r, 0, 1)) {
      if (!c.zero(coeff_residual(p, n, r, s), "coefficient n=" + std::to_string(n))) return c.failure;
    }
    if (!c.zero(relemma_residual(p, n), "lemma at a q^n, n=" + std::to_string(n))) return c.failure;
    if (n < n_max) {
      for (const auto& k : cube(r, 0, n + 1)) {
        if (!c.zero(induction_residual(p, n, k), "induction n=" + std::to_string(n))) return c.failure;
      }
    }
  }
  c.holds(inductive_replay(p, replay_n_max), "inductive replay n_max=" + std::to_string(replay_n_max));
  return c.failure;
}

ProofTrial run_proof_trial(std::string_view id, const ProofCertificate* cert, const CertifyOptions& o, long trial) {
  Sampler sampler(o.seed, "certify/" + std::string(id), static_cast<std::uint64_t>(trial), o.height);
  ProofTrial out;
  if (!cert) out.r = 1 + trial % o.r_max;
  for (long attempt = 0; attempt < o.retry_cap; ++attempt) {
    ParamPoint p;
    if (cert) {
      for (const auto& name : cert->symbols) p.set(name, name == "q" ? sampler.q() : sampler.rational());
    } else {
      for (const char* name : {"a", "b", "c", "d"}) p.set(name, sampler.rational());
      p.set("q", sampler.q());
      p.set_index("r", out.r);
      for (long i = 1; i <= out.r; ++i) p.set(x_name(i), sampler.rational());
    }
    long checks = 0;
    try {
      std::string failure = cert ? single_sum_checks(*cert, p, o, checks)
                                 : schlosser_checks(p, out.r, std::min(o.n_max, 3L), std::min(o.replay_n_max, 3L), checks);
      out.checks += checks;
      out.kind = failure.empty() ? ProofTrial::Kind::kPass : ProofTrial::Kind::kFail;
      out.check = std::move(failure);
      out.point = std::move(p);
      return out;
    } catch (const PoleError&) {
      ++out.resamples;
    } catch (const DegenerateQ&) {
      ++out.resamples;
    }
  }
  out.kind = ProofTrial::Kind::kExhausted;
  return out;
}

}  // namespace

ProofReport certify(std::string_view id, const CertifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (options.trials < 1) throw ConfigError("trials must be at least 1");
  if (options.n_max < 0 || options.replay_n_max < 0) throw ConfigError("n_max must be nonnegative");
  if (options.replay_n_max > 8) throw ConfigError("replay n_max is capped at 8");
  if (options.r_max < 1 || options.r_max > 3) throw ConfigError("certificate r_max must lie in 1..3");
  const ProofCertificate* cert = nullptr;
  if (id != "schlosser") cert = &find_certificate(id);

  std::vector<ProofTrial> outcomes(static_cast<std::size_t>(options.trials));
  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 1)
  for (long t = 0; t < options.trials; ++t) {
    try {
      outcomes[static_cast<std::size_t>(t)] = run_proof_trial(id, cert, options, t);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  ProofReport report;
  report.id = std::string(id);
  report.seed = options.seed;
  if (cert) {
    report.max_indices["n"] = options.n_max;
  } else {
    report.max_indices["n"] = std::min(options.n_max, 3L);
    report.max_indices["r"] = std::min(options.r_max, options.trials);
  }
  for (long t = 0; t < options.trials; ++t) {
    auto& o = outcomes[static_cast<std::size_t>(t)];
    ++report.attempted;
    report.resamples += o.resamples;
    report.checks += o.checks;
    switch (o.kind) {
      case ProofTrial::Kind::kPass:
        ++report.succeeded;
        break;
      case ProofTrial::Kind::kFail:
        ++report.failed;
        if (!report.first_failure) report.first_failure = ProofFailure{t, std::move(o.point), std::move(o.check)};
        break;
      case ProofTrial::Kind::kExhausted:
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
