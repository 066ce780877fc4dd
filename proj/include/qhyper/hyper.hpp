#pragma once

#include <utility>
#include <vector>

#include "qhyper/qcore.hpp"

namespace qhyper {

/// A terminating r+1 phi r series summed over its first term_count terms.
struct PhiSpec {
  std::vector<QRational> numerator_params;
  std::vector<QRational> denominator_params;
  QRational q;
  QRational z;
  long term_count = 1;
};

/// sum_{k < term_count} (a_1..a_{r+1};q)_k z^k / (q, b_1..b_r;q)_k, built
/// incrementally from the term ratio. PoleError names the offending k.
QRational phi_sum(const PhiSpec& spec);

/// k-th term of a well-poised series,
///   F_k = (a_1..a_{r+1};q)_k / (q, a_1 q/a_2, ..., a_1 q/a_{r+1};q)_k z^k.
struct WellPoisedTerm {
  std::vector<QRational> a_list;
  QRational q;
  QRational z;

  std::size_t r() const { return a_list.size() - 1; }
};

/// F_k; F_k = 0 for k < 0.
QRational wp_term(const WellPoisedTerm& t, long k);

/// Very-well-poised term with the q a^{1/2}, -q a^{1/2} pair collapsed into
/// (1 - a q^{2k})/(1 - a), so a need not be a square:
///   (1 - a q^{2k})/(1 - a) (a, others;q)_k / (q, aq/others;q)_k z^k.
/// Zero for k < 0.
QRational vwp_term(const QRational& a, std::span<const QRational> others, const QRational& q,
                   const QRational& z, long k);

/// sum_{k=0}^{n} vwp_term(...)
QRational vwp_sum(const QRational& a, std::span<const QRational> others, const QRational& q,
                  const QRational& z, long n);

/// Coefficient of F_{k-1}(a_1 q^2, a_2 q, ..., a_{r+1} q) in the first
/// contiguous relation (shift a_r vs a_{r+1}). Needs r >= 2: at r = 1 the
/// factor (1 - a_1/a_r) vanishes identically and DomainError is thrown.
QRational contiguous_alpha(const WellPoisedTerm& t);

/// Coefficient for the second contiguous relation (z -> qz vs a_{r+1} -> a_{r+1} q).
QRational contiguous_beta(const WellPoisedTerm& t);

/// The (a_1 q^2, a_2 q, ..., a_{r+1} q) shift shared by both relations.
WellPoisedTerm contiguous_shift(const WellPoisedTerm& t);

/// F_k(.., a_r q, a_{r+1}) - F_k(.., a_r, a_{r+1} q) - alpha F_{k-1}(shift).
QRational contiguous_residual_1(const WellPoisedTerm& t, long k);

/// F_k(..; q, qz) - F_k(.., a_{r+1} q; q, z) - beta F_{k-1}(shift).
QRational contiguous_residual_2(const WellPoisedTerm& t, long k);

/// Residuals of the two rational-function identities behind the contiguous
/// relations (a = a_1, b = a_r, c = a_{r+1}, x = q^k).
std::pair<QRational, QRational> trivial_identity_residuals(const QRational& a, const QRational& b,
                                                           const QRational& c, const QRational& x);

}  // namespace qhyper
