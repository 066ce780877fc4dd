#pragma once

#include <span>
#include <vector>

#include "qhyper/qcore.hpp"

// Kernels for the C_r extension of Jackson's 8phi7 sum: the r-fold summand,
// its closed form, the n = 1 lemma, and the two allied identities. The
// r-fold sums come in an OpenMP version and a serial reference version.
namespace qhyper::schlosser {

struct Params {
  QRational a, b, c, d, q;
  std::vector<QRational> x;  // x_1..x_r

  long r() const { return static_cast<long>(x.size()); }

  /// Reads a, b, c, d, q and x1..x{r} from a point whose index "r" is set.
  static Params from_point(const ParamPoint& point);
};

/// prod_{i<j} (x_i q^{k_i} - x_j q^{k_j})(1 - a x_i x_j q^{k_i+k_j}).
QRational vandermonde(std::span<const QRational> x, std::span<const long> k, const QRational& a,
                      const QRational& q);

/// Summand of the r-fold sum at level n. Zero when some k_i lies outside [0, n].
QRational summand(const Params& p, long n, std::span<const long> k);

/// Closed-form right side at level n.
QRational rhs(const Params& p, long n);

/// sum over {0..n}^r of summand(); parallel over the flattened index box.
QRational lhs(const Params& p, long n);
QRational lhs_serial(const Params& p, long n);

/// n = 1 lemma (sum over s in {0,1}^r); valid for r >= 0.
QRational lemma_lhs(const Params& p);
QRational lemma_rhs(const Params& p);

enum class CrSign {
  kPlus,                 // 1/q^{(r-1)s_i}
  kAlternating,          // (-1)^{s_i}/q^{(r-1)s_i}; holds for every r
  kAlternatingAsPrinted  // 1/(-q)^{(r-1)s_i}; agrees with kAlternating for even r only
};

/// Left side of the two allied identities (sum over {0..n}^r).
QRational cr_prop_lhs(const QRational& a, const QRational& q, std::span<const QRational> x, long n,
                      CrSign sign);
QRational cr_prop_lhs_serial(const QRational& a, const QRational& q, std::span<const QRational> x,
                             long n, CrSign sign);

/// (n+1)(q^{n+1};q^{n+1})_{r-1} / (q^{n C(r,2)} (q;q)_{r-1})
QRational cr_prop_1_rhs(const QRational& q, long n, long r);

/// (-q^{n+1};q^{n+1})_{r-1} / (q^{n C(r,2)} (-q;q)_{r-1}) for even n, 0 for odd n.
QRational cr_prop_2_rhs(const QRational& q, long n, long r);

/// Number of summands (n+1)^r, saturating at the long maximum.
long box_size(long n, long r);

}  // namespace qhyper::schlosser
