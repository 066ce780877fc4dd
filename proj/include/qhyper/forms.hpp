#pragma once

#include "qhyper/qcore.hpp"

// Exact evaluators for both sides of each single-sum terminating identity.
// Balanced parameters (e, lambda) are passed in already substituted by the
// caller; square roots never appear (very-well-poised pairs are collapsed and
// Singh's transformation is written in A = a^2, B = b^2).
namespace qhyper::forms {

// Jackson 8phi7 summation; e = a^2 q^{n+1}/(bcd).
QRational jackson_8phi7_lhs(const QRational& a, const QRational& b, const QRational& c,
                            const QRational& d, const QRational& e, const QRational& q, long n);
QRational jackson_8phi7_rhs(const QRational& a, const QRational& b, const QRational& c,
                            const QRational& d, const QRational& q, long n);

// Jackson 6phi5 summation.
QRational jackson_6phi5_lhs(const QRational& a, const QRational& b, const QRational& c,
                            const QRational& q, long n);
QRational jackson_6phi5_rhs(const QRational& a, const QRational& b, const QRational& c,
                            const QRational& q, long n);

// Watson's 8phi7 -> 4phi3 transformation. The 8phi7 side is shared with
// the very-well-poised 8phi7 transformation.
QRational watson_8phi7(const QRational& a, const QRational& b, const QRational& c,
                       const QRational& d, const QRational& e, const QRational& q, long n);
QRational watson_4phi3_side(const QRational& a, const QRational& b, const QRational& c,
                            const QRational& d, const QRational& e, const QRational& q, long n);

// 8phi7 -> 8phi7 transformation; lambda = a^2 q/(bcd).
QRational vwp_transform_rhs(const QRational& a, const QRational& b, const QRational& c,
                            const QRational& d, const QRational& e, const QRational& lambda,
                            const QRational& q, long n);

// Bailey's 10phi9 transformation; lambda = a^2 q/(bcd).
QRational bailey_lhs(const QRational& a, const QRational& b, const QRational& c, const QRational& d,
                     const QRational& e, const QRational& f, const QRational& lambda,
                     const QRational& q, long n);
QRational bailey_rhs(const QRational& a, const QRational& b, const QRational& c, const QRational& d,
                     const QRational& e, const QRational& f, const QRational& lambda,
                     const QRational& q, long n);

// Singh's quadratic transformation in A = a^2, B = b^2; summed to k = n,
// so one of c, d must be q^{-n}.
QRational singh_lhs(const QRational& A, const QRational& B, const QRational& c, const QRational& d,
                    const QRational& q, long n);
QRational singh_rhs(const QRational& A, const QRational& B, const QRational& c, const QRational& d,
                    const QRational& q, long n);

// Finite Lebesgue/Jacobi form.
QRational lebesgue_finite_lhs(const QRational& a, const QRational& q, long n);
QRational lebesgue_finite_rhs(const QRational& a, const QRational& q, long n);

// Shifted finite Jacobi form, k from -m to n.
QRational jacobi_finite_lhs(const QRational& z, const QRational& q, long m, long n);
QRational jacobi_finite_rhs(const QRational& q, long m, long n);

// Term-level relation used to pass from the Lebesgue form to the shifted
// Jacobi form, for -m <= k <= n.
QRational jacobi_prefactor_lhs(const QRational& z, const QRational& q, long m, long n, long k);
QRational jacobi_prefactor_rhs(const QRational& z, const QRational& q, long m, long n, long k);

// Finite quintuple product forms; all three right sides equal 1.
QRational quintuple_finite_lhs(const QRational& z, const QRational& q, long n);
QRational quintuple_finite_mn_lhs(const QRational& z, const QRational& q, long m, long n);
QRational quintuple_ccg_lhs(const QRational& z, const QRational& q, long n);

// Andrews-Jain sum; b = 0 gives the second finite Lebesgue form.
QRational andrews_jain_lhs(const QRational& a, const QRational& b, const QRational& q, long n);
QRational andrews_jain_rhs(const QRational& a, const QRational& b, const QRational& q, long n);

// Single-sum 8phi7 specialization reached at the end of the Schlosser n = 1
// lemma (sum over k = 0..r).
QRational sch_8phi7_lhs(const QRational& a, const QRational& b, const QRational& c,
                        const QRational& d, const QRational& q, long r);
QRational sch_8phi7_rhs(const QRational& a, const QRational& b, const QRational& c,
                        const QRational& d, const QRational& q, long r);

}  // namespace qhyper::forms
