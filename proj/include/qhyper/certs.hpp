#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qhyper/identities.hpp"
#include "qhyper/qcore.hpp"

namespace qhyper {

using TermFn = std::function<QRational(const ParamPoint&, long n, long k)>;
using LevelFn = std::function<QRational(const ParamPoint&, long n)>;
using ParamMap = std::function<ParamPoint(const ParamPoint&)>;

/// coeff(point, n) * X_{n - level_drop, k - k_drop}(shift(point)).
struct RecurrenceTerm {
  LevelFn coeff;
  long level_drop = 1;
  long k_drop = 0;
  ParamMap shift;  // empty: parameters unchanged
};

/// X_{n,k} = sum of terms, for n >= min_n.
struct Recurrence {
  std::string name;
  std::vector<RecurrenceTerm> terms;
  long min_n = 1;
};

struct ProofCertificate {
  std::string id;
  std::vector<std::string> symbols;  // sampled; q included

  /// F_{n,k}; zero outside 0 <= k <= n.
  TermFn term;
  /// recurrences[0] is the one the proof sums over k; any further entries
  /// are auxiliary term relations used along the way.
  std::vector<Recurrence> recurrences;

  /// G_{n,k} and H_{n,k} for proofs that telescope a transformed side.
  TermFn rhs_term;
  TermFn anti_diff;

  /// S_n. When empty, S_n = sum_k G_{n,k}.
  LevelFn closed_form;

  int order() const;
};

/// The six single-sum certificates (jackson, watson, bailey, singh,
/// lebesgue, quintuple). The C_r proof has its own entry points below.
const std::vector<ProofCertificate>& single_sum_certificates();

/// All seven proof ids, in report order.
const std::vector<std::string>& proof_ids();

/// Throws ConfigError for an unknown id (or for "schlosser").
const ProofCertificate& find_certificate(std::string_view id);

/// F_{n,k} minus the right side of recurrence `which`.
QRational term_recurrence_residual(const ProofCertificate& cert, const ParamPoint& point, long n, long k,
                                   std::size_t which = 0);

/// G_{n,k} - sum coeff G(...) - (H_{n,k} - H_{n,k-1}). Needs rhs_term and anti_diff.
QRational telescoping_residual(const ProofCertificate& cert, const ParamPoint& point, long n, long k);

/// sum_{k=0}^{n} (G_{n,k} - sum coeff G(...)) == 0.
bool boundary_check(const ProofCertificate& cert, const ParamPoint& point, long n);

/// Rebuilds S_n from the sum side at the base levels and the recurrence for
/// S, then compares with the direct closed form and with sum_k F_{n,k} at
/// every level 1..n_max.
bool inductive_replay(const ProofCertificate& cert, const ParamPoint& point, long n_max);

/// S_n - sum coeff S(...) for the main recurrence.
QRational closed_form_recurrence_residual(const ProofCertificate& cert, const ParamPoint& point, long n);

QRational closed_form_value(const ProofCertificate& cert, const ParamPoint& point, long n);
QRational sum_side(const ProofCertificate& cert, const ParamPoint& point, long n);

/// Coefficients of the generic contiguous relations rewritten for the
/// Jackson, Bailey (first relation) and Watson (second relation) term
/// functions. The points need a = s^2 with s given as the symbol "sqrt_a".
QRational generic_alpha_jackson(const ParamPoint& point, long n);
QRational generic_alpha_bailey(const ParamPoint& point, long n);
QRational generic_beta_watson(const ParamPoint& point, long n);

namespace schlosser_proof {

/// Partial-fraction split of the factor produced when k_i is raised by one,
/// multiplied through by its left-hand denominator
/// (1 - q^{k_i-n-1})(1 - a x_i^2 q^{n+k_i+1}) so that k_i = n + 1 is
/// admissible. `i` is 1-based.
QRational split_residual(const ParamPoint& point, long n, long r, long i, long k_i);

/// The induction coefficient for s in {0,1}^r: its defining product form
/// minus its simplified form.
QRational coeff_beta_defining(const ParamPoint& point, long n, const std::vector<long>& s);
QRational coeff_beta(const ParamPoint& point, long n, const std::vector<long>& s);
QRational coeff_residual(const ParamPoint& point, long n, long r, const std::vector<long>& s);

/// Summand at level n+1 minus sum_s beta_s * summand at level n with
/// x -> x q^s and k -> k - s.
QRational induction_residual(const ParamPoint& point, long n, const std::vector<long>& k);

/// sum_s beta_s RHS_n(x q^s) rewritten as an r-fold n = 1 sum at a -> a q^n.
QRational end_form(const ParamPoint& point, long n);

/// The n = 1 lemma with a replaced by a q^n: LHS - RHS.
QRational relemma_residual(const ParamPoint& point, long n);

/// Level-by-level replay for r <= 3, n_max <= 3.
bool inductive_replay(const ParamPoint& point, long n_max);

}  // namespace schlosser_proof

struct CertifyOptions {
  long trials = 20;
  std::uint64_t seed = 42;
  /// Residual checks cover 0 <= k <= n <= n_max; replay runs to replay_n_max.
  /// For "schlosser" both are clamped to 3 and trials cycle r through 1..r_max.
  long n_max = 6;
  long replay_n_max = 5;
  long r_max = 3;
  long height = kDefaultHeight;
  long retry_cap = 100;
};

struct ProofFailure {
  long trial = 0;
  ParamPoint point;
  std::string check;  // e.g. "recurrence main n=3 k=2"
};

struct ProofReport {
  std::string id;
  VerifyStatus status = VerifyStatus::kPass;
  long attempted = 0;
  long succeeded = 0;
  long failed = 0;
  long rejected = 0;
  long resamples = 0;
  long checks = 0;  // exact residual and replay checks evaluated
  std::uint64_t seed = 0;
  std::map<std::string, long, std::less<>> max_indices;
  double elapsed_ms = 0.0;
  std::optional<ProofFailure> first_failure;
};

/// Runs every check of one proof over random points; trials in parallel.
ProofReport certify(std::string_view id, const CertifyOptions& options);

}  // namespace qhyper
