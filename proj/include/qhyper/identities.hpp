#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhyper/qcore.hpp"
#include "qhyper/sampling.hpp"

namespace qhyper {

struct IndexRange {
  long lo = 0;
  long hi = 0;
};

using IndexRanges = std::map<std::string, IndexRange, std::less<>>;
using Evaluator = std::function<QRational(const ParamPoint&)>;

struct IdentityDescriptor {
  std::string id;
  std::string title;

  /// Sampled symbols (q included). When x_vector is set, x1..x{r} are
  /// sampled as well, r being the index of that name.
  std::vector<std::string> free_symbols;
  bool x_vector = false;

  /// Symbols fixed by a constraint, filled in by derive() before evaluation.
  std::vector<std::string> derived_symbols;
  std::function<void(ParamPoint&)> derive;

  /// Indices in sampling order with their default (acceptance) ranges, and
  /// the hard caps a caller may widen them to.
  std::vector<std::pair<std::string, IndexRange>> indices;
  IndexRanges max_ranges;

  /// Index combinations outside this predicate are skipped (range coupling
  /// such as -m <= k <= n, or the multi-sum cost guard).
  std::function<bool(const ParamPoint&)> admissible;

  /// Factors that must be nonzero at a sampled point; a zero rejects it.
  std::function<std::vector<QRational>(const ParamPoint&)> pole_guards;

  Evaluator lhs;
  Evaluator rhs;
  /// Single-threaded lhs for descriptors whose lhs is itself parallel.
  Evaluator lhs_serial;
};

struct RegistryOptions {
  /// Terminate Singh's quadratic transformation with c = q^{-n} instead of d.
  bool singh_terminate_c = false;
  /// Evaluate the second allied C_r identity with its sign as printed,
  /// which fails for odd r.
  bool cr_prop_2_as_printed = false;
};

/// The 18 registered identities in a fixed order.
const std::vector<IdentityDescriptor>& list_identities();
std::vector<IdentityDescriptor> build_identities(const RegistryOptions& options);

/// Looks up a descriptor by id. "lebesgue_finite_2" resolves to the
/// Andrews-Jain descriptor with b := 0. Throws ConfigError for unknown ids.
IdentityDescriptor find_identity(std::string_view id, const RegistryOptions& options = {});

/// Applies derived symbols and guards, then evaluates (LHS, RHS).
std::pair<QRational, QRational> eval_sides(const IdentityDescriptor& descriptor, ParamPoint point);
std::pair<QRational, QRational> eval_sides(std::string_view id, const ParamPoint& point);

enum class VerifyStatus { kPass, kCounterexample, kRetryExhausted };

std::string to_string(VerifyStatus status);

struct Counterexample {
  long trial = 0;
  ParamPoint point;
  QRational lhs;
  QRational rhs;
};

struct VerificationReport {
  std::string id;
  VerifyStatus status = VerifyStatus::kPass;
  long attempted = 0;
  long succeeded = 0;
  long failed = 0;
  long rejected = 0;   // trials abandoned after the retry cap
  long resamples = 0;  // pole rejections that were resampled
  std::uint64_t seed = 0;
  std::map<std::string, long, std::less<>> max_indices;
  double elapsed_ms = 0.0;
  std::optional<Counterexample> first_failure;
};

struct VerifyOptions {
  long trials = 20;
  std::uint64_t seed = 42;
  IndexRanges ranges;  // overrides of the descriptor defaults
  long height = kDefaultHeight;
  long retry_cap = 100;
  /// Multiply the RHS by q (mutation test).
  bool mutate_rhs = false;
  /// Called once per finished trial, from any thread (calls are serialized).
  std::function<void(const std::string&)> progress;
};

/// Trials run in parallel; the report does not depend on the thread count.
VerificationReport verify(const IdentityDescriptor& descriptor, const VerifyOptions& options);
/// Reference implementation: one thread, serial kernels.
VerificationReport verify_serial(const IdentityDescriptor& descriptor, const VerifyOptions& options);

/// Index grid after applying overrides, caps and admissible(); ordered as
/// nested loops over descriptor.indices (last index fastest).
std::vector<std::map<std::string, long, std::less<>>> index_grid(const IdentityDescriptor& descriptor,
                                                                 const IndexRanges& overrides);

/// The sampled point for one trial attempt, before derive().
ParamPoint sample_point(const IdentityDescriptor& descriptor, Sampler& sampler,
                        const std::map<std::string, long, std::less<>>& indices);

}  // namespace qhyper
