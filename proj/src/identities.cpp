#include "qhyper/identities.hpp"

#include <chrono>
#include <exception>
#include <mutex>

#include <omp.h>

#include "qhyper/forms.hpp"
#include "qhyper/schlosser.hpp"

namespace qhyper {

namespace {

using Indices = std::map<std::string, long, std::less<>>;

const QRational& S(const ParamPoint& p, std::string_view name) { return p.sym(name); }
long I(const ParamPoint& p, std::string_view name) { return p.index(name); }

std::vector<QRational> x_of(const ParamPoint& p) {
  std::vector<QRational> x;
  const long r = p.index("r");
  for (long i = 1; i <= r; ++i) x.push_back(p.sym(x_name(i)));
  return x;
}

// x_i != x_j and a x_i x_j != 1: the Vandermonde-type prefactor denominators.
std::vector<QRational> x_guards(const ParamPoint& p) {
  const auto x = x_of(p);
  const QRational& a = p.sym("a");
  std::vector<QRational> factors;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      factors.push_back(x[i] - x[j]);
      factors.push_back(QRational(1) - a * x[i] * x[j]);
    }
  }
  return factors;
}

bool schlosser_cost_ok(const ParamPoint& p) {
  return p.index("r") <= 4 && schlosser::box_size(p.index("n"), p.index("r")) <= 2500;
}

IdentityDescriptor jackson_8phi7() {
  IdentityDescriptor d;
  d.id = "jackson_8phi7";
  d.title = "Jackson's terminating 8phi7 summation";
  d.free_symbols = {"a", "b", "c", "d", "q"};
  d.derived_symbols = {"e"};
  d.derive = [](ParamPoint& p) {
    const QRational& q = p.q();
    p.set("e", S(p, "a") * S(p, "a") * q.pow(I(p, "n") + 1) / (S(p, "b") * S(p, "c") * S(p, "d")));
  };
  d.indices = {{"n", {0, 6}}};
  d.max_ranges = {{"n", {0, 12}}};
  d.lhs = [](const ParamPoint& p) {
    return forms::jackson_8phi7_lhs(S(p, "a"), S(p, "b"), S(p, "c"), S(p, "d"), S(p, "e"), p.q(), I(p, "n"));
  };
  d.rhs = [](const ParamPoint& p) {
    return forms::jackson_8phi7_rhs(S(p, "a"), S(p, "b"), S(p, "c"), S(p, "d"), p.q(), I(p, "n"));
  };
  return d;
}

IdentityDescriptor jackson_6phi5() {
  IdentityDescriptor d;
  d.id = "jackson_6phi5";
  d.title = "Jackson's terminating 6phi5 summation";
  d.free_symbols = {"a", "b", "c", "q"};
  d.indices = {{"n", {0, 6}}};
  d.max_ranges = {{"n", {0, 12}}};
  d.lhs = [](const ParamPoint& p) {
    return forms::jackson_6phi5_lhs(S(p, "a"), S(p, "b"), S(p, "c"), p.q(), I(p, "n"));
  };
  d.rhs = [](const ParamPoint& p) {
    return forms::jackson_6phi5_rhs(S(p, "a"), S(p, "b"), S(p, "c"), p.q(), I(p, "n"));
  };
  return d;
}

IdentityDescriptor watson_transform() {
  IdentityDescriptor d;
  d.id = "watson_transform";
  d.title = "Watson's q-Whipple transformation (8phi7 to 4phi3)";
  d.free_symbols = {"a", "b", "c", "d", "e", "q"};
  d.indices = {{"n", {0, 6}}};
  d.max_ranges = {{"n", {0, 12}}};
  d.lhs = [](const ParamPoint& p) {
    return forms::watson_8phi7(S(p, "a"), S(p, "b"), S(p, "c"), S(p, "d"), S(p, "e"), p.q(), I(p, "n"));
  };
  d.rhs = [](const ParamPoint& p) {
    return forms::watson_4phi3_side(S(p, "a"), S(p, "b"), S(p, "c"), S(p, "d"), S(p, "e"), p.q(),
                                    I(p, "n"));
  };
  return d;
}

void derive_lambda(ParamPoint& p) {
  p.set("lambda", S(p, "a") * S(p, "a") * p.q() / (S(p, "b") * S(p, "c") * S(p, "d")));
}

IdentityDescriptor vwp_transform() {
  IdentityDescriptor d;
  d.id = "vwp_transform";
  d.title = "Terminating very-well-poised 8phi7 transformation";
  d.free_symbols = {"a", "b", "c", "d", "e", "q"};
  d.derived_symbols = {"lambda"};
  d.derive = derive_lambda;
  d.indices = {{"n", {0, 6}}};
  d.max_ranges = {{"n", {0, 12}}};
  d.lhs = [](const ParamPoint& p) {
    return forms::watson_8phi7(S(p, "a"), S(p, "b"), S(p, "c"), S(p, "d"), S(p, "e"), p.q(), I(p, "n"));
  };
  d.rhs = [](const ParamPoint& p) {
    return forms::vwp_transform_rhs(S(p, "a"), S(p, "b"), S(p, "c"), S(p, "d"), S(p, "e"), S(p, "lambda"),
                                    p.q(), I(p, "n"));
  };
  return d;
}

IdentityDescriptor bailey_10phi9() {
  IdentityDescriptor d;
  d.id = "bailey_10phi9";
  d.title = "Bailey's terminating 10phi9 transformation";
  d.free_symbols = {"a", "b", "c", "d", "e", "f", "q"};
  d.derived_symbols = {"lambda"};
  d.derive = derive_lambda;
  d.indices = {{"n", {0, 6}}};
  d.max_ranges = {{"n", {0, 12}}};
  d.lhs = [](const ParamPoint& p) {
    return forms::bailey_lhs(S(p, "a"), S(p, "b"), S(p, "c"), S(p, "d"), S(p, "e"), S(p, "f"),
                             S(p, "lambda"), p.q(), I(p, "n"));
  };
  d.rhs = [](const ParamPoint& p) {
    return forms::bailey_rhs(S(p, "a"), S(p, "b"), S(p, "c"), S(p, "d"), S(p, "e"), S(p, "f"),
                             S(p, "lambda"), p.q(), I(p, "n"));
  };
  return d;
}

IdentityDescriptor singh_quadratic(bool terminate_c) {
  IdentityDescriptor d;
  d.id = "singh_quadratic";
  d.title = terminate_c ? "Singh's quadratic transformation (c = q^-n)"
                        : "Singh's quadratic transformation (d = q^-n)";
  const std::string fixed = terminate_c ? "c" : "d";
  d.free_symbols = terminate_c ? std::vector<std::string>{"a", "b", "d", "q"}
                               : std::vector<std::string>{"a", "b", "c", "q"};
  d.derived_symbols = {fixed};
  d.derive = [fixed](ParamPoint& p) { p.set(fixed, p.q().pow(-I(p, "n"))); };
  d.indices = {{"n", {0, 6}}};
  d.max_ranges = {{"n", {0, 12}}};
  d.lhs = [](const ParamPoint& p) {
    const QRational& a = S(p, "a");
    const QRational& b = S(p, "b");
    return forms::singh_lhs(a * a, b * b, S(p, "c"), S(p, "d"), p.q(), I(p, "n"));
  };
  d.rhs = [](const ParamPoint& p) {
    const QRational& a = S(p, "a");
    const QRational& b = S(p, "b");
    return forms::singh_rhs(a * a, b * b, S(p, "c"), S(p, "d"), p.q(), I(p, "n"));
  };
  return d;
}

IdentityDescriptor schlosser_cr() {
  IdentityDescriptor d;
  d.id = "schlosser_cr";
  d.title = "C_r extension of Jackson's 8phi7 summation";
  d.free_symbols = {"a", "b", "c", "d", "q"};
  d.x_vector = true;
  d.indices = {{"r", {1, 3}}, {"n", {0, 3}}};
  d.max_ranges = {{"r", {1, 4}}, {"n", {0, 49}}};
  d.admissible = schlosser_cost_ok;
  d.pole_guards = x_guards;
  d.lhs = [](const ParamPoint& p) { return schlosser::lhs(schlosser::Params::from_point(p), I(p, "n")); };
  d.lhs_serial = [](const ParamPoint& p) {
    return schlosser::lhs_serial(schlosser::Params::from_point(p), I(p, "n"));
  };
  d.rhs = [](const ParamPoint& p) { return schlosser::rhs(schlosser::Params::from_point(p), I(p, "n")); };
  return d;
}

IdentityDescriptor schlosser_lemma_n1() {
  IdentityDescriptor d;
  d.id = "schlosser_lemma_n1";
  d.title = "n = 1 case of the C_r 8phi7 summation";
  d.free_symbols = {"a", "b", "c", "d", "q"};
  d.x_vector = true;
  d.indices = {{"r", {1, 3}}};
  d.max_ranges = {{"r", {1, 8}}};
  d.pole_guards = x_guards;
  d.lhs = [](const ParamPoint& p) { return schlosser::lemma_lhs(schlosser::Params::from_point(p)); };
  d.rhs = [](const ParamPoint& p) { return schlosser::lemma_rhs(schlosser::Params::from_point(p)); };
  return d;
}

IdentityDescriptor sch_8phi7_special() {
  IdentityDescriptor d;
  d.id = "sch_8phi7_special";
  d.title = "Single-sum 8phi7 specialization closing the n = 1 case";
  d.free_symbols = {"a", "b", "c", "d", "q"};
  d.indices = {{"r", {0, 6}}};
  d.max_ranges = {{"r", {0, 12}}};
  d.lhs = [](const ParamPoint& p) {
    return forms::sch_8phi7_lhs(S(p, "a"), S(p, "b"), S(p, "c"), S(p, "d"), p.q(), I(p, "r"));
  };
  d.rhs = [](const ParamPoint& p) {
    return forms::sch_8phi7_rhs(S(p, "a"), S(p, "b"), S(p, "c"), S(p, "d"), p.q(), I(p, "r"));
  };
  return d;
}

IdentityDescriptor cr_prop(std::string id, std::string title, schlosser::CrSign sign) {
  IdentityDescriptor d;
  d.id = std::move(id);
  d.title = std::move(title);
  d.free_symbols = {"a", "q"};
  d.x_vector = true;
  d.indices = {{"r", {1, 3}}, {"n", {0, 3}}};
  d.max_ranges = {{"r", {1, 4}}, {"n", {0, 49}}};
  d.admissible = schlosser_cost_ok;
  d.pole_guards = x_guards;
  d.lhs = [sign](const ParamPoint& p) {
    return schlosser::cr_prop_lhs(S(p, "a"), p.q(), x_of(p), I(p, "n"), sign);
  };
  d.lhs_serial = [sign](const ParamPoint& p) {
    return schlosser::cr_prop_lhs_serial(S(p, "a"), p.q(), x_of(p), I(p, "n"), sign);
  };
  if (sign == schlosser::CrSign::kPlus) {
    d.rhs = [](const ParamPoint& p) { return schlosser::cr_prop_1_rhs(p.q(), I(p, "n"), I(p, "r")); };
  } else {
    d.rhs = [](const ParamPoint& p) { return schlosser::cr_prop_2_rhs(p.q(), I(p, "n"), I(p, "r")); };
  }
  return d;
}

IdentityDescriptor lebesgue_finite() {
  IdentityDescriptor d;
  d.id = "lebesgue_finite";
  d.title = "Finite form of Lebesgue's and Jacobi's identities";
  d.free_symbols = {"a", "q"};
  d.indices = {{"n", {0, 6}}};
  d.max_ranges = {{"n", {0, 16}}};
  d.lhs = [](const ParamPoint& p) { return forms::lebesgue_finite_lhs(S(p, "a"), p.q(), I(p, "n")); };
  d.rhs = [](const ParamPoint& p) { return forms::lebesgue_finite_rhs(S(p, "a"), p.q(), I(p, "n")); };
  return d;
}

IdentityDescriptor jacobi_finite() {
  IdentityDescriptor d;
  d.id = "jacobi_finite";
  d.title = "Shifted finite form of the Jacobi triple product";
  d.free_symbols = {"z", "q"};
  d.indices = {{"m", {0, 4}}, {"n", {0, 6}}};
  d.max_ranges = {{"m", {0, 12}}, {"n", {0, 16}}};
  d.lhs = [](const ParamPoint& p) { return forms::jacobi_finite_lhs(S(p, "z"), p.q(), I(p, "m"), I(p, "n")); };
  d.rhs = [](const ParamPoint& p) { return forms::jacobi_finite_rhs(p.q(), I(p, "m"), I(p, "n")); };
  return d;
}

IdentityDescriptor jacobi_prefactor_relation() {
  IdentityDescriptor d;
  d.id = "jacobi_prefactor_relation";
  d.title = "Term relation between the finite Lebesgue and shifted Jacobi forms";
  d.free_symbols = {"z", "q"};
  d.indices = {{"m", {0, 4}}, {"n", {0, 6}}, {"k", {-4, 6}}};
  d.max_ranges = {{"m", {0, 12}}, {"n", {0, 16}}, {"k", {-12, 16}}};
  d.admissible = [](const ParamPoint& p) { return -I(p, "m") <= I(p, "k") && I(p, "k") <= I(p, "n"); };
  d.lhs = [](const ParamPoint& p) {
    return forms::jacobi_prefactor_lhs(S(p, "z"), p.q(), I(p, "m"), I(p, "n"), I(p, "k"));
  };
  d.rhs = [](const ParamPoint& p) {
    return forms::jacobi_prefactor_rhs(S(p, "z"), p.q(), I(p, "m"), I(p, "n"), I(p, "k"));
  };
  return d;
}

IdentityDescriptor quintuple_finite() {
  IdentityDescriptor d;
  d.id = "quintuple_finite";
  d.title = "Finite form of Watson's quintuple product identity";
  d.free_symbols = {"z", "q"};
  d.indices = {{"n", {0, 6}}};
  d.max_ranges = {{"n", {0, 16}}};
  d.lhs = [](const ParamPoint& p) { return forms::quintuple_finite_lhs(S(p, "z"), p.q(), I(p, "n")); };
  d.rhs = [](const ParamPoint&) { return QRational(1); };
  return d;
}

IdentityDescriptor quintuple_finite_mn() {
  IdentityDescriptor d;
  d.id = "quintuple_finite_mn";
  d.title = "Two-index finite quintuple product form";
  d.free_symbols = {"z", "q"};
  d.indices = {{"m", {0, 4}}, {"n", {0, 6}}};
  d.max_ranges = {{"m", {0, 12}}, {"n", {0, 16}}};
  d.lhs = [](const ParamPoint& p) {
    return forms::quintuple_finite_mn_lhs(S(p, "z"), p.q(), I(p, "m"), I(p, "n"));
  };
  d.rhs = [](const ParamPoint&) { return QRational(1); };
  return d;
}

IdentityDescriptor quintuple_ccg() {
  IdentityDescriptor d;
  d.id = "quintuple_ccg";
  d.title = "Finite quintuple product form with (1 + z q^k) weights";
  d.free_symbols = {"z", "q"};
  d.indices = {{"n", {0, 6}}};
  d.max_ranges = {{"n", {0, 16}}};
  d.lhs = [](const ParamPoint& p) { return forms::quintuple_ccg_lhs(S(p, "z"), p.q(), I(p, "n")); };
  d.rhs = [](const ParamPoint&) { return QRational(1); };
  return d;
}

IdentityDescriptor andrews_jain() {
  IdentityDescriptor d;
  d.id = "andrews_jain";
  d.title = "Andrews-Jain terminating sum";
  d.free_symbols = {"a", "b", "q"};
  d.indices = {{"n", {0, 6}}};
  d.max_ranges = {{"n", {0, 16}}};
  d.lhs = [](const ParamPoint& p) { return forms::andrews_jain_lhs(S(p, "a"), S(p, "b"), p.q(), I(p, "n")); };
  d.rhs = [](const ParamPoint& p) { return forms::andrews_jain_rhs(S(p, "a"), S(p, "b"), p.q(), I(p, "n")); };
  return d;
}

IdentityDescriptor lebesgue_finite_2() {
  IdentityDescriptor d = andrews_jain();
  d.id = "lebesgue_finite_2";
  d.title = "Second finite Lebesgue form (Andrews-Jain with b = 0)";
  d.free_symbols = {"a", "q"};
  d.derived_symbols = {"b"};
  d.derive = [](ParamPoint& p) { p.set("b", QRational(0)); };
  return d;
}

std::string status_name(VerifyStatus status) {
  switch (status) {
    case VerifyStatus::kPass:
      return "PASS";
    case VerifyStatus::kCounterexample:
      return "FAIL";
    case VerifyStatus::kRetryExhausted:
      return "RETRY_EXHAUSTED";
  }
  return "UNKNOWN";
}

IndexRange resolve_range(const IdentityDescriptor& d, const std::string& name, IndexRange fallback,
                         const IndexRanges& overrides) {
  const auto over = overrides.find(name);
  if (over == overrides.end()) return fallback;
  IndexRange range = over->second;
  const auto cap = d.max_ranges.find(name);
  if (cap != d.max_ranges.end()) {
    if (range.lo < cap->second.lo || range.hi > cap->second.hi) {
      throw ConfigError(d.id + ": range for " + name + " exceeds [" + std::to_string(cap->second.lo) + ", " +
                        std::to_string(cap->second.hi) + "]");
    }
  }
  if (range.lo > range.hi) throw ConfigError(d.id + ": empty range for " + name);
  return range;
}

struct TrialOutcome {
  enum class Kind { kPass, kFail, kExhausted } kind = Kind::kPass;
  long resamples = 0;
  Indices indices;
  ParamPoint point;
  QRational lhs;
  QRational rhs;
};

bool guards_pass(const IdentityDescriptor& d, const ParamPoint& point) {
  if (!d.pole_guards) return true;
  for (const auto& factor : d.pole_guards(point)) {
    if (factor.is_zero()) return false;
  }
  return true;
}

TrialOutcome run_trial(const IdentityDescriptor& d, const VerifyOptions& options, const Indices& indices,
                       long trial, bool serial) {
  Sampler sampler(options.seed, d.id, static_cast<std::uint64_t>(trial), options.height);
  TrialOutcome outcome;
  outcome.indices = indices;
  const Evaluator& lhs = (serial && d.lhs_serial) ? d.lhs_serial : d.lhs;
  for (long attempt = 0; attempt < options.retry_cap; ++attempt) {
    ParamPoint point = sample_point(d, sampler, indices);
    try {
      if (d.derive) d.derive(point);
      if (!guards_pass(d, point)) {
        ++outcome.resamples;
        continue;
      }
      QRational left = lhs(point);
      QRational right = d.rhs(point);
      if (options.mutate_rhs) right *= point.q();
      outcome.kind = (left == right) ? TrialOutcome::Kind::kPass : TrialOutcome::Kind::kFail;
      outcome.point = std::move(point);
      outcome.lhs = std::move(left);
      outcome.rhs = std::move(right);
      return outcome;
    } catch (const PoleError&) {
      ++outcome.resamples;
    } catch (const DegenerateQ&) {
      ++outcome.resamples;
    }
  }
  outcome.kind = TrialOutcome::Kind::kExhausted;
  return outcome;
}

VerificationReport assemble(const IdentityDescriptor& d, const VerifyOptions& options,
                            std::vector<TrialOutcome>& outcomes, double elapsed_ms) {
  VerificationReport report;
  report.id = d.id;
  report.seed = options.seed;
  report.elapsed_ms = elapsed_ms;
  for (long t = 0; t < static_cast<long>(outcomes.size()); ++t) {
    auto& outcome = outcomes[static_cast<std::size_t>(t)];
    ++report.attempted;
    report.resamples += outcome.resamples;
    for (const auto& [name, value] : outcome.indices) {
      auto [it, inserted] = report.max_indices.try_emplace(name, value);
      if (!inserted && value > it->second) it->second = value;
    }
    switch (outcome.kind) {
      case TrialOutcome::Kind::kPass:
        ++report.succeeded;
        break;
      case TrialOutcome::Kind::kFail:
        ++report.failed;
        if (!report.first_failure) {
          report.first_failure = Counterexample{t, std::move(outcome.point), outcome.lhs, outcome.rhs};
        }
        break;
      case TrialOutcome::Kind::kExhausted:
        ++report.rejected;
        break;
    }
  }
  if (report.failed > 0) {
    report.status = VerifyStatus::kCounterexample;
  } else if (report.rejected > 0) {
    report.status = VerifyStatus::kRetryExhausted;
  }
  return report;
}

std::vector<Indices> trial_indices(const IdentityDescriptor& d, const VerifyOptions& options) {
  if (options.trials < 1) throw ConfigError("trials must be at least 1");
  const auto grid = index_grid(d, options.ranges);
  if (grid.empty()) throw ConfigError(d.id + ": no admissible index combination");
  Sampler offset_source(options.seed, d.id + "/grid", 0, options.height);
  const auto offset = static_cast<std::size_t>(offset_source.next_u64() % grid.size());
  std::vector<Indices> chosen;
  chosen.reserve(static_cast<std::size_t>(options.trials));
  for (long t = 0; t < options.trials; ++t) {
    chosen.push_back(grid[(offset + static_cast<std::size_t>(t)) % grid.size()]);
  }
  return chosen;
}

std::string progress_line(const IdentityDescriptor& d, long trial, long trials, const TrialOutcome& outcome) {
  std::string line = d.id + ": trial " + std::to_string(trial + 1) + "/" + std::to_string(trials);
  for (const auto& [name, value] : outcome.indices) line += " " + name + "=" + std::to_string(value);
  return line;
}

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_string(VerifyStatus status) { return status_name(status); }

std::vector<IdentityDescriptor> build_identities(const RegistryOptions& options) {
  using schlosser::CrSign;
  std::vector<IdentityDescriptor> all;
  all.push_back(jackson_8phi7());
  all.push_back(jackson_6phi5());
  all.push_back(watson_transform());
  all.push_back(vwp_transform());
  all.push_back(bailey_10phi9());
  all.push_back(singh_quadratic(options.singh_terminate_c));
  all.push_back(schlosser_cr());
  all.push_back(schlosser_lemma_n1());
  all.push_back(sch_8phi7_special());
  all.push_back(cr_prop("cr_prop_1", "First allied C_r identity", CrSign::kPlus));
  all.push_back(cr_prop("cr_prop_2", "Second allied C_r identity (parity-split right side)",
                        options.cr_prop_2_as_printed ? CrSign::kAlternatingAsPrinted : CrSign::kAlternating));
  all.push_back(lebesgue_finite());
  all.push_back(jacobi_finite());
  all.push_back(jacobi_prefactor_relation());
  all.push_back(quintuple_finite());
  all.push_back(quintuple_finite_mn());
  all.push_back(quintuple_ccg());
  all.push_back(andrews_jain());
  return all;
}

const std::vector<IdentityDescriptor>& list_identities() {
  static const std::vector<IdentityDescriptor> registry = build_identities({});
  return registry;
}

IdentityDescriptor find_identity(std::string_view id, const RegistryOptions& options) {
  if (id == "lebesgue_finite_2") return lebesgue_finite_2();
  for (auto& d : build_identities(options)) {
    if (d.id == id) return d;
  }
  throw ConfigError("unknown identity: " + std::string(id));
}

std::pair<QRational, QRational> eval_sides(const IdentityDescriptor& descriptor, ParamPoint point) {
  if (descriptor.derive) descriptor.derive(point);
  if (!guards_pass(descriptor, point)) throw PoleError(descriptor.id + ": pole guard violated");
  return {descriptor.lhs(point), descriptor.rhs(point)};
}

std::pair<QRational, QRational> eval_sides(std::string_view id, const ParamPoint& point) {
  return eval_sides(find_identity(id), point);
}

std::vector<Indices> index_grid(const IdentityDescriptor& d, const IndexRanges& overrides) {
  std::vector<std::pair<std::string, IndexRange>> ranges;
  for (const auto& [name, fallback] : d.indices) ranges.emplace_back(name, resolve_range(d, name, fallback, overrides));

  std::vector<Indices> grid;
  Indices current;
  ParamPoint probe;
  std::function<void(std::size_t)> fill = [&](std::size_t level) {
    if (level == ranges.size()) {
      probe.indices = current;
      if (!d.admissible || d.admissible(probe)) grid.push_back(current);
      return;
    }
    const auto& [name, range] = ranges[level];
    for (long value = range.lo; value <= range.hi; ++value) {
      current[name] = value;
      fill(level + 1);
    }
  };
  fill(0);
  return grid;
}

ParamPoint sample_point(const IdentityDescriptor& d, Sampler& sampler, const Indices& indices) {
  ParamPoint point;
  point.indices = indices;
  for (const auto& name : d.free_symbols) point.set(name, name == "q" ? sampler.q() : sampler.rational());
  if (d.x_vector) {
    const long r = point.index("r");
    for (long i = 1; i <= r; ++i) point.set(x_name(i), sampler.rational());
  }
  return point;
}

VerificationReport verify(const IdentityDescriptor& descriptor, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto chosen = trial_indices(descriptor, options);
  const long trials = options.trials;
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  std::exception_ptr failure;
  std::mutex progress_mutex;
  long finished = 0;

#pragma omp parallel for schedule(dynamic, 1)
  for (long t = 0; t < trials; ++t) {
    try {
      outcomes[static_cast<std::size_t>(t)] =
          run_trial(descriptor, options, chosen[static_cast<std::size_t>(t)], t, false);
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress(progress_line(descriptor, finished++, trials, outcomes[static_cast<std::size_t>(t)]));
      }
    } catch (...) {
      std::lock_guard lock(progress_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return assemble(descriptor, options, outcomes, millis_since(start));
}

VerificationReport verify_serial(const IdentityDescriptor& descriptor, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto chosen = trial_indices(descriptor, options);
  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(static_cast<std::size_t>(options.trials));
  for (long t = 0; t < options.trials; ++t) {
    outcomes.push_back(run_trial(descriptor, options, chosen[static_cast<std::size_t>(t)], t, true));
    if (options.progress) options.progress(progress_line(descriptor, t, options.trials, outcomes.back()));
  }
  return assemble(descriptor, options, outcomes, millis_since(start));
}

}  // namespace qhyper
