#include "qhyper/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "qhyper/certs.hpp"
#include "qhyper/errors.hpp"
#include "qhyper/psers.hpp"

namespace qhyper {

namespace {

using Json = nlohmann::ordered_json;

constexpr long kDefaultTrials = 20;
constexpr long kDefaultSeriesTrials = 5;
constexpr std::uint64_t kDefaultSeed = 42;

bool selects_all(const std::vector<std::string>& ids) { return ids.empty() || (ids.size() == 1 && ids[0] == "all"); }

Json point_json(const ParamPoint& point) {
  Json symbols = Json::object();
  for (const auto& [name, value] : point.symbols) symbols[name] = value.str();
  Json indices = Json::object();
  for (const auto& [name, value] : point.indices) indices[name] = value;
  return Json{{"symbols", symbols}, {"indices", indices}};
}

Json index_map_json(const std::map<std::string, long, std::less<>>& values) {
  Json out = Json::object();
  for (const auto& [name, value] : values) out[name] = value;
  return out;
}

Json item_json(const char* kind, const std::string& id, VerifyStatus status, long attempted, long succeeded,
               long failed, long rejected, long resamples) {
  return Json{{"kind", kind},           {"id", id},         {"status", to_string(status)},
              {"trials", attempted},    {"succeeded", succeeded}, {"failed", failed},
              {"rejected", rejected},   {"resamples", resamples}};
}

Json report_json(const VerificationReport& r) {
  Json item = item_json("identity", r.id, r.status, r.attempted, r.succeeded, r.failed, r.rejected, r.resamples);
  item["max_indices"] = index_map_json(r.max_indices);
  if (r.first_failure) {
    const auto& f = *r.first_failure;
    item["first_failure"] = Json{{"trial", f.trial}, {"point", point_json(f.point)}, {"lhs", f.lhs.str()}, {"rhs", f.rhs.str()}};
  } else {
    item["first_failure"] = nullptr;
  }
  item["elapsed_ms"] = r.elapsed_ms;
  return item;
}

Json report_json(const ProofReport& r) {
  Json item = item_json("proof", r.id, r.status, r.attempted, r.succeeded, r.failed, r.rejected, r.resamples);
  item["checks"] = r.checks;
  item["max_indices"] = index_map_json(r.max_indices);
  if (r.first_failure) {
    const auto& f = *r.first_failure;
    item["first_failure"] = Json{{"trial", f.trial}, {"point", point_json(f.point)}, {"check", f.check}};
  } else {
    item["first_failure"] = nullptr;
  }
  item["elapsed_ms"] = r.elapsed_ms;
  return item;
}

Json report_json(const SeriesReport& r) {
  Json item = item_json("series", r.id, r.status, r.attempted, r.succeeded, r.failed, r.rejected, r.resamples);
  item["order"] = r.order;
  if (r.first_failure) {
    const auto& f = *r.first_failure;
    item["first_failure"] = Json{{"trial", f.trial},
                                 {"point", point_json(f.point)},
                                 {"degree", f.degree},
                                 {"coefficient", f.coefficient.str()}};
  } else {
    item["first_failure"] = nullptr;
  }
  item["elapsed_ms"] = r.elapsed_ms;
  return item;
}

long parse_env_long(const char* name, const char* text) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || text[used] != '\0') throw ConfigError(std::string(name) + " is not an integer: " + text);
  return value;
}

void check_cap(const std::optional<long>& value, const char* name, long lo) {
  if (value && *value < lo) throw ConfigError(std::string(name) + " must be at least " + std::to_string(lo));
}

IndexRanges verify_ranges(const IdentityDescriptor& d, const RunConfig& c) {
  IndexRanges ranges;
  for (const auto& [name, range] : d.indices) {
    std::optional<long> cap;
    if (name == "n") cap = c.n_max;
    if (name == "m") cap = c.m_max;
    if (name == "r") cap = c.r_max;
    if (name == "k") {
      // k is coupled to -m <= k <= n
      IndexRange widened = range;
      if (c.n_max) widened.hi = *c.n_max;
      if (c.m_max) widened.lo = -*c.m_max;
      if (c.n_max || c.m_max) ranges[name] = widened;
      continue;
    }
    if (cap) ranges[name] = IndexRange{range.lo, *cap};
  }
  return ranges;
}

struct Plan {
  std::vector<IdentityDescriptor> identities;
  std::vector<std::string> proofs;
  std::vector<std::string> series;
};

template <class Known>
std::vector<std::string> resolve(const std::vector<std::string>& ids, const Known& known, const char* what) {
  if (selects_all(ids)) return {known.begin(), known.end()};
  for (const auto& id : ids) {
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw ConfigError(std::string("unknown ") + what + ": " + id);
    }
  }
  return ids;
}

Plan make_plan(const RunConfig& c) {
  Plan plan;
  const bool all = c.command == Command::kAll;
  if (all || c.command == Command::kVerify) {
    if (all || selects_all(c.ids)) {
      plan.identities = build_identities(c.registry);
    } else {
      for (const auto& id : c.ids) plan.identities.push_back(find_identity(id, c.registry));
    }
  }
  if (all || c.command == Command::kCertify) plan.proofs = resolve(all ? std::vector<std::string>{} : c.ids, proof_ids(), "proof");
  if (all || c.command == Command::kSeries) {
    plan.series = resolve(all ? std::vector<std::string>{} : c.ids, series_identity_ids(), "series identity");
  }
  return plan;
}

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string failure_text(const Json& item) {
  const Json& f = item["first_failure"];
  std::ostringstream os;
  os << "    trial " << f["trial"].get<long>() << ":";
  for (const auto& [name, value] : f["point"]["indices"].items()) os << " " << name << "=" << value.get<long>();
  for (const auto& [name, value] : f["point"]["symbols"].items()) os << " " << name << "=" << value.get<std::string>();
  os << "\n";
  if (f.contains("lhs")) os << "    lhs = " << f["lhs"].get<std::string>() << "\n    rhs = " << f["rhs"].get<std::string>() << "\n";
  if (f.contains("check")) os << "    failed check: " << f["check"].get<std::string>() << "\n";
  if (f.contains("degree")) {
    os << "    residual coefficient of q^" << f["degree"].get<long>() << " = " << f["coefficient"].get<std::string>() << "\n";
  }
  return os.str();
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "verify") return Command::kVerify;
  if (name == "certify") return Command::kCertify;
  if (name == "series") return Command::kSeries;
  if (name == "all") return Command::kAll;
  throw ConfigError("unknown command: " + std::string(name));
}

std::string to_string(Command command) {
  switch (command) {
    case Command::kVerify:
      return "verify";
    case Command::kCertify:
      return "certify";
    case Command::kSeries:
      return "series";
    case Command::kAll:
      return "all";
  }
  return "all";
}

void apply_environment(RunConfig& config) {
  if (!config.seed) {
    if (const char* text = std::getenv("QVERIFY_SEED")) {
      const long value = parse_env_long("QVERIFY_SEED", text);
      if (value < 0) throw ConfigError("QVERIFY_SEED must be nonnegative");
      config.seed = static_cast<std::uint64_t>(value);
    }
  }
  if (!config.trials) {
    if (const char* text = std::getenv("QVERIFY_TRIALS")) config.trials = parse_env_long("QVERIFY_TRIALS", text);
  }
}

RunResult run(const RunConfig& config, std::ostream* progress) {
  const auto start = std::chrono::steady_clock::now();
  check_cap(config.trials, "trials", 1);
  check_cap(config.n_max, "n-max", 0);
  check_cap(config.m_max, "m-max", 0);
  check_cap(config.r_max, "r-max", 1);
  if (config.order < 0) throw ConfigError("order must be nonnegative");
  if (config.height < 2) throw ConfigError("height must be at least 2");
  const std::uint64_t seed = config.seed.value_or(kDefaultSeed);
  const Plan plan = make_plan(config);

  // Resolve every range before the first check runs.
  std::vector<IndexRanges> ranges;
  for (const auto& d : plan.identities) {
    ranges.push_back(verify_ranges(d, config));
    if (index_grid(d, ranges.back()).empty()) throw ConfigError(d.id + ": no admissible index combination");
  }
  CertifyOptions cert_options;
  cert_options.trials = config.trials.value_or(kDefaultTrials);
  cert_options.seed = seed;
  cert_options.height = config.height;
  if (config.n_max) {
    cert_options.n_max = *config.n_max;
    cert_options.replay_n_max = *config.n_max;
  }
  if (!plan.proofs.empty() && cert_options.replay_n_max > 8) throw ConfigError("certify n-max is capped at 8");
  if (config.r_max) {
    if (!plan.proofs.empty() && *config.r_max > 3) throw ConfigError("certify r-max is capped at 3");
    cert_options.r_max = *config.r_max;
  }
  SeriesOptions series_options;
  series_options.trials = config.trials.value_or(kDefaultSeriesTrials);
  series_options.seed = seed;
  series_options.order = config.order;
  series_options.height = config.height;

  Json items = Json::array();
  for (std::size_t i = 0; i < plan.identities.size(); ++i) {
    const auto& d = plan.identities[i];
    VerifyOptions options;
    options.trials = config.trials.value_or(kDefaultTrials);
    options.seed = seed;
    options.ranges = ranges[i];
    options.height = config.height;
    if (progress && d.id == "schlosser_cr") {
      options.progress = [progress](const std::string& line) { *progress << line << '\n' << std::flush; };
    }
    items.push_back(report_json(verify(d, options)));
  }
  for (const auto& id : plan.proofs) items.push_back(report_json(certify(id, cert_options)));
  for (const auto& id : plan.series) items.push_back(report_json(check_series(id, series_options)));

  long passed = 0, failed = 0, exhausted = 0;
  for (const auto& item : items) {
    const auto status = item["status"].get<std::string>();
    if (status == "PASS") ++passed;
    if (status == "FAIL") ++failed;
    if (status == "RETRY_EXHAUSTED") ++exhausted;
  }
  const bool ok = failed == 0 && exhausted == 0;

  Json echo{{"command", to_string(config.command)}};
  echo["ids"] = selects_all(config.ids) || config.command == Command::kAll ? Json("all") : Json(config.ids);
  echo["trials"] = config.trials ? Json(*config.trials) : Json(nullptr);
  echo["seed"] = seed;
  echo["n_max"] = config.n_max ? Json(*config.n_max) : Json(nullptr);
  echo["m_max"] = config.m_max ? Json(*config.m_max) : Json(nullptr);
  echo["r_max"] = config.r_max ? Json(*config.r_max) : Json(nullptr);
  echo["order"] = config.order;
  echo["height"] = config.height;
  echo["singh_terminate_c"] = config.registry.singh_terminate_c;
  echo["cr_prop_2_as_printed"] = config.registry.cr_prop_2_as_printed;

  RunResult result;
  result.exit_code = ok ? 0 : 1;
  result.report["config"] = echo;
  result.report["items"] = items;
  result.report["summary"] = Json{{"items", static_cast<long>(items.size())},
                                  {"passed", passed},
                                  {"failed", failed},
                                  {"retry_exhausted", exhausted},
                                  {"status", ok ? "PASS" : "FAIL"},
                                  {"elapsed_ms", millis_since(start)}};
  return result;
}

std::string render(const RunResult& result, ReportFormat format) {
  if (format == ReportFormat::kJson) return result.report.dump(2) + "\n";
  std::ostringstream os;
  const Json& cfg = result.report["config"];
  os << "command " << cfg["command"].get<std::string>() << ", seed " << cfg["seed"].get<std::uint64_t>() << "\n";
  for (const auto& item : result.report["items"]) {
    os << item["status"].get<std::string>() << "  " << item["kind"].get<std::string>() << " "
       << item["id"].get<std::string>() << "  " << item["succeeded"].get<long>() << "/" << item["trials"].get<long>();
    if (item["rejected"].get<long>() > 0) os << ", " << item["rejected"].get<long>() << " exhausted";
    if (item["resamples"].get<long>() > 0) os << ", " << item["resamples"].get<long>() << " resamples";
    os << "  (" << static_cast<long>(item["elapsed_ms"].get<double>()) << " ms)\n";
    if (!item["first_failure"].is_null()) os << failure_text(item);
  }
  const Json& s = result.report["summary"];
  os << s["status"].get<std::string>() << ": " << s["passed"].get<long>() << "/" << s["items"].get<long>()
     << " items passed";
  if (s["failed"].get<long>() > 0) os << ", " << s["failed"].get<long>() << " failed";
  if (s["retry_exhausted"].get<long>() > 0) os << ", " << s["retry_exhausted"].get<long>() << " retry-exhausted";
  os << "\n";
  return os.str();
}

Json without_timings(Json report) {
  for (auto& item : report["items"]) item.erase("elapsed_ms");
  report["summary"].erase("elapsed_ms");
  return report;
}

}  // namespace qhyper
