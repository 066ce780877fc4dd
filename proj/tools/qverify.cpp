#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "qhyper/errors.hpp"
#include "qhyper/runner.hpp"

namespace {

struct Flags {
  std::vector<std::string> ids;
  long trials = 0;
  std::uint64_t seed = 0;
  long n_max = 0, m_max = 0, r_max = 0;
  long order = qhyper::RunConfig{}.order;
  long height = qhyper::kDefaultHeight;
  std::string format = "text";
  std::string out;
  bool singh_terminate_c = false;
  bool cr2_as_printed = false;
};

void add_common(CLI::App* cmd, Flags& f, std::map<std::string, CLI::Option*>& opts) {
  opts["trials"] = cmd->add_option("--trials", f.trials, "Random points per item (env QVERIFY_TRIALS)");
  opts["seed"] = cmd->add_option("--seed", f.seed, "Master seed (env QVERIFY_SEED)");
  opts["n-max"] = cmd->add_option("--n-max", f.n_max, "Upper bound for n");
  opts["m-max"] = cmd->add_option("--m-max", f.m_max, "Upper bound for m");
  opts["r-max"] = cmd->add_option("--r-max", f.r_max, "Upper bound for r");
  cmd->add_option("--order", f.order, "Series truncation order")->capture_default_str();
  cmd->add_option("--height", f.height, "Bound on sampled numerators and denominators")->capture_default_str();
  cmd->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  cmd->add_option("--out", f.out, "Write the report to this file");
  cmd->add_flag("--singh-terminate-c", f.singh_terminate_c, "Terminate Singh's transformation through c");
  cmd->add_flag("--cr2-as-printed", f.cr2_as_printed, "Use the printed sign in the second allied C_r identity");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of q-series identities, proof certificates and product expansions"};
  app.require_subcommand(1);
  Flags flags;
  std::map<std::string, std::map<std::string, CLI::Option*>> opts;

  auto* verify = app.add_subcommand("verify", "Check terminating identities at random rational points");
  verify->add_option("--id", flags.ids, "Identity ids or 'all'");
  add_common(verify, flags, opts["verify"]);
  auto* certify = app.add_subcommand("certify", "Replay recurrence and telescoping certificates");
  certify->add_option("--proof", flags.ids, "Proof ids or 'all'");
  add_common(certify, flags, opts["certify"]);
  auto* series = app.add_subcommand("series", "Check infinite identities as truncated power series");
  series->add_option("--id", flags.ids, "Series ids or 'all'");
  add_common(series, flags, opts["series"]);
  auto* all = app.add_subcommand("all", "Run every check");
  add_common(all, flags, opts["all"]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    qhyper::RunConfig config;
    const std::string name = app.get_subcommands().front()->get_name();
    config.command = qhyper::parse_command(name);
    auto& given = opts[name];
    config.ids = flags.ids;
    if (given["trials"]->count()) config.trials = flags.trials;
    if (given["seed"]->count()) config.seed = flags.seed;
    if (given["n-max"]->count()) config.n_max = flags.n_max;
    if (given["m-max"]->count()) config.m_max = flags.m_max;
    if (given["r-max"]->count()) config.r_max = flags.r_max;
    config.order = flags.order;
    config.height = flags.height;
    config.format = flags.format == "json" ? qhyper::ReportFormat::kJson : qhyper::ReportFormat::kText;
    config.out = flags.out;
    config.registry.singh_terminate_c = flags.singh_terminate_c;
    config.registry.cr_prop_2_as_printed = flags.cr2_as_printed;
    qhyper::apply_environment(config);

    const auto result = qhyper::run(config, &std::cerr);
    const std::string text = qhyper::render(result, config.format);
    if (config.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(config.out);
      if (!file) throw qhyper::ConfigError("cannot open " + config.out);
      file << text;
    }
    return result.exit_code;
  } catch (const qhyper::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
}
