// deon: screen declared action plans against deontic test propositions
// evaluated on an empirical fact base.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "deon/commands.hpp"

namespace {

struct GlobalFlags {
  double theta = 0.5;
  double epsilon = 0.05;
  int max_depth = 8;
  bool open_world = false;
  bool closed_world = false;
  std::string format = "text";
};

void add_engine_flags(CLI::App* cmd, GlobalFlags& flags) {
  cmd->add_option("--theta", flags.theta, "survey acceptance threshold (default 0.5)");
  cmd->add_option("--epsilon", flags.epsilon, "survey deadband half-width (default 0.05)");
  cmd->add_option("--max-depth", flags.max_depth, "recursion depth budget (default 8)");
  auto* open = cmd->add_flag("--open-world", flags.open_world,
                             "treat unlisted facts as unknown (overrides the file)");
  auto* closed = cmd->add_flag("--closed-world", flags.closed_world,
                               "apply closed-world defaults (overrides the file)");
  open->excludes(closed);
  closed->excludes(open);
}

deon::CmdOptions to_options(const CLI::App* cmd, const GlobalFlags& flags) {
  deon::CmdOptions opts;
  if (cmd->count("--theta")) opts.theta = flags.theta;
  if (cmd->count("--epsilon")) opts.epsilon = flags.epsilon;
  if (flags.open_world) opts.closed_world = false;
  if (flags.closed_world) opts.closed_world = true;
  opts.max_depth = flags.max_depth;
  opts.json = flags.format == "json";
  return opts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deon: derive and evaluate deontic test propositions for action plans"};
  app.require_subcommand(1);

  GlobalFlags flags;
  std::string path, plan, principle, vs;
  bool all = false;

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a scenario file");
  validate->add_option("path", path, "scenario file")->required();
  add_engine_flags(validate, flags);

  CLI::App* gen = app.add_subcommand("gen", "print generated test propositions");
  gen->add_option("path", path, "scenario file")->required();
  gen->add_option("--plan", plan, "plan id");
  gen->add_option("--principle", principle, "generalization, utility or autonomy");
  gen->add_option("--vs", vs, "autonomy counterparty plan id");
  gen->add_flag("--all", all, "every proposition for every plan");
  add_engine_flags(gen, flags);

  CLI::App* check = app.add_subcommand("check", "evaluate all plans and report verdicts");
  check->add_option("path", path, "scenario file")->required();
  check->add_option("--format", flags.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  add_engine_flags(check, flags);

  CLI::App* explain = app.add_subcommand("explain", "print full evaluation traces for one plan");
  explain->add_option("path", path, "scenario file")->required();
  explain->add_option("--plan", plan, "plan id")->required();
  add_engine_flags(explain, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  if (validate->parsed())
    return deon::cmd_validate(path, to_options(validate, flags), std::cout, std::cerr);
  if (gen->parsed())
    return deon::cmd_gen(path, to_options(gen, flags), plan, principle, vs, all, std::cout,
                         std::cerr);
  if (check->parsed())
    return deon::cmd_check(path, to_options(check, flags), std::cout, std::cerr);
  return deon::cmd_explain(path, to_options(explain, flags), plan, std::cout, std::cerr);
}
