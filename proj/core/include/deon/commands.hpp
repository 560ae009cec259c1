#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "deon/report.hpp"

namespace deon {

// Shared engine/loader options for the command layer. theta and epsilon
// override every survey directive when set; closed_world overrides the
// file's world mode.
struct CmdOptions {
  std::optional<double> theta;
  std::optional<double> epsilon;
  std::optional<bool> closed_world;
  int max_depth = 8;
  bool json = false;
};

// Exit status conventions: 0 success (for check: all plans ethical),
// 1 some plan unethical, 2 no unethical plan but some indeterminate,
// 3 parse/validation/usage failure.
int cmd_validate(const std::string& path, const CmdOptions& opts, std::ostream& out,
                 std::ostream& err);

// Prints canonical test propositions. With `all`, emits
// "<plan>\t<principle>\t<formula>" lines for every plan; otherwise `plan`
// selects the plan, `principle` one of generalization/utility/autonomy
// (empty = all three, labeled) and `vs` restricts autonomy to one
// counterparty.
int cmd_gen(const std::string& path, const CmdOptions& opts, const std::string& plan,
            const std::string& principle, const std::string& vs, bool all, std::ostream& out,
            std::ostream& err);

int cmd_check(const std::string& path, const CmdOptions& opts, std::ostream& out,
              std::ostream& err);

int cmd_explain(const std::string& path, const CmdOptions& opts, const std::string& plan,
                std::ostream& out, std::ostream& err);

}  // namespace deon
