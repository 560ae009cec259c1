#pragma once

#include <string>
#include <vector>

#include "deon/evaluator.hpp"

namespace deon {

inline constexpr int kReportFormatVersion = 1;

// One choice point: several plans of one agent sharing the same reasons.
struct Choice {
  std::string agent;
  std::string conditions;  // canonical conjunction text of the first plan
  std::vector<std::string> survive;
  std::vector<std::string> rejected;
};

struct Report {
  int format_version = kReportFormatVersion;
  std::string scenario;
  bool closed_world = true;
  double theta = 0.5;
  double epsilon = 0.05;
  int max_depth = 8;
  std::vector<Verdict> verdicts;          // plan declaration order
  std::vector<std::string> survivors;     // ids of plans judged ethical
  std::vector<Choice> choices;
};

Report build_report(const Scenario& s, const EngineParams& params, double theta, double epsilon);

std::string to_text(const Report& r);
std::string to_json(const Report& r);  // versioned, deterministic key order

// 0: all plans ethical; 1: some plan unethical; 2: no unethical plan but
// some indeterminate.
int exit_code(const Report& r);

}  // namespace deon
