#include "deon/survey.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <stdexcept>

#include "deon/scenario.hpp"

namespace deon {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void row_error(int row, const std::string& msg) {
  throw ValidationError("row " + std::to_string(row) + ": " + msg);
}

bool parse_answer(const std::string& raw, int row) {
  std::string v = lower(trim(raw));
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  row_error(row, "bad answer '" + raw + "'");
}

}  // namespace

std::vector<SurveyRecord> read_survey_csv(std::istream& in) {
  std::vector<SurveyRecord> out;
  std::string line;
  int row = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++row;
    std::string s = trim(line);
    if (s.empty()) continue;
    if (!saw_header) {
      if (lower(s) != "respondent_id,query_key,answer")
        row_error(row, "expected header 'respondent_id,query_key,answer'");
      saw_header = true;
      continue;
    }
    size_t first = s.find(',');
    if (first == std::string::npos) row_error(row, "missing fields");
    SurveyRecord rec;
    rec.respondent = trim(s.substr(0, first));
    std::string rest = s.substr(first + 1);
    std::string key, answer;
    std::string rest_trimmed = trim(rest);
    if (!rest_trimmed.empty() && rest_trimmed.front() == '"') {
      size_t close = rest_trimmed.find('"', 1);
      if (close == std::string::npos) row_error(row, "unterminated quoted key");
      key = rest_trimmed.substr(1, close - 1);
      std::string tail = trim(rest_trimmed.substr(close + 1));
      if (tail.empty() || tail.front() != ',') row_error(row, "missing answer field");
      answer = tail.substr(1);
    } else {
      size_t last = rest.rfind(',');
      if (last == std::string::npos) row_error(row, "missing answer field");
      key = trim(rest.substr(0, last));
      answer = rest.substr(last + 1);
    }
    if (rec.respondent.empty()) row_error(row, "empty respondent id");
    if (key.empty()) row_error(row, "empty query key");
    try {
      (void)parse_fact_key(key);
    } catch (const ParseError& e) {
      row_error(row, std::string(e.what()));
    }
    rec.key = key;
    rec.answer = parse_answer(answer, row);
    out.push_back(std::move(rec));
  }
  if (!saw_header) throw ValidationError("empty survey file");
  return out;
}

std::vector<std::pair<FactKey, Truth3>> aggregate_survey(
    const std::vector<SurveyRecord>& records, double theta, double epsilon) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("theta must lie strictly between 0 and 1");
  double limit = std::min(theta, 1.0 - theta);
  if (!(epsilon >= 0.0 && epsilon < limit))
    throw std::invalid_argument("epsilon must satisfy 0 <= epsilon < min(theta, 1-theta)");

  struct Tally {
    long trues = 0;
    long total = 0;
  };
  std::map<std::string, Tally> tallies;  // normalized key text -> counts
  std::map<std::string, FactKey> keys;
  for (const SurveyRecord& rec : records) {
    FactKey key = parse_fact_key(rec.key);
    std::string text = to_text(key);
    Tally& t = tallies[text];
    t.total += 1;
    if (rec.answer) t.trues += 1;
    keys.emplace(text, std::move(key));
  }

  // A whisker of slack keeps decimal thresholds stable under binary rounding.
  constexpr double kSlack = 1e-9;
  std::vector<std::pair<FactKey, Truth3>> out;
  out.reserve(tallies.size());
  for (const auto& [text, tally] : tallies) {
    double f = static_cast<double>(tally.trues) / static_cast<double>(tally.total);
    Truth3 v = Truth3::Unknown;
    if (f >= theta + epsilon - kSlack) v = Truth3::True;
    else if (f <= theta - epsilon + kSlack) v = Truth3::False;
    out.emplace_back(keys.at(text), v);
  }
  return out;
}

}  // namespace deon
