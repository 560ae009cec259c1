#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "deon/facts.hpp"

namespace deon {

struct SurveyRecord {
  std::string respondent;
  std::string key;  // an undermines/compatible/copossible key, canonical grammar
  bool answer = false;
};

// Reads CSV with header "respondent_id,query_key,answer". Keys may contain
// commas; the reader splits at the first and last comma of each row, or the
// key field may be double-quoted. Answers accept 0/1/true/false/yes/no,
// case-insensitive. Any malformed row aborts with its row number.
std::vector<SurveyRecord> read_survey_csv(std::istream& in);

// Per key: with f the fraction of true answers, f >= theta+epsilon gives
// True, f <= theta-epsilon gives False, otherwise Unknown. Requires
// 0 < theta < 1 and 0 <= epsilon < min(theta, 1-theta).
// Results are ordered by key text.
std::vector<std::pair<FactKey, Truth3>> aggregate_survey(
    const std::vector<SurveyRecord>& records, double theta, double epsilon);

}  // namespace deon
