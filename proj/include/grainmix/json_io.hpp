#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "grainmix/model.hpp"
#include "grainmix/reduction.hpp"
#include "grainmix/tdm.hpp"
#include "grainmix/verify.hpp"

// JSON documents. Rationals are "num/den" strings, infinities "inf" and
// "-inf". Every top-level document carries "format": 1. Readers throw
// ParseError naming the JSON pointer of the offending value.

namespace grainmix::json {

using nlohmann::json;

inline constexpr int format_version = 1;

class ParseError : public Error {
public:
    using Error::Error;
};

/// Parses text, turning syntax errors into ParseError with a byte offset.
json parse_text(const std::string& text);

json to_json(const Rational& r);
json to_json(const Extended& e);
json to_json(const GmInstance& gm);
json to_json(const Solution& s);
json to_json(const ProfitReport& r);
json to_json(const std::vector<Violation>& v);
json to_json(const TdmInstance& t);
json to_json(const StdParams& p);
json to_json(const PlanarParams& p);
json to_json(const ReductionArtifacts& a);
json to_json(const CorrespondenceReport& r);
json to_json(const BatchReport& b);
json to_json(const OffpairAudit& a);

GmInstance instance_from_json(const json& j);
Solution solution_from_json(const json& j);
ProfitReport report_from_json(const json& j);
TdmInstance tdm_from_json(const json& j);
ReductionArtifacts artifacts_from_json(const json& j);

}  // namespace grainmix::json
