#pragma once

#include <string>

#include "json.hpp"

#include "fockpsi/criteria.hpp"
#include "fockpsi/kernel.hpp"
#include "fockpsi/moments.hpp"
#include "fockpsi/operators.hpp"
#include "fockpsi/verify.hpp"

namespace fockpsi {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// Header "r,c_r,err_r", one row per moment, numbers in %.17g.
std::string moments_to_csv(const MomentTable& m);
/// Reads the CSV written by moments_to_csv. Rows must list r = 0, 1, 2, ...
/// in order. Throws InputError on malformed content.
MomentTable moments_from_csv(const std::string& text, const std::string& weight_name);

Json to_json(const MomentTable& m);
Json to_json(const SeriesValue& s);
Json to_json(const TruncatedOperator& t);
Json to_json(const Verdict& v);
Json to_json(const ResidualReport& r);
Json to_json(const CrossCheckReport& r);
Json complex_to_json(Complex z);  // {"re": .., "im": ..}

/// Compact single-line dump with stable key order.
std::string dump_line(const Json& j);

}  // namespace fockpsi
