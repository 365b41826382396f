#pragma once

#include "mall/cut_elim.hpp"
#include "mall/iso.hpp"
#include "mall/net.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace mall {

using Json = nlohmann::json;

// All readers throw FormatError on malformed input (ParseError for bad formula text).

Json proof_to_json(const Proof& p);
Proof proof_from_json(const Json& j);

Json addr_to_json(const Addr& a);
Addr addr_from_json(const Json& j);
Json net_to_json(const LinkingSet& ls);
LinkingSet net_from_json(const Json& j);

Json derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const Json& j);

Json mass_to_json(const Mass& m);
Json reduction_record_to_json(const ReductionRecord& r);
// One JSON object per line.
std::string reduction_log_jsonl(const std::vector<ReductionRecord>& log);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mall
