#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "polyuni/engine.hpp"

namespace polyuni {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

/// Pretty-printed JSON with every float written as %.17g. Non-finite values
/// become null.
std::string dump_json(const Json& j);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

/// RFC-4180 quoting, LF line endings, header row first.
std::string to_csv(const CsvTable& t);
std::string csv_quote(const std::string& cell);

Json complex_json(Complex z);
Json complex_list_json(const std::vector<Complex>& v);
Json selection_json(const SubsequenceSelection& s);
Json stage_json(const StageRecord& r);
Json error_json(ErrorCode code, const std::string& message);

CsvTable stages_table(const std::vector<StageRecord>& stages);
CsvTable verification_table(const std::vector<std::string>& names, const std::vector<OrbitEntry>& entries);

}  // namespace polyuni
