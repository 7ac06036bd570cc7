// JSON run reports and CSV emission. Serialization is canonical (insertion
// order preserved, no timestamps), so identical runs produce identical bytes.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "addbasis/engine.hpp"
#include "addbasis/montecarlo.hpp"
#include "addbasis/verifier.hpp"

namespace addbasis {

constexpr int kSchemaVersion = 1;

nlohmann::ordered_json config_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::ordered_json& j);

// report without checks; cmd_verify appends a "checks" array
nlohmann::ordered_json run_report(const Construction& st);

std::string sum_rows_csv(const std::vector<SumTrialRow>& rows);
nlohmann::ordered_json sum_summary(const std::vector<SumTrialRow>& rows,
                                   uint64_t seed);

std::string intersection_rows_csv(
    const std::vector<IntersectionTrialRow>& rows);
nlohmann::ordered_json intersection_summary(
    const std::vector<IntersectionTrialRow>& rows, uint64_t seed);

std::string profile_csv(const ProfileResult& res);
nlohmann::ordered_json profile_summary(const ProfileResult& res, uint32_t k,
                                       uint32_t nseeds, uint64_t seed);

void write_file(const std::string& path, const std::string& content);
std::string json_text(const nlohmann::ordered_json& j);

}  // namespace addbasis
