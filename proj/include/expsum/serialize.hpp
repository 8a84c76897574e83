#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "expsum/pipeline.hpp"

namespace expsum {

/// Provenance block embedded in every file the tools emit.
struct RunManifest {
    std::string command;
    std::string target;
    int M = 0;
    int n_inf = 0;
    std::string A;  // decimal strings, full fidelity
    std::string B;
    int digits = 0;
    std::string input_path;
    std::string output_path;
    std::string timestamp;  // ISO 8601, UTC
    std::string version;
};

RunManifest make_manifest(const std::string& command, const std::string& target,
                          const ApproxConfig& cfg, const std::string& input_path,
                          const std::string& output_path);

/// Coefficient interchange document:
/// {"M", "digits", "config": {"M","n_inf","A","B"}, "terms": [...], "manifest": {...}}
/// with every scalar a full-precision decimal string.
nlohmann::json expsum_to_json(const ExpSum& s, const ApproxConfig& cfg, const RunManifest& manifest);

struct LoadedExpSum {
    ExpSum sum;
    ApproxConfig config;
};

/// Parse a coefficient document. Establish a PrecisionContext of at least
/// the stored digits before calling so the decimal strings round-trip.
LoadedExpSum expsum_from_json(const nlohmann::json& j);

void save_expsum(const std::string& path, const ExpSum& s, const ApproxConfig& cfg,
                 const RunManifest& manifest);
LoadedExpSum load_expsum(const std::string& path);

/// "# manifest: {...json...}" header line for CSV outputs.
std::string manifest_csv_header(const RunManifest& manifest);

}  // namespace expsum
