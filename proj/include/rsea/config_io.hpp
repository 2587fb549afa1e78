#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsea/scenario.hpp"

namespace rsea {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Builtin name ("behavior1", "behavior2", "oncoming") or path to a key=value file.
///
/// File format: one `key = value` per line, `#` starts a comment. A `base`
/// key selects the builtin to start from (default behavior1); it is applied
/// before every other key regardless of position. Unknown keys are rejected.
ScenarioConfig parse_config(const std::string& name_or_path);
ScenarioConfig parse_config_text(const std::string& text, const std::string& origin = "<text>");

/// Keys accepted by parse_config, sorted.
std::vector<std::string> config_keys();

inline constexpr const char* kCsvHeader = "t,delta_u_true,delta_u_est,sinr_db,distance_jx_rx,cos_theta,mae_inst";

/// Shortest decimal text that parses back to the same double. No locale.
std::string format_number(double v);

void write_csv(std::ostream& os, const std::vector<RunRecord>& records, std::size_t mae_window = 10);
void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path, std::size_t mae_window = 10);

struct CsvRow {
    double t = 0.0;
    double delta_u_true = 0.0;
    std::optional<double> delta_u_est;
    double sinr_db = 0.0;
    double distance_jx_rx = 0.0;
    double cos_theta = 0.0;
    std::optional<double> mae_inst;
};

std::vector<CsvRow> read_csv(std::istream& is);
std::vector<CsvRow> read_csv(const std::filesystem::path& path);

}  // namespace rsea
