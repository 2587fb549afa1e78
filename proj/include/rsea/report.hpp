#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "rsea/scenario.hpp"

namespace rsea {

struct SummaryReport {
    std::string scenario;
    std::uint64_t seed = 0;
    ZoneReport zones;
    ZoneMae zone_mae;
    std::optional<double> sinr_drop_db;
    std::size_t records = 0;
    std::size_t estimates = 0;
    std::size_t step_errors = 0;
    // Calibration metadata.
    double noise_sigma2 = 0.0;
    double hidden_node_power = 0.0;
    std::optional<double> target_snr_db;
    int hidden_nodes = 0;
    double cs_range_m = 0.0;
    double effective_radius_m = 0.0;
    double duration_s = 0.0;
    double step_s = 0.0;
};

SummaryReport make_summary(const ScenarioConfig& cfg, const ScenarioRun& run);

/// Table with the zone labels, then a `[values]` block of key=value lines.
void write_summary(std::ostream& os, const SummaryReport& report);
void emit_summary(const SummaryReport& report, const std::filesystem::path& path);

std::string sweep_param_name(SweepParam param);

/// `value,mae_percent,stddev`
void emit_sweep_csv(const SweepResult& result, const std::filesystem::path& path);
void write_sweep_summary(std::ostream& os, const SweepResult& result, const ScenarioConfig& base, std::size_t n_seeds);
void emit_sweep_summary(const SweepResult& result, const ScenarioConfig& base, std::size_t n_seeds,
                        const std::filesystem::path& path);

}  // namespace rsea
