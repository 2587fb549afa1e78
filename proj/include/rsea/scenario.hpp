#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsea/speed_estimator.hpp"

namespace rsea {

enum class Approach { SideRoad, Crossroads, Oncoming };

/// The jammer starts on a road meeting the main road at `angle_deg` (90 for a
/// perpendicular side road or crossroads), drives toward the main road and
/// turns onto it in the platoon's direction of travel. An oncoming jammer
/// instead drives toward the platoon in the opposite lane and never turns.
struct ApproachGeometry {
    Approach kind = Approach::SideRoad;
    double angle_deg = 90.0;
};

struct ScenarioConfig {
    std::string name = "custom";
    double txrx_speed_kmh = 50.0;
    double txrx_separation_m = 20.0;
    double jx_max_speed_kmh = 60.0;
    double jx_accel_ms2 = 2.1;
    double jx_initial_distance_m = 300.0;
    ApproachGeometry approach;
    double approach_length_m = 204.0; // jammer start to junction, along its road
    double lane_offset_m = 3.5;       // jammer lane beside the platoon
    double duration_s = 40.0;
    double step_s = 2.0;              // equals rsea.dt_interval
    NoiseModel noise;
    /// When set, sigma_n^2 is calibrated so that |h1|^2 / sigma_n^2 hits this SNR.
    std::optional<double> target_snr_db = -2.0;
    /// Hidden-node collision power relative to sigma_n^2.
    double hidden_node_inr_db = 8.0;
    double cs_range_m = 1000.0;
    double effective_radius_m = 30.0;
    std::size_t mae_window = 10;
    RseaConfig rsea = default_rsea_config();
    std::uint64_t seed = 1;
};

/// Throws ConfigError naming the offending field.
void validate(const ScenarioConfig& cfg);

ScenarioConfig behavior1_config();
ScenarioConfig behavior2_config();
/// Jammer accelerating toward the platoon in the opposite lane; the sweep base.
ScenarioConfig oncoming_config();

struct RunRecord {
    double t = 0.0;
    double delta_u_true = 0.0;
    std::optional<double> delta_u_hat;
    double sinr_db = 0.0;
    double distance_jx_rx = 0.0;
    double cos_theta = 1.0;
    bool jammer_active = false;
    std::string error;  // identifiability/ambiguity failures for this step
};

struct ScenarioRun {
    std::vector<RunRecord> records;
    double noise_sigma2 = 0.0;
    double hidden_node_power = 0.0;
};

/// Noise floor and hidden-node power the run will use.
NoiseModel calibrated_noise(const ScenarioConfig& cfg);

/// Vehicle states at time t (closed-form kinematics).
World world_at(const ScenarioConfig& cfg, double t);

ScenarioRun run_scenario(const ScenarioConfig& cfg);

struct Interval {
    double t_start = 0.0;
    double t_end = 0.0;
    double duration() const { return t_end - t_start; }
};

struct PeakDeltaU {
    double value = 0.0;
    double t = 0.0;
};

struct ZoneReport {
    double dt_eff = 0.0;
    std::optional<Interval> black_hole;
    bool black_hole_open = false;  // still inside the radius at the last record
    PeakDeltaU peak_delta_u;
};

/// Black hole: longest run of consecutive records closer than the radius,
/// ending at the first record back outside it (or the last record).
ZoneReport detect_zones(const std::vector<RunRecord>& records, double effective_radius = 30.0);

enum class MaeMode { Absolute, Percent };

struct MaeSeries {
    std::vector<std::optional<double>> series;  // per record, sliding window
    double average = 0.0;                       // over every estimated record
    std::size_t count = 0;
};

MaeSeries mae(const std::vector<RunRecord>& records, std::size_t window_ns = 10, MaeMode mode = MaeMode::Absolute);

/// Mean relative error x100 over records with t in [t_start, t_end).
/// NaN when no record in the range carries an estimate.
double mae_percent_between(const std::vector<RunRecord>& records, double t_start, double t_end);

/// MAE% per interval.
struct ZoneMae {
    double black_hole = 0.0;
    double effective_zone = 0.0;
    double overall = 0.0;
};

ZoneMae zone_mae(const std::vector<RunRecord>& records, const ZoneReport& zones);

/// SINR where the jammer enters the effective zone (the last record before the
/// black hole, or its first record) minus SINR at the record nearest the
/// black-hole midpoint.
std::optional<double> sinr_drop_db(const std::vector<RunRecord>& records, const ZoneReport& zones);

struct RoundTripCase {
    double delta_u = 0.0;
    double dt = 0.0;
    std::size_t n_taps = 0;
    std::optional<double> delta_u_hat;
    double rel_error = 0.0;
    std::string error;
};

struct RoundTripReport {
    std::vector<RoundTripCase> cases;
    double worst_rel_error = 0.0;
    bool passed = false;
};

/// Noise-free rsea_step over a grid of speeds, intervals and tap counts using
/// the channel settings of `cfg`. Passes when every case recovers the speed
/// within `tolerance` relative error.
RoundTripReport round_trip_self_test(const RseaConfig& cfg, double tolerance = 1e-6);

enum class SweepParam { JammerMaxSpeed, HiddenNodes };

struct SweepRow {
    double value = 0.0;
    double mae_percent = 0.0;  // mean over seeds
    double stddev = 0.0;
};

struct SweepResult {
    SweepParam param = SweepParam::JammerMaxSpeed;
    std::vector<SweepRow> rows;
    bool nondecreasing = false;  // every row >= the previous one
    double rise = 0.0;           // last minus first
};

std::vector<double> default_sweep_grid(SweepParam param);

/// Overall MAE% averaged over seeds base.seed, base.seed + 1, ...
/// Grid points and seeds run concurrently.
SweepResult sweep(SweepParam param, const ScenarioConfig& base, std::size_t n_seeds,
                  std::vector<double> grid = {});

}  // namespace rsea
