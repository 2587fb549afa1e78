#include "rsea/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

namespace rsea {

namespace {

[[noreturn]] void reject(const std::string& key, const std::string& why)
{
    throw ConfigError(key, key + ": " + why);
}

void require_positive(const std::string& key, double v)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        reject(key, "must be a finite value > 0 (got " + std::to_string(v) + ")");
    }
}

double approach_angle_rad(const ScenarioConfig& cfg)
{
    const double deg = cfg.approach.kind == Approach::Crossroads ? 90.0 : cfg.approach.angle_deg;
    return deg * kPi / 180.0;
}

/// Two-leg jammer route: approach road into the junction, then the main road.
struct JammerRoute {
    Vec2 start;
    Vec2 approach_dir;
    double approach_length = 0.0;
    Vec2 junction;

    explicit JammerRoute(const ScenarioConfig& cfg)
    {
        if (cfg.approach.kind == Approach::Oncoming) {
            const double lane = cfg.lane_offset_m;
            approach_dir = {-1.0, 0.0};
            approach_length = std::numeric_limits<double>::infinity();
            start = {std::sqrt(cfg.jx_initial_distance_m * cfg.jx_initial_distance_m - lane * lane), lane};
            junction = start;
            return;
        }
        const double a = approach_angle_rad(cfg);
        approach_dir = {std::cos(a), -std::sin(a)};
        approach_length = cfg.approach_length_m;
        const double lateral = cfg.lane_offset_m + approach_length * std::sin(a);
        const double d0 = cfg.jx_initial_distance_m;
        start = {std::sqrt(d0 * d0 - lateral * lateral), lateral};
        junction = start + approach_length * approach_dir;
    }

    VehicleState state(double s, double speed) const
    {
        VehicleState st;
        st.role = Role::Jx;
        if (s < approach_length) {
            st.position = start + s * approach_dir;
            st.velocity = speed * approach_dir;
        } else {
            st.position = junction + Vec2{s - approach_length, 0.0};
            st.velocity = {speed, 0.0};
        }
        return st;
    }
};

}  // namespace

void validate(const ScenarioConfig& cfg)
{
    require_positive("txrx_speed_kmh", cfg.txrx_speed_kmh);
    require_positive("d_tx_rx", cfg.txrx_separation_m);
    require_positive("jx_max_speed_kmh", cfg.jx_max_speed_kmh);
    require_positive("jx_accel_ms2", cfg.jx_accel_ms2);
    require_positive("jx_initial_distance_m", cfg.jx_initial_distance_m);
    require_positive("approach_length_m", cfg.approach_length_m);
    require_positive("duration_s", cfg.duration_s);
    require_positive("step (delta_t_s)", cfg.step_s);
    require_positive("effective_radius_m", cfg.effective_radius_m);
    require_positive("cs_range_m", cfg.cs_range_m);
    require_positive("f_c_hz", cfg.rsea.carrier.f_c);
    require_positive("d_ref_m", cfg.rsea.pathloss.d_ref);
    require_positive("g0", cfg.rsea.pathloss.g0);
    require_positive("p_tx_jx_mw", cfg.rsea.tx_power_w);
    if (cfg.rsea.dt_interval != cfg.step_s) {
        reject("step (delta_t_s)", "scenario step and estimator interval must match");
    }
    if (!(cfg.lane_offset_m >= 0.0)) {
        reject("lane_offset_m", "must be >= 0");
    }
    if (cfg.approach.kind == Approach::SideRoad
        && !(cfg.approach.angle_deg > 0.0 && cfg.approach.angle_deg <= 90.0)) {
        reject("approach_angle_deg", "must be in (0, 90]");
    }
    const double a = approach_angle_rad(cfg);
    if (cfg.approach.kind == Approach::Oncoming) {
        if (cfg.lane_offset_m >= cfg.jx_initial_distance_m) {
            reject("lane_offset_m", "must be smaller than the initial jammer distance");
        }
    } else if (cfg.lane_offset_m + cfg.approach_length_m * std::sin(a) >= cfg.jx_initial_distance_m) {
        reject("approach_length_m", "approach road does not fit inside the initial jammer distance");
    }
    if (cfg.rsea.n_taps < 1) {
        reject("n_taps", "must be >= 1");
    }
    if (cfg.rsea.k_pilot <= 2 * cfg.rsea.n_taps + 1) {
        reject("k_pilot", "must exceed 2*n_taps + 1");
    }
    if (const auto* pw = std::get_if<PiecewiseJamming>(&cfg.rsea.jamming);
        pw && cfg.rsea.k_pilot < 2 * cfg.rsea.n_taps + pw->symbols.size() + 1) {
        reject("k_pilot", "piecewise jamming with M symbols needs k_pilot >= 2*n_taps + M + 1");
    }
    if (cfg.mae_window < 1) {
        reject("mae_window", "must be >= 1");
    }
    if (cfg.noise.sigma_n2 < 0.0) {
        reject("noise_sigma2", "must be >= 0");
    }
    if (cfg.noise.hidden_node_count < 0 || cfg.noise.hidden_node_count > 10000) {
        reject("hidden_nodes", "must be in [0, 10000]");
    }
    if (!(cfg.noise.collision_prob_per_node >= 0.0 && cfg.noise.collision_prob_per_node <= 1.0)) {
        reject("collision_prob_per_node", "must be in [0, 1]");
    }
}

ScenarioConfig behavior1_config()
{
    ScenarioConfig cfg;
    cfg.name = "behavior1";
    cfg.txrx_speed_kmh = 50.0;
    cfg.jx_max_speed_kmh = 60.0;
    cfg.jx_accel_ms2 = 2.1;
    cfg.approach = {Approach::SideRoad, 90.0};
    cfg.approach_length_m = 204.0;
    cfg.duration_s = 40.0;
    cfg.noise.hidden_node_count = 10;
    return cfg;
}

ScenarioConfig behavior2_config()
{
    ScenarioConfig cfg;
    cfg.name = "behavior2";
    cfg.txrx_speed_kmh = 48.0;
    cfg.jx_max_speed_kmh = 50.0;
    cfg.jx_accel_ms2 = 1.5;
    cfg.approach = {Approach::Crossroads, 90.0};
    cfg.approach_length_m = 183.0;
    cfg.duration_s = 40.0;
    cfg.noise.hidden_node_count = 10;
    return cfg;
}

ScenarioConfig oncoming_config()
{
    ScenarioConfig cfg;
    cfg.name = "oncoming";
    cfg.txrx_speed_kmh = 50.0;
    cfg.jx_max_speed_kmh = 60.0;
    cfg.jx_accel_ms2 = 1.4;
    cfg.approach = {Approach::Oncoming, 0.0};
    cfg.duration_s = 40.0;
    return cfg;
}

NoiseModel calibrated_noise(const ScenarioConfig& cfg)
{
    NoiseModel noise = cfg.noise;
    if (cfg.target_snr_db) {
        const double h1 = std::norm(cfg.rsea.gamma1 * path_loss(cfg.txrx_separation_m, cfg.rsea.pathloss));
        noise.sigma_n2 = h1 / std::pow(10.0, *cfg.target_snr_db / 10.0);
    }
    noise.hidden_node_power = noise.sigma_n2 * std::pow(10.0, cfg.hidden_node_inr_db / 10.0);
    return noise;
}

World world_at(const ScenarioConfig& cfg, double t)
{
    const double v_rx = kmh_to_ms(cfg.txrx_speed_kmh);
    World w;
    w.rx = {{0.0, 0.0}, {v_rx, 0.0}, Role::Rx};
    w.tx = {{cfg.txrx_separation_m, 0.0}, {v_rx, 0.0}, Role::Tx};

    // Jammer kinematics in route coordinates: x is arc length.
    VehicleState path{{0.0, 0.0}, {0.0, 0.0}, Role::Jx};
    if (t > 0.0) {
        w.rx = advance(w.rx, t, {0.0, 0.0});
        w.tx = advance(w.tx, t, {0.0, 0.0});
        path = advance(path, t, {cfg.jx_accel_ms2, 0.0}, kmh_to_ms(cfg.jx_max_speed_kmh));
    }
    w.jx = JammerRoute(cfg).state(path.position.x, path.velocity.x);
    return w;
}

ScenarioRun run_scenario(const ScenarioConfig& cfg)
{
    validate(cfg);
    const NoiseModel noise = calibrated_noise(cfg);
    const JammerRoute route(cfg);
    const double v_rx = kmh_to_ms(cfg.txrx_speed_kmh);
    const double vmax_jx = kmh_to_ms(cfg.jx_max_speed_kmh);

    ScenarioRun run;
    run.noise_sigma2 = noise.sigma_n2;
    run.hidden_node_power = noise.hidden_node_power;

    Rng rng(cfg.seed);
    VehicleState rx{{0.0, 0.0}, {v_rx, 0.0}, Role::Rx};
    VehicleState tx{{cfg.txrx_separation_m, 0.0}, {v_rx, 0.0}, Role::Tx};
    VehicleState path{{0.0, 0.0}, {0.0, 0.0}, Role::Jx};

    const auto n_steps = static_cast<std::size_t>(std::floor(cfg.duration_s / cfg.step_s + 1e-9));
    run.records.reserve(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const double t = static_cast<double>(i) * cfg.step_s;
        const World world{tx, rx, route.state(path.position.x, path.velocity.x)};
        const AopGeometry geo = aop_geometry(world.jx, world.rx);

        RunRecord rec;
        rec.t = t;
        rec.distance_jx_rx = geo.d;
        rec.cos_theta = geo.cos_theta;
        rec.delta_u_true = relative_speed_truth(world.jx, world.rx).value;
        try {
            const StepResult step = rsea_step(world, cfg.rsea, noise, rng, t);
            rec.jammer_active = step.jammer_active;
            if (step.estimate) {
                rec.delta_u_hat = step.estimate->delta_u_hat;
            }
            // The PHY sees the jammer through the physical Jx-Rx distance.
            const cplx h2_phys = step.jammer_active && geo.d > 0.0
                                     ? cfg.rsea.gamma2 * path_loss(geo.d, cfg.rsea.pathloss)
                                     : cplx{0.0, 0.0};
            rec.sinr_db = sinr_db(step.h1_los, h2_phys, step.noise_power);
        } catch (const std::exception& e) {
            rec.error = e.what();
            rec.sinr_db = std::numeric_limits<double>::quiet_NaN();
        }
        run.records.push_back(std::move(rec));

        rx = advance(rx, cfg.step_s, {0.0, 0.0});
        tx = advance(tx, cfg.step_s, {0.0, 0.0});
        path = advance(path, cfg.step_s, {cfg.jx_accel_ms2, 0.0}, vmax_jx);
    }
    return run;
}

ZoneReport detect_zones(const std::vector<RunRecord>& records, double effective_radius)
{
    if (records.empty()) {
        throw DomainError("detect_zones: no records");
    }
    ZoneReport rep;

    const auto peak = std::max_element(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return a.delta_u_true < b.delta_u_true;
    });
    rep.peak_delta_u = {peak->delta_u_true, peak->t};

    std::optional<Interval> best;
    bool best_open = false;
    std::size_t i = 0;
    while (i < records.size()) {
        if (!(records[i].distance_jx_rx < effective_radius)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < records.size() && records[j].distance_jx_rx < effective_radius) {
            ++j;
        }
        const double end = j < records.size() ? records[j].t : records.back().t;
        const Interval iv{records[i].t, end};
        if (!best || iv.duration() > best->duration()) {
            best = iv;
            best_open = j == records.size();
        }
        i = j;
    }
    rep.black_hole = best;
    rep.black_hole_open = best_open;
    rep.dt_eff = (best ? best->t_start : records.back().t) - records.front().t;
    return rep;
}

namespace {

double error_of(const RunRecord& r, MaeMode mode)
{
    const double e = std::abs(r.delta_u_true - *r.delta_u_hat);
    if (mode == MaeMode::Absolute) {
        return e;
    }
    return r.delta_u_true != 0.0 ? 100.0 * e / std::abs(r.delta_u_true) : 0.0;
}

}  // namespace

MaeSeries mae(const std::vector<RunRecord>& records, std::size_t window_ns, MaeMode mode)
{
    if (window_ns < 1) {
        throw DomainError("mae: window must be >= 1");
    }
    MaeSeries out;
    out.series.reserve(records.size());
    std::vector<double> errors;
    double total = 0.0;
    for (const auto& r : records) {
        if (!r.delta_u_hat) {
            out.series.emplace_back();
            continue;
        }
        const double e = error_of(r, mode);
        errors.push_back(e);
        total += e;
        // Shorter warm-up window until window_ns estimates exist.
        const std::size_t n = std::min(window_ns, errors.size());
        const double sum = std::accumulate(errors.end() - static_cast<std::ptrdiff_t>(n), errors.end(), 0.0);
        out.series.emplace_back(sum / static_cast<double>(n));
    }
    out.count = errors.size();
    out.average = errors.empty() ? 0.0 : total / static_cast<double>(errors.size());
    return out;
}

double mae_percent_between(const std::vector<RunRecord>& records, double t_start, double t_end)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : records) {
        if (r.t >= t_start && r.t < t_end && r.delta_u_hat) {
            sum += error_of(r, MaeMode::Percent);
            ++n;
        }
    }
    return n ? sum / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN();
}

ZoneMae zone_mae(const std::vector<RunRecord>& records, const ZoneReport& zones)
{
    const double inf = std::numeric_limits<double>::infinity();
    const double t0 = records.empty() ? 0.0 : records.front().t;
    ZoneMae z;
    z.overall = mae_percent_between(records, -inf, inf);
    if (zones.black_hole) {
        const double end = zones.black_hole_open ? inf : zones.black_hole->t_end;
        z.black_hole = mae_percent_between(records, zones.black_hole->t_start, end);
        z.effective_zone = mae_percent_between(records, t0, zones.black_hole->t_start);
    } else {
        z.black_hole = std::numeric_limits<double>::quiet_NaN();
        z.effective_zone = z.overall;
    }
    return z;
}

std::optional<double> sinr_drop_db(const std::vector<RunRecord>& records, const ZoneReport& zones)
{
    if (!zones.black_hole || records.empty()) {
        return std::nullopt;
    }
    const Interval& bh = *zones.black_hole;
    const double mid = 0.5 * (bh.t_start + bh.t_end);
    const RunRecord* entry = nullptr;
    const RunRecord* middle = nullptr;
    for (const auto& r : records) {
        if (r.t < bh.t_start || !entry) {
            entry = &r;
        }
        if (!middle || std::abs(r.t - mid) < std::abs(middle->t - mid)) {
            middle = &r;
        }
    }
    return entry->sinr_db - middle->sinr_db;
}

RoundTripReport round_trip_self_test(const RseaConfig& base, double tolerance)
{
    RoundTripReport rep;
    rep.passed = true;
    const NoiseModel silent{};
    for (std::size_t n_taps : {std::size_t{1}, std::size_t{4}}) {
        for (double dt : {1.0, 2.0, 4.0}) {
            for (double du : {1.0, 5.0, 12.5, 25.0, 40.0}) {
                RseaConfig cfg = base;
                cfg.n_taps = n_taps;
                cfg.k_pilot = std::max(cfg.k_pilot, 2 * n_taps + 2);
                if (const auto* pw = std::get_if<PiecewiseJamming>(&cfg.jamming)) {
                    cfg.k_pilot = std::max(cfg.k_pilot, 2 * n_taps + pw->symbols.size() + 1);
                }
                cfg.dt_interval = dt;
                World w;
                w.rx = {{0.0, 0.0}, {0.5 * du, 0.0}, Role::Rx};
                w.tx = {{cfg.d_txrx, 0.0}, {0.5 * du, 0.0}, Role::Tx};
                w.jx = {{-0.5 * cfg.d_txrx, 0.0}, {0.5 * du, 0.0}, Role::Jx};
                Rng rng(static_cast<std::uint64_t>(du * 1000.0 + dt * 10.0) + n_taps);

                RoundTripCase c{du, dt, n_taps, std::nullopt, 0.0, {}};
                try {
                    const StepResult step = rsea_step(w, cfg, silent, rng, 0.0);
                    if (step.estimate) {
                        c.delta_u_hat = step.estimate->delta_u_hat;
                        c.rel_error = std::abs(*c.delta_u_hat - du) / du;
                    } else {
                        c.error = "no estimate (jammer gate closed)";
                    }
                } catch (const std::exception& e) {
                    c.error = e.what();
                }
                const bool ok = c.error.empty() && c.rel_error < tolerance;
                rep.passed = rep.passed && ok;
                rep.worst_rel_error = std::max(rep.worst_rel_error, c.error.empty() ? c.rel_error : 1.0);
                rep.cases.push_back(std::move(c));
            }
        }
    }
    return rep;
}

std::vector<double> default_sweep_grid(SweepParam param)
{
    if (param == SweepParam::JammerMaxSpeed) {
        return {47.0, 57.0, 67.0, 77.0, 87.0, 97.0};
    }
    return {0.0, 10.0, 20.0, 30.0, 40.0, 50.0};
}

SweepResult sweep(SweepParam param, const ScenarioConfig& base, std::size_t n_seeds, std::vector<double> grid)
{
    if (n_seeds < 1) {
        throw DomainError("sweep: n_seeds must be >= 1");
    }
    if (grid.empty()) {
        grid = default_sweep_grid(param);
    }

    std::vector<std::vector<std::future<double>>> jobs(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        ScenarioConfig cfg = base;
        if (param == SweepParam::JammerMaxSpeed) {
            cfg.jx_max_speed_kmh = grid[g];
        } else {
            cfg.noise.hidden_node_count = static_cast<int>(std::lround(grid[g]));
        }
        validate(cfg);
        for (std::size_t s = 0; s < n_seeds; ++s) {
            cfg.seed = base.seed + s;
            jobs[g].push_back(std::async(std::launch::async, [cfg] {
                const auto run = run_scenario(cfg);
                return mae(run.records, cfg.mae_window, MaeMode::Percent).average;
            }));
        }
    }

    SweepResult res;
    res.param = param;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::vector<double> vals;
        for (auto& f : jobs[g]) {
            vals.push_back(f.get());
        }
        const double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(vals.size());
        double var = 0.0;
        for (double v : vals) {
            var += (v - mean) * (v - mean);
        }
        const double sd = vals.size() > 1 ? std::sqrt(var / static_cast<double>(vals.size() - 1)) : 0.0;
        res.rows.push_back({grid[g], mean, sd});
    }
    res.nondecreasing = true;
    for (std::size_t g = 1; g < res.rows.size(); ++g) {
        res.nondecreasing = res.nondecreasing && res.rows[g].mae_percent >= res.rows[g - 1].mae_percent;
    }
    res.rise = res.rows.back().mae_percent - res.rows.front().mae_percent;
    return res;
}

}  // namespace rsea
