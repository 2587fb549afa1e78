#include "rsea/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "rsea/config_io.hpp"

namespace rsea {

namespace {

std::string fixed(double v, int digits = 2)
{
    if (std::isnan(v)) {
        return "n/a";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, ptr);
}

std::string pad(std::string s, std::size_t width)
{
    // Pads by code points so the UTF-8 labels line up.
    std::size_t cps = 0;
    for (unsigned char ch : s) {
        cps += (ch & 0xC0) != 0x80;
    }
    if (cps < width) {
        s.append(width - cps, ' ');
    }
    return s;
}

std::string opt_number(const std::optional<double>& v)
{
    return v ? format_number(*v) : "none";
}

template <class Fn>
void write_file(const std::filesystem::path& path, Fn&& fn)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw IoError("cannot write " + path.string());
    }
    fn(os);
    os.flush();
    if (!os) {
        throw IoError("write failed: " + path.string());
    }
}

}  // namespace

SummaryReport make_summary(const ScenarioConfig& cfg, const ScenarioRun& run)
{
    SummaryReport rep;
    rep.scenario = cfg.name;
    rep.seed = cfg.seed;
    rep.zones = detect_zones(run.records, cfg.effective_radius_m);
    rep.zone_mae = zone_mae(run.records, rep.zones);
    rep.sinr_drop_db = sinr_drop_db(run.records, rep.zones);
    rep.records = run.records.size();
    for (const auto& r : run.records) {
        rep.estimates += r.delta_u_hat.has_value();
        rep.step_errors += !r.error.empty();
    }
    rep.noise_sigma2 = run.noise_sigma2;
    rep.hidden_node_power = run.hidden_node_power;
    rep.target_snr_db = cfg.target_snr_db;
    rep.hidden_nodes = cfg.noise.hidden_node_count;
    rep.cs_range_m = cfg.cs_range_m;
    rep.effective_radius_m = cfg.effective_radius_m;
    rep.duration_s = cfg.duration_s;
    rep.step_s = cfg.step_s;
    return rep;
}

void write_summary(std::ostream& os, const SummaryReport& r)
{
    const double t_end = r.duration_s;
    const auto& bh = r.zones.black_hole;
    const double eff_end = bh ? bh->t_start : t_end;

    os << "RSEA run summary\n";
    os << "scenario: " << r.scenario << "  seed: " << r.seed << '\n';
    os << '\n';
    os << pad("Zone", 12) << pad("Interval [s]", 18) << "MAE %\n";
    os << pad("Δt_eff", 12) << pad(fixed(0.0, 1) + " - " + fixed(eff_end, 1), 18) << fixed(r.zone_mae.effective_zone)
       << '\n';
    os << pad("Black hole", 12)
       << pad(bh ? fixed(bh->t_start, 1) + " - " + fixed(bh->t_end, 1) : std::string("none"), 18)
       << fixed(r.zone_mae.black_hole) << '\n';
    os << pad("Overall", 12) << pad(fixed(0.0, 1) + " - " + fixed(t_end, 1), 18) << fixed(r.zone_mae.overall) << '\n';
    os << '\n';
    os << "Δt_eff: " << fixed(r.zones.dt_eff, 1) << " s\n";
    os << "peak Δu: " << fixed(r.zones.peak_delta_u.value) << " m/s at t = " << fixed(r.zones.peak_delta_u.t, 1)
       << " s\n";
    os << "SINR drop at zone entry: " << (r.sinr_drop_db ? fixed(*r.sinr_drop_db) + " dB" : std::string("n/a"))
       << '\n';
    os << "estimates: " << r.estimates << " of " << r.records << " steps, " << r.step_errors << " step errors\n";
    os << '\n';

    os << "[values]\n";
    os << "scenario=" << r.scenario << '\n';
    os << "seed=" << r.seed << '\n';
    os << "dt_eff_s=" << format_number(r.zones.dt_eff) << '\n';
    os << "black_hole_start_s=" << (bh ? format_number(bh->t_start) : "none") << '\n';
    os << "black_hole_end_s=" << (bh ? format_number(bh->t_end) : "none") << '\n';
    os << "black_hole_duration_s=" << (bh ? format_number(bh->duration()) : "none") << '\n';
    os << "peak_delta_u_mps=" << format_number(r.zones.peak_delta_u.value) << '\n';
    os << "peak_delta_u_t_s=" << format_number(r.zones.peak_delta_u.t) << '\n';
    os << "mae_percent_black_hole=" << format_number(r.zone_mae.black_hole) << '\n';
    os << "mae_percent_effective_zone=" << format_number(r.zone_mae.effective_zone) << '\n';
    os << "mae_percent_overall=" << format_number(r.zone_mae.overall) << '\n';
    os << "sinr_drop_db=" << opt_number(r.sinr_drop_db) << '\n';
    os << "records=" << r.records << '\n';
    os << "estimates=" << r.estimates << '\n';
    os << "step_errors=" << r.step_errors << '\n';
    os << "noise_sigma2_w=" << format_number(r.noise_sigma2) << '\n';
    os << "hidden_node_power_w=" << format_number(r.hidden_node_power) << '\n';
    os << "target_snr_db=" << opt_number(r.target_snr_db) << '\n';
    os << "hidden_nodes=" << r.hidden_nodes << '\n';
    os << "cs_range_m=" << format_number(r.cs_range_m) << '\n';
    os << "effective_radius_m=" << format_number(r.effective_radius_m) << '\n';
}

void emit_summary(const SummaryReport& report, const std::filesystem::path& path)
{
    write_file(path, [&](std::ostream& os) { write_summary(os, report); });
}

std::string sweep_param_name(SweepParam param)
{
    return param == SweepParam::JammerMaxSpeed ? "jammer-speed" : "hidden-nodes";
}

void emit_sweep_csv(const SweepResult& result, const std::filesystem::path& path)
{
    write_file(path, [&](std::ostream& os) {
        os << "value,mae_percent,stddev\n";
        for (const auto& row : result.rows) {
            os << format_number(row.value) << ',' << format_number(row.mae_percent) << ','
               << format_number(row.stddev) << '\n';
        }
    });
}

void write_sweep_summary(std::ostream& os, const SweepResult& result, const ScenarioConfig& base, std::size_t n_seeds)
{
    const std::string unit = result.param == SweepParam::JammerMaxSpeed ? "km/h" : "nodes";
    os << "RSEA sweep summary\n";
    os << "param: " << sweep_param_name(result.param) << "  base: " << base.name << "  seeds: " << base.seed
       << ".." << base.seed + n_seeds - 1 << '\n';
    os << '\n';
    os << pad("Value [" + unit + "]", 16) << pad("MAE %", 10) << "stddev\n";
    for (const auto& row : result.rows) {
        os << pad(fixed(row.value, 0), 16) << pad(fixed(row.mae_percent), 10) << fixed(row.stddev) << '\n';
    }
    os << '\n';
    os << "[values]\n";
    os << "param=" << sweep_param_name(result.param) << '\n';
    os << "base=" << base.name << '\n';
    os << "seeds=" << n_seeds << '\n';
    os << "first_seed=" << base.seed << '\n';
    for (const auto& row : result.rows) {
        os << "mae_percent[" << format_number(row.value) << "]=" << format_number(row.mae_percent) << '\n';
    }
    os << "nondecreasing=" << (result.nondecreasing ? "true" : "false") << '\n';
    os << "rise_percent=" << format_number(result.rise) << '\n';
}

void emit_sweep_summary(const SweepResult& result, const ScenarioConfig& base, std::size_t n_seeds,
                        const std::filesystem::path& path)
{
    write_file(path, [&](std::ostream& os) { write_sweep_summary(os, result, base, n_seeds); });
}

}  // namespace rsea
