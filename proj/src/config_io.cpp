#include "rsea/config_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace rsea {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& text)
{
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ConfigError(key, key + ": expected a finite number, got '" + text + "'");
    }
    return v;
}

long long parse_int(const std::string& key, const std::string& text, long long lo, long long hi)
{
    long long v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || v < lo || v > hi) {
        throw ConfigError(key, key + ": expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi)
                                   + "], got '" + text + "'");
    }
    return v;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
    auto num = [](double ScenarioConfig::*field) {
        return Setter([field](ScenarioConfig& c, const std::string& k, const std::string& v) {
            c.*field = parse_double(k, v);
        });
    };
    static const std::map<std::string, Setter> table{
        {"name", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.name = v; }},
        {"base", [](ScenarioConfig&, const std::string&, const std::string&) {}},
        // Link and channel parameters.
        {"d_tx_rx",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.txrx_separation_m = parse_double(k, v);
             c.rsea.d_txrx = c.txrx_separation_m;
         }},
        {"p_tx_jx_mw",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.rsea.tx_power_w = parse_double(k, v) * 1e-3;
         }},
        {"f_c_hz", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.rsea.carrier.f_c = parse_double(k, v);
         }},
        {"d_ref_m", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.rsea.pathloss.d_ref = parse_double(k, v);
         }},
        {"delta_t_s",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.step_s = parse_double(k, v);
             c.rsea.dt_interval = c.step_s;
         }},
        {"n_taps",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.rsea.n_taps = static_cast<std::size_t>(parse_int(k, v, 1, 64));
             c.rsea.k_pilot = 2 * c.rsea.n_taps + 2;
         }},
        {"k_pilot", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.rsea.k_pilot = static_cast<std::size_t>(parse_int(k, v, 3, 4096));
         }},
        {"cs_range_m", num(&ScenarioConfig::cs_range_m)},
        {"sensing_threshold_dbm", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.rsea.sensing_threshold_dbm = parse_double(k, v);
         }},
        // Scenario parameters.
        {"txrx_speed_kmh", num(&ScenarioConfig::txrx_speed_kmh)},
        {"jx_max_speed_kmh", num(&ScenarioConfig::jx_max_speed_kmh)},
        {"jx_accel_ms2", num(&ScenarioConfig::jx_accel_ms2)},
        {"jx_initial_distance_m", num(&ScenarioConfig::jx_initial_distance_m)},
        {"approach",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             if (v == "side_road") {
                 c.approach.kind = Approach::SideRoad;
             } else if (v == "crossroads") {
                 c.approach.kind = Approach::Crossroads;
                 c.approach.angle_deg = 90.0;
             } else if (v == "oncoming") {
                 c.approach.kind = Approach::Oncoming;
             } else {
                 throw ConfigError(k, k + ": expected side_road, crossroads or oncoming, got '" + v + "'");
             }
         }},
        {"approach_angle_deg", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.approach.angle_deg = parse_double(k, v);
         }},
        {"approach_length_m", num(&ScenarioConfig::approach_length_m)},
        {"lane_offset_m", num(&ScenarioConfig::lane_offset_m)},
        {"duration_s", num(&ScenarioConfig::duration_s)},
        {"effective_radius_m", num(&ScenarioConfig::effective_radius_m)},
        {"mae_window", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.mae_window = static_cast<std::size_t>(parse_int(k, v, 1, 100000));
         }},
        // Noise and interference.
        {"target_snr_db",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             if (v == "none") {
                 c.target_snr_db.reset();
             } else {
                 c.target_snr_db = parse_double(k, v);
             }
         }},
        {"noise_sigma2", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.noise.sigma_n2 = parse_double(k, v);
         }},
        {"hidden_nodes", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.noise.hidden_node_count = static_cast<int>(parse_int(k, v, 0, 10000));
         }},
        {"collision_prob_per_node", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.noise.collision_prob_per_node = parse_double(k, v);
         }},
        {"hidden_node_inr_db", num(&ScenarioConfig::hidden_node_inr_db)},
        // Channel and jamming.
        {"nlos_k_factor", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.rsea.nlos_k_factor = parse_double(k, v);
         }},
        {"nlos_relative_sigma", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.rsea.nlos_relative_sigma = parse_double(k, v);
         }},
        {"delay_spread_s", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.rsea.delay_spread.tau_max = parse_double(k, v);
         }},
        {"jamming_symbols",
         [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             const auto m = parse_int(k, v, 1, 64);
             if (m == 1) {
                 c.rsea.jamming = SimplifiedJamming{};
                 return;
             }
             std::vector<cplx> symbols;
             for (long long i = 0; i < m; ++i) {
                 symbols.push_back(std::polar(1.0, kPi / 4.0 + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(m)));
             }
             c.rsea.jamming = PiecewiseJamming{symbols};
         }},
        {"seed", [](ScenarioConfig& c, const std::string& k, const std::string& v) {
             c.seed = static_cast<std::uint64_t>(parse_int(k, v, 0, std::numeric_limits<long long>::max()));
         }},
    };
    return table;
}

std::optional<ScenarioConfig> builtin(const std::string& name)
{
    if (name == "behavior1") {
        return behavior1_config();
    }
    if (name == "behavior2") {
        return behavior2_config();
    }
    if (name == "oncoming") {
        return oncoming_config();
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::string> config_keys()
{
    std::vector<std::string> keys;
    for (const auto& [k, _] : setters()) {
        keys.push_back(k);
    }
    return keys;
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& origin)
{
    std::vector<std::pair<std::string, std::string>> entries;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::string base = "behavior1";
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("", origin + ":" + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(std::string_view(body).substr(0, eq));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (!setters().count(key)) {
            throw ConfigError(key, origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        if (key == "base") {
            if (!builtin(value)) {
                throw ConfigError(key, "base: expected behavior1, behavior2 or oncoming, got '" + value + "'");
            }
            base = value;
        }
        entries.emplace_back(std::move(key), std::move(value));
    }

    ScenarioConfig cfg = *builtin(base);
    for (const auto& [key, value] : entries) {
        setters().at(key)(cfg, key, value);
    }
    if (cfg.rsea.tx_power_w > 0.0 && cfg.rsea.carrier.f_c > 0.0 && cfg.rsea.pathloss.d_ref > 0.0) {
        cfg.rsea.pathloss.g0 = free_space_reference_gain(cfg.rsea.tx_power_w, cfg.rsea.carrier, cfg.rsea.pathloss.d_ref);
    }
    validate(cfg);
    return cfg;
}

ScenarioConfig parse_config(const std::string& name_or_path)
{
    if (auto cfg = builtin(name_or_path)) {
        return *cfg;
    }
    std::ifstream in(name_or_path);
    if (!in) {
        throw IoError("cannot open scenario '" + name_or_path + "' (not a builtin name or readable file)");
    }
    std::ostringstream text;
    text << in.rdbuf();
    ScenarioConfig cfg = parse_config_text(text.str(), name_or_path);
    if (cfg.name == "custom") {
        cfg.name = std::filesystem::path(name_or_path).stem().string();
    }
    return cfg;
}

std::string format_number(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& os, const std::vector<RunRecord>& records, std::size_t mae_window)
{
    const MaeSeries inst = mae(records, mae_window, MaeMode::Absolute);
    os << kCsvHeader << '\n';
    for (std::size_t i = 0; i < records.size(); ++i) {
        const RunRecord& r = records[i];
        os << format_number(r.t) << ',' << format_number(r.delta_u_true) << ',';
        if (r.delta_u_hat) {
            os << format_number(*r.delta_u_hat);
        }
        os << ',' << format_number(r.sinr_db) << ',' << format_number(r.distance_jx_rx) << ','
           << format_number(r.cos_theta) << ',';
        if (inst.series[i]) {
            os << format_number(*inst.series[i]);
        }
        os << '\n';
    }
}

void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path, std::size_t mae_window)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw IoError("cannot write " + path.string());
    }
    write_csv(os, records, mae_window);
    os.flush();
    if (!os) {
        throw IoError("write failed: " + path.string());
    }
}

namespace {

double field_number(const std::string& text)
{
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw IoError("csv: bad number '" + text + "'");
    }
    return v;
}

std::optional<double> field_optional(const std::string& text)
{
    if (text.empty()) {
        return std::nullopt;
    }
    return field_number(text);
}

}  // namespace

std::vector<CsvRow> read_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) {
        throw IoError("csv: missing or unexpected header");
    }
    std::vector<CsvRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            f.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (f.size() != 7) {
            throw IoError("csv: expected 7 fields, got " + std::to_string(f.size()));
        }
        rows.push_back({field_number(f[0]), field_number(f[1]), field_optional(f[2]), field_number(f[3]),
                        field_number(f[4]), field_number(f[5]), field_optional(f[6])});
    }
    return rows;
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    return read_csv(in);
}

}  // namespace rsea
