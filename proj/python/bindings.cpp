#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rsea/config_io.hpp"
#include "rsea/report.hpp"
#include "rsea/scenario.hpp"
#include "rsea/speed_estimator.hpp"

namespace py = pybind11;
using namespace rsea;

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Relative speed estimation under reactive V2V jamming";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<IdentifiabilityError>(m, "IdentifiabilityError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<RseaConfig>(m, "RseaConfig")
        .def_readwrite("dt_interval", &RseaConfig::dt_interval)
        .def_readwrite("n_taps", &RseaConfig::n_taps)
        .def_readwrite("k_pilot", &RseaConfig::k_pilot)
        .def_readwrite("d_txrx", &RseaConfig::d_txrx)
        .def_readwrite("gamma1", &RseaConfig::gamma1)
        .def_readwrite("gamma2", &RseaConfig::gamma2)
        .def_readwrite("sensing_threshold_dbm", &RseaConfig::sensing_threshold_dbm)
        .def_property(
            "g0", [](const RseaConfig& c) { return c.pathloss.g0; },
            [](RseaConfig& c, double v) { c.pathloss.g0 = v; })
        .def_property(
            "d_ref", [](const RseaConfig& c) { return c.pathloss.d_ref; },
            [](RseaConfig& c, double v) { c.pathloss.d_ref = v; })
        .def_property(
            "f_c", [](const RseaConfig& c) { return c.carrier.f_c; },
            [](RseaConfig& c, double v) { c.carrier.f_c = v; });

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def_readwrite("name", &ScenarioConfig::name)
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def_readwrite("txrx_speed_kmh", &ScenarioConfig::txrx_speed_kmh)
        .def_readwrite("jx_max_speed_kmh", &ScenarioConfig::jx_max_speed_kmh)
        .def_readwrite("jx_initial_distance_m", &ScenarioConfig::jx_initial_distance_m)
        .def_readwrite("duration_s", &ScenarioConfig::duration_s)
        .def_readwrite("step_s", &ScenarioConfig::step_s)
        .def_readwrite("target_snr_db", &ScenarioConfig::target_snr_db)
        .def_readwrite("effective_radius_m", &ScenarioConfig::effective_radius_m)
        .def_readwrite("rsea", &ScenarioConfig::rsea)
        .def_property(
            "hidden_nodes", [](const ScenarioConfig& c) { return c.noise.hidden_node_count; },
            [](ScenarioConfig& c, int v) { c.noise.hidden_node_count = v; });

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("t", &RunRecord::t)
        .def_readonly("delta_u_true", &RunRecord::delta_u_true)
        .def_readonly("delta_u_est", &RunRecord::delta_u_hat)
        .def_readonly("sinr_db", &RunRecord::sinr_db)
        .def_readonly("distance_jx_rx", &RunRecord::distance_jx_rx)
        .def_readonly("cos_theta", &RunRecord::cos_theta)
        .def_readonly("jammer_active", &RunRecord::jammer_active)
        .def_readonly("error", &RunRecord::error);

    py::class_<Interval>(m, "Interval")
        .def_readonly("t_start", &Interval::t_start)
        .def_readonly("t_end", &Interval::t_end)
        .def_property_readonly("duration", &Interval::duration);

    py::class_<ZoneReport>(m, "ZoneReport")
        .def_readonly("dt_eff", &ZoneReport::dt_eff)
        .def_readonly("black_hole", &ZoneReport::black_hole)
        .def_readonly("black_hole_open", &ZoneReport::black_hole_open)
        .def_property_readonly("peak_delta_u", [](const ZoneReport& z) { return z.peak_delta_u.value; })
        .def_property_readonly("peak_t", [](const ZoneReport& z) { return z.peak_delta_u.t; });

    py::class_<ZoneMae>(m, "ZoneMae")
        .def_readonly("black_hole", &ZoneMae::black_hole)
        .def_readonly("effective_zone", &ZoneMae::effective_zone)
        .def_readonly("overall", &ZoneMae::overall);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("value", &SweepRow::value)
        .def_readonly("mae_percent", &SweepRow::mae_percent)
        .def_readonly("stddev", &SweepRow::stddev);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("nondecreasing", &SweepResult::nondecreasing)
        .def_readonly("rise", &SweepResult::rise);

    m.def("default_rsea_config", &default_rsea_config);
    m.def("behavior1_config", &behavior1_config);
    m.def("behavior2_config", &behavior2_config);
    m.def("oncoming_config", &oncoming_config);
    m.def("parse_config", &parse_config, py::arg("name_or_path"));
    m.def("parse_config_text", &parse_config_text, py::arg("text"), py::arg("origin") = "<text>");
    m.def("validate", &validate);

    m.def(
        "run_scenario", [](const ScenarioConfig& cfg) { return run_scenario(cfg).records; },
        py::call_guard<py::gil_scoped_release>());
    m.def("detect_zones", &detect_zones, py::arg("records"), py::arg("effective_radius") = 30.0);
    m.def("zone_mae", &zone_mae);
    m.def("sinr_drop_db", &sinr_drop_db);

    m.def(
        "doppler_shift",
        [](double delta_u, double f_c, double cos_phi) {
            CarrierConfig c;
            c.f_c = f_c;
            return doppler_shift(delta_u, c, cos_phi);
        },
        py::arg("delta_u"), py::arg("f_c") = 5.9e9, py::arg("cos_phi") = 1.0);
    m.def(
        "estimate_delta_u",
        [](cplx los, const RseaConfig& cfg) -> std::optional<double> {
            const auto e = estimate_delta_u(los, cfg);
            return e ? std::optional<double>(e->delta_u_hat) : std::nullopt;
        },
        py::arg("los_baseband"), py::arg("cfg"));
    m.def(
        "round_trip_worst_error",
        [](const RseaConfig& cfg) { return round_trip_self_test(cfg).worst_rel_error; }, py::arg("cfg"));

    m.def(
        "sweep",
        [](const std::string& param, const ScenarioConfig& base, std::size_t seeds, std::vector<double> grid) {
            SweepParam p;
            if (param == "jammer-speed") {
                p = SweepParam::JammerMaxSpeed;
            } else if (param == "hidden-nodes") {
                p = SweepParam::HiddenNodes;
            } else {
                throw py::value_error("param must be 'jammer-speed' or 'hidden-nodes'");
            }
            py::gil_scoped_release release;
            return sweep(p, base, seeds, std::move(grid));
        },
        py::arg("param"), py::arg("base"), py::arg("seeds") = 10, py::arg("grid") = std::vector<double>{});

    m.def(
        "csv_text",
        [](const std::vector<RunRecord>& records, std::size_t window) {
            std::ostringstream os;
            write_csv(os, records, window);
            return os.str();
        },
        py::arg("records"), py::arg("mae_window") = 10);
    m.def(
        "summary_text",
        [](const ScenarioConfig& cfg) {
            ScenarioRun run;
            {
                py::gil_scoped_release release;
                run = run_scenario(cfg);
            }
            std::ostringstream os;
            write_summary(os, make_summary(cfg, run));
            return os.str();
        },
        py::arg("cfg"));
    m.attr("CSV_HEADER") = kCsvHeader;
}
