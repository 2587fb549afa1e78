// rsea: run jamming scenarios, sweeps and the estimator self-test.
//
// Exit codes: 0 success, 1 config or validation error, 2 I/O error,
// 3 self-test failure.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rsea/config_io.hpp"
#include "rsea/report.hpp"
#include "rsea/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitSelfTest = 3;

std::string default_out_dir()
{
    const char* env = std::getenv("RSEA_OUT_DIR");
    return env && *env ? env : "rsea_out";
}

void prepare_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw rsea::IoError("cannot create output directory " + dir.string());
    }
}

int cmd_run(const std::string& scenario, std::optional<std::uint64_t> seed, const fs::path& out)
{
    rsea::ScenarioConfig cfg = rsea::parse_config(scenario);
    if (seed) {
        cfg.seed = *seed;
    }
    prepare_dir(out);
    const rsea::ScenarioRun run = rsea::run_scenario(cfg);
    const std::string stem = cfg.name + "_seed" + std::to_string(cfg.seed);
    rsea::emit_csv(run.records, out / (stem + ".csv"), cfg.mae_window);
    const rsea::SummaryReport rep = rsea::make_summary(cfg, run);
    rsea::emit_summary(rep, out / (stem + "_summary.txt"));
    rsea::write_summary(std::cout, rep);
    std::cout << "wrote " << (out / (stem + ".csv")).string() << '\n';
    return 0;
}

int cmd_sweep(const std::string& param_name, const std::string& scenario, std::size_t seeds,
              std::optional<std::uint64_t> seed, const fs::path& out)
{
    const rsea::SweepParam param =
        param_name == "jammer-speed" ? rsea::SweepParam::JammerMaxSpeed : rsea::SweepParam::HiddenNodes;
    rsea::ScenarioConfig base = rsea::parse_config(scenario);
    if (seed) {
        base.seed = *seed;
    }
    prepare_dir(out);
    const rsea::SweepResult res = rsea::sweep(param, base, seeds);
    const std::string stem = "sweep_" + param_name;
    rsea::emit_sweep_csv(res, out / (stem + ".csv"));
    rsea::emit_sweep_summary(res, base, seeds, out / (stem + "_summary.txt"));
    rsea::write_sweep_summary(std::cout, res, base, seeds);
    return 0;
}

int cmd_validate(const std::string& scenario)
{
    const rsea::ScenarioConfig cfg = rsea::parse_config(scenario);
    std::cout << "config " << cfg.name << ": ok\n";
    const rsea::RoundTripReport rt = rsea::round_trip_self_test(cfg.rsea);
    for (const auto& c : rt.cases) {
        if (!c.error.empty() || c.rel_error >= 1e-6) {
            std::cout << "  FAIL du=" << c.delta_u << " dt=" << c.dt << " N=" << c.n_taps << ": "
                      << (c.error.empty() ? "rel error " + rsea::format_number(c.rel_error) : c.error) << '\n';
        }
    }
    std::cout << "round trip: " << rt.cases.size() << " cases, worst relative error "
              << rsea::format_number(rt.worst_rel_error) << (rt.passed ? " (pass)" : " (FAIL)") << '\n';
    return rt.passed ? 0 : kExitSelfTest;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Relative speed estimation under RF jamming"};
    app.require_subcommand(1);

    std::string scenario = "behavior1";
    std::string sweep_base = "oncoming";
    std::optional<std::uint64_t> seed;
    std::string out_dir = default_out_dir();
    std::string param;
    std::size_t seeds = 10;

    auto* run = app.add_subcommand("run", "Run one scenario and write CSV trace and summary");
    run->add_option("--scenario", scenario, "behavior1, behavior2 or a config file path");
    run->add_option("--seed", seed, "RNG seed (overrides the config)");
    run->add_option("--out", out_dir, "Output directory (default $RSEA_OUT_DIR or ./rsea_out)");

    auto* sw = app.add_subcommand("sweep", "Average MAE% over a parameter grid");
    sw->add_option("--param", param, "jammer-speed or hidden-nodes")
        ->required()
        ->check(CLI::IsMember({"jammer-speed", "hidden-nodes"}));
    sw->add_option("--seeds", seeds, "Seeds per grid point")->check(CLI::Range(1, 100000));
    sw->add_option("--scenario", sweep_base, "Base scenario (default oncoming)");
    sw->add_option("--seed", seed, "First seed");
    sw->add_option("--out", out_dir, "Output directory (default $RSEA_OUT_DIR or ./rsea_out)");

    auto* val = app.add_subcommand("validate", "Parse a config and run the zero-noise self-test");
    val->add_option("--scenario", scenario, "behavior1, behavior2 or a config file path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(scenario, seed, out_dir);
        }
        if (sw->parsed()) {
            return cmd_sweep(param, sweep_base, seeds, seed, out_dir);
        }
        return cmd_validate(scenario);
    } catch (const rsea::IoError& e) {
        std::cerr << "rsea: " << e.what() << '\n';
        return kExitIo;
    } catch (const rsea::ConfigError& e) {
        std::cerr << "rsea: invalid config: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "rsea: " << e.what() << '\n';
        return kExitConfig;
    }
}
