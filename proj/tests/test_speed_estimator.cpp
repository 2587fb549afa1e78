#include <catch_amalgamated.hpp>

#include <cmath>

#include "rsea/speed_estimator.hpp"

using namespace rsea;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

RseaConfig unit_config()
{
    RseaConfig cfg = default_rsea_config();
    cfg.pathloss.g0 = 1.0;
    cfg.pathloss.d_ref = 100.0;
    cfg.dt_interval = 2.0;
    return cfg;
}

/// Rx at the origin, Tx 20 m ahead, jammer 10 m behind; same heading.
World trailing_world(double delta_u)
{
    World w;
    w.rx = VehicleState{{0.0, 0.0}, {delta_u / 2.0, 0.0}, Role::Rx};
    w.tx = VehicleState{{20.0, 0.0}, {delta_u / 2.0, 0.0}, Role::Tx};
    w.jx = VehicleState{{-10.0, 0.0}, {delta_u / 2.0, 0.0}, Role::Jx};
    return w;
}

}  // namespace

TEST_CASE("speed from LOS magnitude", "[speed_estimator]")
{
    const auto cfg = unit_config();
    const auto e = estimate_delta_u(4.0, cfg);
    REQUIRE(e);
    CHECK_THAT(e->delta_u_hat, WithinRel(25.0, 1e-14));

    const auto at_ref = estimate_delta_u(std::polar(1.0, 0.3), cfg);
    REQUIRE(at_ref);
    CHECK_THAT(at_ref->delta_u_hat, WithinRel(50.0, 1e-14));

    // a1^2 + b1^2 scaled by 16 halves the estimate.
    const auto base = estimate_delta_u(std::polar(0.7, 2.0), cfg);
    const auto scaled = estimate_delta_u(std::polar(0.7 * 4.0, -1.0), cfg);
    REQUIRE(scaled);
    CHECK_THAT(scaled->delta_u_hat, WithinRel(0.5 * base->delta_u_hat, 1e-14));

    CHECK_FALSE(estimate_delta_u(0.0, cfg));
}

TEST_CASE("speed estimate round-trips the jammer tap", "[speed_estimator]")
{
    const auto cfg = unit_config();
    for (double du : {0.5, 3.0, 25.0, 41.0}) {
        const auto tap = los_tap_jx(du, cfg.dt_interval, cfg.pathloss, cfg.gamma2, cfg.carrier);
        const auto e = estimate_delta_u(tap.gain, cfg);
        REQUIRE(e);
        CHECK_THAT(e->delta_u_hat, WithinRel(du, 1e-13));
    }
}

TEST_CASE("phase consistency", "[speed_estimator]")
{
    const auto cfg = unit_config();
    const auto tap = los_tap_jx(25.0, cfg.dt_interval, cfg.pathloss, cfg.gamma2, cfg.carrier);
    CHECK(phase_consistency(tap.gain, 25.0, cfg) < 1e-6);

    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const double r = phase_consistency(std::polar(1.0, uniform(rng, -kPi, kPi)), uniform(rng, 0.1, 50.0), cfg);
        CHECK(r >= 0.0);
        CHECK(r <= 2.0);
    }
}

TEST_CASE("zero-noise LOS-only step recovers the speed", "[speed_estimator]")
{
    auto cfg = default_rsea_config();
    cfg.n_taps = 1;
    cfg.k_pilot = 4;
    Rng rng(3);
    const auto step = rsea_step(trailing_world(25.0), cfg, NoiseModel{}, rng, 6.0);
    REQUIRE(step.jammer_active);
    REQUIRE(step.estimate);
    CHECK_THAT(step.estimate->delta_u_hat, WithinAbs(25.0, 1e-6));
    CHECK(step.estimate->timestamp == 6.0);
    CHECK_THAT(step.delta_u_true, WithinAbs(25.0, 1e-12));
}

TEST_CASE("zero-noise multipath step recovers the speed", "[speed_estimator]")
{
    auto cfg = default_rsea_config();
    REQUIRE(cfg.n_taps == 4);
    REQUIRE(cfg.k_pilot == 10);
    Rng rng(17);
    for (double du : {2.0, 13.0, 31.0}) {
        const auto step = rsea_step(trailing_world(du), cfg, NoiseModel{}, rng);
        REQUIRE(step.estimate);
        CHECK_THAT(step.estimate->delta_u_hat, WithinRel(du, 1e-6));
        CHECK(step.estimate->diagnostics.residual < 1e-6);
    }
}

TEST_CASE("piecewise jamming step recovers the speed", "[speed_estimator]")
{
    auto cfg = default_rsea_config();
    cfg.jamming = PiecewiseJamming{{std::polar(1.0, kPi / 4.0), std::polar(1.0, 3.0 * kPi / 4.0)}};
    cfg.k_pilot = 2 * cfg.n_taps + 2 + 1;
    Rng rng(5);
    const auto step = rsea_step(trailing_world(18.0), cfg, NoiseModel{}, rng);
    REQUIRE(step.estimate);
    CHECK_THAT(step.estimate->delta_u_hat, WithinRel(18.0, 1e-6));
}

TEST_CASE("silent jammer gives no estimate", "[speed_estimator]")
{
    auto cfg = default_rsea_config();
    cfg.sensing_threshold_dbm = 100.0;
    Rng rng(3);
    const auto step = rsea_step(trailing_world(25.0), cfg, NoiseModel{}, rng);
    CHECK_FALSE(step.jammer_active);
    CHECK_FALSE(step.estimate);
}

TEST_CASE("too-short pilot surfaces an identifiability error", "[speed_estimator]")
{
    auto cfg = default_rsea_config();
    cfg.k_pilot = 2 * cfg.n_taps + 1;
    Rng rng(3);
    CHECK_THROWS_AS(rsea_step(trailing_world(25.0), cfg, NoiseModel{}, rng), IdentifiabilityError);
}

TEST_CASE("sensed pilot power follows path loss", "[speed_estimator]")
{
    const auto cfg = default_rsea_config();
    const World w = trailing_world(10.0);
    const double expect = std::pow(cfg.pathloss.g0 * std::pow(cfg.pathloss.d_ref / 30.0, 2.0), 2.0);
    CHECK_THAT(sensed_pilot_power(w, cfg), WithinRel(expect, 1e-12));
}
