#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "rsea/channel.hpp"

using namespace rsea;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("path loss examples", "[channel]")
{
    PathLossParams p{0.7, 100.0, 2.0};
    CHECK_THAT(path_loss(100.0, p), WithinRel(0.7, 1e-15));
    CHECK_THAT(path_loss(200.0, p), WithinRel(0.7 / 4.0, 1e-15));
    CHECK_THAT(path_loss(300.0, p), WithinRel(0.7 / 9.0, 1e-15));
    CHECK_THROWS_AS(path_loss(0.0, p), DomainError);
    CHECK_THROWS_AS(path_loss(-5.0, p), DomainError);
}

TEST_CASE("doppler shift zero cases", "[channel]")
{
    const CarrierConfig c;
    CHECK(doppler_shift(0.0, c, 0.3) == 0.0);
    CHECK(doppler_shift(33.333, c, 0.0) == 0.0);
}

TEST_CASE("doppler shift direct evaluation", "[channel]")
{
    const CarrierConfig c;
    const double expect = 33.333 * 5.9e9 / 2.998e8;
    CHECK_THAT(doppler_shift(33.333, c, 1.0), WithinRel(expect, 1e-14));
    CHECK_THAT(c.lambda() * c.f_c, WithinRel(c.c, 1e-15));
}

TEST_CASE("jammer LOS tap", "[channel]")
{
    const CarrierConfig carrier;
    PathLossParams p{1.0, 100.0, 2.0};
    const auto tap = los_tap_jx(25.0, 2.0, p, {1.0, 0.0}, carrier);
    CHECK_THAT(std::abs(tap.gain), WithinRel(4.0, 1e-14));
    CHECK_THAT(tap.delay, WithinRel(50.0 / carrier.c, 1e-14));

    p.g0 = 0.3;
    const auto at_ref = los_tap_jx(50.0, 2.0, p, {0.0, 2.0}, carrier);
    CHECK_THAT(std::abs(at_ref.gain), WithinRel(0.6, 1e-14));

    CHECK_THROWS_AS(los_tap_jx(0.0, 2.0, p, 1.0, carrier), DomainError);
    CHECK_THROWS_AS(los_tap_jx(10.0, 0.0, p, 1.0, carrier), DomainError);
}

TEST_CASE("jammer LOS phase tends to zero with delay", "[channel]")
{
    const CarrierConfig carrier;
    CHECK(doppler_phase(25.0, 0.0, carrier) == 0.0);
    const PathLossParams p{1.0, 100.0, 2.0};
    const auto tap = los_tap_jx(1e-3, 1e-3, p, 1.0, carrier);
    CHECK(tap.gain.real() > 0.0);
    CHECK(std::abs(std::arg(tap.gain)) < 1e-12);
}

TEST_CASE("transmitter LOS tap", "[channel]")
{
    PathLossParams p{0.5, 100.0, 2.0};
    const auto a = los_tap_tx(100.0, p, 1.0);
    CHECK_THAT(a.gain.real(), WithinRel(0.5, 1e-15));
    CHECK(a.gain.imag() == 0.0);

    const auto b = los_tap_tx(200.0, p, {0.0, 1.0});
    CHECK_THAT(b.gain.imag(), WithinRel(0.125, 1e-15));
    CHECK_THAT(b.gain.real(), WithinAbs(0.0, 1e-18));

    p.g0 = 1.0;
    const auto c = los_tap_tx(100.0, p, {0.8, 0.6});
    CHECK_THAT(c.gain.real(), WithinRel(0.8, 1e-15));
    CHECK_THAT(c.gain.imag(), WithinRel(0.6, 1e-15));

    CHECK_THROWS_AS(los_tap_tx(0.0, p, 1.0), DomainError);
}

TEST_CASE("Rician limits", "[channel]")
{
    Rng rng(7);
    RicianParams pure{std::numeric_limits<double>::infinity(), 2.0, 1.0};
    for (int i = 0; i < 5; ++i) {
        const cplx v = rician_tap(pure, 0.4, rng);
        CHECK_THAT(std::abs(v - std::polar(2.0, 0.4)), WithinAbs(0.0, 1e-15));
    }

    RicianParams scatter{0.0, 1.0, 1.0};
    const int n = 100000;
    cplx mean{0.0, 0.0};
    double power = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx v = rician_tap(scatter, 1.0, rng);
        mean += v;
        power += std::norm(v);
    }
    mean /= double(n);
    power /= n;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(double(n)));
    CHECK_THAT(power, WithinRel(1.0, 0.02));

    CHECK_THROWS_AS(rician_tap(RicianParams{-1.0, 1.0, 1.0}, 0.0, rng), DomainError);
}

TEST_CASE("Rician total power is sigma squared for every k", "[channel]")
{
    Rng rng(11);
    for (double k : {0.5, 1.0, 4.0, 10.0}) {
        RicianParams rp{k, 1.5, 1.0};
        double power = 0.0;
        const int n = 50000;
        for (int i = 0; i < n; ++i) {
            power += std::norm(rician_tap(rp, 0.2, rng));
        }
        CHECK_THAT(power / n, WithinRel(2.25, 0.03));
    }
}

TEST_CASE("synth_multipath shapes", "[channel]")
{
    const CarrierConfig carrier;
    const PathLossParams p{1.0, 100.0, 2.0};
    const auto los = los_tap_jx(20.0, 2.0, p, 1.0, carrier);
    const RicianParams nlos{1.0, 0.3, 1.0};
    Rng rng(3);

    const auto one = synth_multipath(1, los, nlos, DelaySpread{}, rng);
    REQUIRE(one.size() == 1);
    CHECK(one.los().gain == los.gain);

    const auto four = synth_multipath(4, los, nlos, DelaySpread{1e-6}, rng, 20.0, carrier);
    REQUIRE(four.size() == 4);
    CHECK(four.los().gain == los.gain);
    for (std::size_t l = 1; l < four.size(); ++l) {
        CHECK(four[l].delay >= four[l - 1].delay);
        CHECK(four[l].delay > los.delay);
        CHECK(four[l].delay <= los.delay + 1e-6);
    }

    CHECK_THROWS_AS(synth_multipath(0, los, nlos, DelaySpread{}, rng), DomainError);
}

TEST_CASE("synth_multipath is reproducible for a fixed seed", "[channel]")
{
    const PathLossParams p{1.0, 100.0, 2.0};
    const auto los = los_tap_tx(20.0, p, 1.0);
    const RicianParams nlos{1.0, 0.3, 1.0};
    Rng a(99);
    Rng b(99);
    const auto ca = synth_multipath(4, los, nlos, DelaySpread{}, a);
    const auto cb = synth_multipath(4, los, nlos, DelaySpread{}, b);
    for (std::size_t l = 0; l < 4; ++l) {
        CHECK(ca[l].gain == cb[l].gain);
        CHECK(ca[l].delay == cb[l].delay);
    }
}

TEST_CASE("multipath channel rejects unsorted or empty taps", "[channel]")
{
    CHECK_THROWS_AS(MultipathChannel(std::vector<ChannelTap>{}), DomainError);
    CHECK_THROWS_AS(MultipathChannel({ChannelTap{1.0, 2e-6, 1.0}, ChannelTap{1.0, 1e-6, 1.0}}), DomainError);
    const MultipathChannel ok({ChannelTap{1.0, 0.0, 1.0}, ChannelTap{{0.0, 2.0}, 1e-7, 1.0}});
    CHECK(ok.total_gain() == cplx(1.0, 2.0));
}

TEST_CASE("free-space reference gain", "[channel]")
{
    const CarrierConfig c;
    const double g = free_space_reference_gain(0.1, c, 100.0);
    CHECK_THAT(g, WithinRel(std::sqrt(0.1) * (2.998e8 / 5.9e9) / (4.0 * kPi * 100.0), 1e-14));
    CHECK_THROWS_AS(free_space_reference_gain(0.0, c, 100.0), DomainError);
}
