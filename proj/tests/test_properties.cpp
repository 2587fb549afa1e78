#include <catch_amalgamated.hpp>

#include <cmath>

#include "ls_oracle.hpp"
#include "rsea/estimation.hpp"
#include "rsea/scenario.hpp"
#include "rsea/speed_estimator.hpp"

using namespace rsea;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

MultipathChannel flat(cplx g)
{
    return MultipathChannel({ChannelTap{g, 0.0, 1.0}});
}

oracle::Matrix to_rows(const Eigen::MatrixXcd& m)
{
    oracle::Matrix out(static_cast<std::size_t>(m.rows()), std::vector<cplx>(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("geometry invariants over random placements", "[properties]")
{
    Rng rng(101);
    for (int i = 0; i < 2000; ++i) {
        const VehicleState jx{{uniform(rng, -300, 300), uniform(rng, -300, 300)}, {uniform(rng, -30, 30), 0.0}, Role::Jx};
        const VehicleState rx{{uniform(rng, -300, 300), uniform(rng, -300, 300)},
                              {uniform(rng, -30, 30), uniform(rng, -30, 30)}, Role::Rx};
        const auto g = aop_geometry(jx, rx);
        CHECK(std::abs(g.cos_theta) <= 1.0);
        CHECK_THAT(g.d, WithinRel(std::hypot(g.dx, g.dy), 1e-15));
        CHECK_THAT(g.d, WithinRel((rx.position - jx.position).norm(), 1e-12));
        CHECK_THAT(g.cos_theta, WithinAbs(g.dx / g.d, 1e-15));
        CHECK(relative_speed_truth(jx, rx).value >= 0.0);
    }
}

TEST_CASE("same-direction truth is nondecreasing in cos_theta", "[properties]")
{
    Rng rng(102);
    for (int i = 0; i < 200; ++i) {
        const double uj = uniform(rng, 0, 30);
        const double ur = uniform(rng, 0, 30);
        // Holds while the signed sum stays nonnegative, which covers cos_theta in [0, 1].
        const double lo = uj > 0.0 ? std::max(-1.0, -ur / uj) : -1.0;
        double prev = -1.0;
        for (double c = lo; c <= 1.0; c += 0.05) {
            const double v = relative_speed_truth(uj, ur, c, DirectionMode::SameDirection).value;
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("path loss decreases and the inverse-square identity holds", "[properties]")
{
    Rng rng(103);
    const CarrierConfig carrier;
    for (int i = 0; i < 500; ++i) {
        PathLossParams p{uniform(rng, 1e-4, 2.0), uniform(rng, 10, 200), 2.0};
        const double d = uniform(rng, 1, 400);
        CHECK(path_loss(d * 1.01, p) < path_loss(d, p));

        const double du = uniform(rng, 0.1, 50);
        const double dt = uniform(rng, 0.5, 4);
        const cplx gamma2 = std::polar(uniform(rng, 0.1, 2.0), uniform(rng, -kPi, kPi));
        const auto tap = los_tap_jx(du, dt, p, gamma2, carrier);
        CHECK_THAT(std::abs(tap.gain) * std::pow(du * dt, 2.0), WithinRel(std::abs(gamma2) * p.g0 * p.d_ref * p.d_ref, 1e-12));
        const cplx unit = tap.gain / std::abs(tap.gain);
        CHECK_THAT(std::norm(unit), WithinAbs(1.0, 1e-14));
    }
}

TEST_CASE("doppler is linear in speed and in cos_phi", "[properties]")
{
    Rng rng(104);
    const CarrierConfig c;
    for (int i = 0; i < 200; ++i) {
        const double a = uniform(rng, 0, 40);
        const double b = uniform(rng, 0, 40);
        const double cp = uniform(rng, -1, 1);
        CHECK_THAT(doppler_shift(a + b, c, cp), WithinAbs(doppler_shift(a, c, cp) + doppler_shift(b, c, cp), 1e-9));
        CHECK_THAT(doppler_shift(a, c, 0.5 * cp), WithinAbs(0.5 * doppler_shift(a, c, cp), 1e-9));
    }
}

TEST_CASE("Rician scattered part is zero-mean and seed-reproducible", "[properties]")
{
    const RicianParams rp{1.0, 1.0, 1.0};
    const int n = 100000;
    Rng a(5);
    Rng b(5);
    const cplx specular = std::sqrt(0.5) * std::polar(1.0, 0.9);
    cplx mean{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const cplx va = rician_tap(rp, 0.9, a);
        REQUIRE(va == rician_tap(rp, 0.9, b));
        mean += va - specular;
    }
    mean /= double(n);
    CHECK(std::abs(mean) < 3.0 * rp.sigma_q / std::sqrt(double(n)));
}

TEST_CASE("noise-free reception is linear", "[properties]")
{
    Rng rng(106);
    for (int i = 0; i < 50; ++i) {
        const std::size_t k = 6;
        std::vector<cplx> xa(k);
        std::vector<cplx> xb(k);
        std::vector<cplx> s(k);
        for (std::size_t j = 0; j < k; ++j) {
            xa[j] = complex_gaussian(rng, 1.0);
            xb[j] = complex_gaussian(rng, 1.0);
            s[j] = complex_gaussian(rng, 1.0);
        }
        const cplx g1 = complex_gaussian(rng, 1.0);
        const cplx g2 = complex_gaussian(rng, 1.0);
        std::vector<cplx> xsum(k);
        for (std::size_t j = 0; j < k; ++j) {
            xsum[j] = xa[j] + xb[j];
        }
        const NoiseModel quiet;
        const auto ya = synthesize_received(flat(g1), flat(g2), SymbolVector(xa), SymbolVector(s), quiet, rng);
        const auto yb = synthesize_received(flat(g1), flat(0.0), SymbolVector(xb), SymbolVector(s), quiet, rng);
        const auto ys = synthesize_received(flat(g1), flat(g2), SymbolVector(xsum), SymbolVector(s), quiet, rng);
        const auto y2 = synthesize_received(flat(2.0 * g1), flat(2.0 * g2), SymbolVector(xa), SymbolVector(s), quiet, rng);
        for (std::size_t j = 0; j < k; ++j) {
            CHECK_THAT(std::abs(ys.aggregate[j] - ya.aggregate[j] - yb.aggregate[j]), WithinAbs(0.0, 1e-12));
            CHECK_THAT(std::abs(y2.aggregate[j] - 2.0 * ya.aggregate[j]), WithinAbs(0.0, 1e-12));
        }
    }
}

TEST_CASE("sinr is monotone in both gains", "[properties]")
{
    Rng rng(107);
    for (int i = 0; i < 300; ++i) {
        const double h1 = uniform(rng, 0.1, 3);
        const double h2 = uniform(rng, 0.0, 3);
        const double n = uniform(rng, 0.01, 1);
        CHECK(sinr_db(h1, h2 + 0.01, n) < sinr_db(h1, h2, n));
        CHECK(sinr_db(h1 + 0.01, h2, n) > sinr_db(h1, h2, n));
    }
}

TEST_CASE("MMSE with white noise matches an independent least-squares solve", "[properties]")
{
    Rng rng(108);
    for (int i = 0; i < 100; ++i) {
        const auto k = static_cast<Eigen::Index>(3 + i % 10);
        const auto p = static_cast<Eigen::Index>(1 + i % static_cast<int>(k - 1));
        Eigen::MatrixXcd x(k, p);
        Eigen::VectorXcd y(k);
        for (Eigen::Index r = 0; r < k; ++r) {
            y(r) = complex_gaussian(rng, 2.0);
            for (Eigen::Index c = 0; c < p; ++c) {
                x(r, c) = complex_gaussian(rng, 1.0);
            }
        }
        const double sigma2 = uniform(rng, 0.01, 5.0);
        const Eigen::VectorXcd got = mmse_estimate(y, x, sigma2 * Eigen::MatrixXcd::Identity(k, k));
        const auto ref = oracle::least_squares(to_rows(x), std::vector<cplx>(y.data(), y.data() + k));
        double num = 0.0;
        double den = 0.0;
        for (Eigen::Index c = 0; c < p; ++c) {
            num += std::norm(got(c) - ref[static_cast<std::size_t>(c)]);
            den += std::norm(ref[static_cast<std::size_t>(c)]);
        }
        CHECK(std::sqrt(num / den) < 1e-9);
    }
}

TEST_CASE("zero-noise decomposition recovers |h2| across a parameter grid", "[properties]")
{
    Rng rng(109);
    const CarrierConfig carrier;
    for (double du : {1.0, 7.5, 25.0, 40.0}) {
        for (double dt : {1.0, 2.0, 4.0}) {
            for (double g0 : {1e-5, 0.3, 2.0}) {
                for (double gmag : {0.5, 1.0}) {
                    const PathLossParams p{g0, 100.0, 2.0};
                    const cplx gamma2 = std::polar(gmag, 0.4);
                    const auto tap = los_tap_jx(du, dt, p, gamma2, carrier);
                    const auto h1 = flat(los_tap_tx(20.0, p, 1.0).gain);
                    const auto pilot = make_pilot(4);
                    const auto jam = make_jamming(SimplifiedJamming{}, 4, rng);
                    const auto rx = synthesize_received(h1, MultipathChannel({tap}), pilot, jam, NoiseModel{}, rng);
                    const auto z = mmse_estimate_resolved(rx.resolved, pilot.to_eigen(), Eigen::MatrixXcd::Identity(4, 4));
                    const auto d = decompose_simplified(z, h1, 1);
                    CHECK_THAT(std::abs(d.h2_los_hat), WithinRel(std::abs(tap.gain), 1e-9));
                }
            }
        }
    }
}

TEST_CASE("estimator MSE halves when the pilot doubles", "[properties]")
{
    Rng rng(110);
    const double sigma2 = 0.5;
    const cplx truth{1.0, -2.0};
    auto mse = [&](Eigen::Index k) {
        const Eigen::MatrixXcd x = Eigen::MatrixXcd::Ones(k, 1);
        const Eigen::MatrixXcd c = sigma2 * Eigen::MatrixXcd::Identity(k, k);
        double acc = 0.0;
        const int trials = 20000;
        for (int t = 0; t < trials; ++t) {
            Eigen::VectorXcd y(k);
            for (Eigen::Index r = 0; r < k; ++r) {
                y(r) = truth + complex_gaussian(rng, sigma2);
            }
            acc += std::norm(mmse_estimate(y, x, c)(0) - truth);
        }
        return acc / trials;
    };
    const double m8 = mse(8);
    const double m16 = mse(16);
    CHECK_THAT(m8 / m16, WithinRel(2.0, 0.2));
}

TEST_CASE("decomposed magnitude ignores the jamming phase", "[properties]")
{
    Rng rng(111);
    const auto pilot = make_pilot(5);
    const auto h1 = flat(0.8);
    double first = -1.0;
    for (int i = 0; i < 24; ++i) {
        const cplx f = std::polar(1.0, 2.0 * kPi * i / 24.0);
        const auto rx = synthesize_received(h1, flat(1.7), pilot, make_jamming(SimplifiedJamming{f}, 5, rng),
                                            NoiseModel{}, rng);
        const auto z = mmse_estimate_resolved(rx.resolved, pilot.to_eigen(), Eigen::MatrixXcd::Identity(5, 5));
        const double mag = std::abs(decompose_simplified(z, h1, 1).h2_los_hat);
        if (first < 0.0) {
            first = mag;
        }
        CHECK_THAT(mag, WithinRel(first, 1e-12));
    }
}

TEST_CASE("speed estimate is monotone and scales with the channel gain", "[properties]")
{
    auto cfg = default_rsea_config();
    Rng rng(112);
    for (int i = 0; i < 200; ++i) {
        const double mag = uniform(rng, 1e-9, 1e-3);
        cfg.dt_interval = 2.0;
        const double base = estimate_delta_u(mag, cfg)->delta_u_hat;
        CHECK(estimate_delta_u(mag * 1.01, cfg)->delta_u_hat < base);
        cfg.dt_interval = 2.02;
        CHECK(estimate_delta_u(mag, cfg)->delta_u_hat < base);
        cfg.dt_interval = 2.0;

        const double c = uniform(rng, 0.2, 5.0);
        auto scaled = cfg;
        scaled.pathloss.g0 *= c;
        CHECK_THAT(estimate_delta_u(mag, scaled)->delta_u_hat, WithinRel(base * std::sqrt(c), 1e-12));
    }
}

TEST_CASE("step estimates ignore the jamming phase", "[properties]")
{
    auto cfg = default_rsea_config();
    World w;
    w.rx = VehicleState{{0, 0}, {10, 0}, Role::Rx};
    w.tx = VehicleState{{20, 0}, {10, 0}, Role::Tx};
    w.jx = VehicleState{{-12, 0}, {6, 0}, Role::Jx};
    for (int i = 0; i < 8; ++i) {
        cfg.jamming = SimplifiedJamming{std::polar(1.0, i * 0.7)};
        Rng rng(113);
        const auto step = rsea_step(w, cfg, NoiseModel{}, rng);
        REQUIRE(step.estimate);
        CHECK_THAT(step.estimate->delta_u_hat, WithinRel(16.0, 1e-6));
    }
}

TEST_CASE("zone report invariants across seeds and configs", "[properties]")
{
    for (auto cfg : {behavior1_config(), behavior2_config(), oncoming_config()}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            cfg.seed = seed;
            const auto run = run_scenario(cfg);
            const auto z = detect_zones(run.records, cfg.effective_radius_m);
            if (z.black_hole) {
                CHECK(z.dt_eff <= z.black_hole->t_start);
                CHECK(z.black_hole->t_start >= 0.0);
                CHECK(z.black_hole->t_end <= cfg.duration_s + 1e-9);
            }
            for (const auto& r : run.records) {
                if (r.delta_u_hat) {
                    CHECK(std::isfinite(*r.delta_u_hat));
                    CHECK(*r.delta_u_hat >= 0.0);
                }
            }
        }
    }
}
