#include "rsea/speed_estimator.hpp"

#include <cmath>
#include <limits>

#include "rsea/estimation.hpp"

namespace rsea {

RseaConfig default_rsea_config()
{
    RseaConfig cfg;
    cfg.pathloss.g0 = free_space_reference_gain(cfg.tx_power_w, cfg.carrier, cfg.pathloss.d_ref);
    return cfg;
}

std::optional<SpeedEstimate> estimate_delta_u(cplx los_baseband, const RseaConfig& cfg, double timestamp)
{
    const double mag2 = std::norm(los_baseband);
    if (mag2 == 0.0) {
        return std::nullopt;
    }
    if (!(cfg.dt_interval > 0.0)) {
        throw DomainError("estimate_delta_u: interval must be > 0");
    }
    const double g = std::abs(cfg.gamma2) * cfg.pathloss.g0;
    const double d_ref2 = cfg.pathloss.d_ref * cfg.pathloss.d_ref;
    const double dt2 = cfg.dt_interval * cfg.dt_interval;
    // Fourth root of g^2 d_ref^4 / (dt^4 (a1^2 + b1^2)).
    SpeedEstimate est;
    est.delta_u_hat = std::sqrt(g * d_ref2 / (std::sqrt(mag2) * dt2));
    est.timestamp = timestamp;
    est.diagnostics.los_magnitude = std::sqrt(mag2);
    est.diagnostics.phase_check = phase_consistency(los_baseband, est.delta_u_hat, cfg);
    return est;
}

double phase_consistency(cplx los_baseband, double delta_u_hat, const RseaConfig& cfg)
{
    const double tau = delta_u_hat * cfg.dt_interval / cfg.carrier.c;
    const double omega = doppler_phase(delta_u_hat, tau, cfg.carrier);
    return std::abs(std::polar(1.0, std::arg(los_baseband)) - std::polar(1.0, omega));
}

double sensed_pilot_power(const World& world, const RseaConfig& cfg)
{
    const double d = (world.jx.position - world.tx.position).norm();
    if (d <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::norm(cfg.gamma1 * path_loss(d, cfg.pathloss));
}

StepResult rsea_step(const World& world, const RseaConfig& cfg, const NoiseModel& noise, Rng& rng,
                     double timestamp)
{
    StepResult out;
    out.delta_u_true = relative_speed_truth(world.jx, world.rx).value;
    out.jammer_active = jammer_triggered(sensed_pilot_power(world, cfg), cfg.sensing_threshold_dbm);

    const std::size_t k_len = cfg.k_pilot;
    const std::size_t n_taps = cfg.n_taps;
    const SymbolVector pilot = make_pilot(k_len);
    const SymbolVector jam = out.jammer_active ? make_jamming(cfg.jamming, k_len, rng) : zeros(k_len);

    const double d_txrx = (world.tx.position - world.rx.position).norm();
    const ChannelTap los1 = los_tap_tx(d_txrx, cfg.pathloss, cfg.gamma1);
    RicianParams nlos1{cfg.nlos_k_factor, cfg.nlos_relative_sigma * std::abs(los1.gain), cfg.gamma1};
    const MultipathChannel h1 = synth_multipath(n_taps, los1, nlos1, cfg.delay_spread, rng);

    const ChannelTap los2 = los_tap_jx(out.delta_u_true, cfg.dt_interval, cfg.pathloss, cfg.gamma2, cfg.carrier);
    RicianParams nlos2{cfg.nlos_k_factor, cfg.nlos_relative_sigma * std::abs(los2.gain), cfg.gamma2};
    const MultipathChannel h2 =
        synth_multipath(n_taps, los2, nlos2, cfg.delay_spread, rng, out.delta_u_true, cfg.carrier);

    out.h1_los = los1.gain;
    out.h2_los = los2.gain;
    out.interference_power = hidden_node_interference(noise, rng);
    out.noise_power = noise.sigma_n2 + out.interference_power;

    const ReceivedSignal rx = synthesize_received(h1, h2, pilot, jam, noise, rng, out.interference_power);
    if (!out.jammer_active) {
        return out;
    }

    Eigen::MatrixXcd c_w = noise.covariance_matrix(k_len, out.interference_power);
    if (c_w.cwiseAbs().maxCoeff() == 0.0) {
        // Noise-free: plain least squares.
        c_w = Eigen::MatrixXcd::Identity(c_w.rows(), c_w.cols());
    }

    LosDecomposition decomp;
    if (std::holds_alternative<SimplifiedJamming>(cfg.jamming)) {
        const Eigen::MatrixXcd design = pilot.to_eigen();
        const CombinedEstimate z = mmse_estimate_resolved(rx.resolved, design, c_w);
        decomp = decompose_simplified(z, h1, n_taps);
    } else {
        const std::size_t m = std::get<PiecewiseJamming>(cfg.jamming).symbols.size();
        const Eigen::VectorXcd los_bin = rx.resolved.col(0) - h1.los().gain * pilot.to_eigen();
        const std::vector<cplx> samples(los_bin.data(), los_bin.data() + los_bin.size());
        const auto pattern = detect_pattern(samples, m);
        decomp = decompose_unknown(rx.resolved, h1, pilot, n_taps, m, pattern, c_w);
    }

    out.estimate = estimate_delta_u(extract_los(decomp), cfg, timestamp);
    if (out.estimate) {
        out.estimate->diagnostics.residual = decomp.residual;
        out.estimate->diagnostics.phase_check =
            phase_consistency(decomp.jamming_baseband[0], out.estimate->delta_u_hat, cfg);
    }
    return out;
}

}  // namespace rsea
