#pragma once

#include <cstddef>
#include <optional>

#include "rsea/channel.hpp"
#include "rsea/common.hpp"
#include "rsea/geometry.hpp"
#include "rsea/waveform.hpp"

namespace rsea {

struct RseaConfig {
    double dt_interval = 2.0;  // s between two applications
    CarrierConfig carrier;
    PathLossParams pathloss;
    cplx gamma1{1.0, 0.0};
    cplx gamma2{1.0, 0.0};
    std::size_t n_taps = 4;
    std::size_t k_pilot = 10;  // 2N + 2
    double d_txrx = 20.0;      // m, platoon spacing
    JammingForm jamming = SimplifiedJamming{};

    // NLOS rays: Rician taps scaled relative to the LOS magnitude of their link.
    double nlos_k_factor = 1.0;
    double nlos_relative_sigma = 0.3;
    DelaySpread delay_spread;

    double tx_power_w = 0.1;
    double sensing_threshold_dbm = -86.0;
};

/// Defaults with g0 set from the transmit power (free space at d_ref).
RseaConfig default_rsea_config();

struct EstimateDiagnostics {
    double los_magnitude = 0.0;
    double residual = 0.0;
    double phase_check = 0.0;
};

struct SpeedEstimate {
    double delta_u_hat = 0.0;  // m/s
    double timestamp = 0.0;    // s
    EstimateDiagnostics diagnostics;
};

/// Inverts |h2_los| = |gamma2| g0 (d_ref / (du dt))^2 for du.
/// Returns nothing when the LOS baseband is zero (no jammer).
std::optional<SpeedEstimate> estimate_delta_u(cplx los_baseband, const RseaConfig& cfg, double timestamp = 0.0);

/// |e^{j arg(los)} - e^{j omega2(du_hat)}|, in [0, 2]. Diagnostic only.
double phase_consistency(cplx los_baseband, double delta_u_hat, const RseaConfig& cfg);

struct World {
    VehicleState tx;
    VehicleState rx;
    VehicleState jx;
};

struct StepResult {
    std::optional<SpeedEstimate> estimate;
    double delta_u_true = 0.0;
    bool jammer_active = false;
    double noise_power = 0.0;         // sigma_n^2 plus hidden-node interference
    double interference_power = 0.0;  // hidden-node share of noise_power
    cplx h1_los{0.0, 0.0};
    cplx h2_los{0.0, 0.0};            // model LOS tap fed to the receiver
};

/// Power (W) the jammer senses from the transmitter's burst.
double sensed_pilot_power(const World& world, const RseaConfig& cfg);

/// One pilot burst: synthesize the channels for the current geometry, receive,
/// estimate the combined vector, decompose it and invert the LOS magnitude.
/// Identifiability and ambiguity errors propagate to the caller.
StepResult rsea_step(const World& world, const RseaConfig& cfg, const NoiseModel& noise, Rng& rng,
                     double timestamp = 0.0);

}  // namespace rsea
