#pragma once

#include <cstddef>
#include <vector>

#include "rsea/common.hpp"

namespace rsea {

struct CarrierConfig {
    double f_c = 5.9e9;           // Hz
    double c = kSpeedOfLight;     // m/s

    double lambda() const { return c / f_c; }
};

/// Amplitude path loss g0 * (d_ref / d)^n_p.
struct PathLossParams {
    double g0 = 1.0;
    double d_ref = 100.0;  // m
    double n_p = 2.0;
};

/// Amplitude gain at d_ref for a free-space link: sqrt(P_tx) * lambda / (4 pi d_ref),
/// so that |gain|^2 is the received power in watts for a unit-modulus symbol.
double free_space_reference_gain(double tx_power_w, const CarrierConfig& carrier, double d_ref);

struct RicianParams {
    double k_factor = 1.0;    // specular / scattered power
    double sigma_q = 1.0;     // total power is sigma_q^2
    cplx gamma_q{1.0, 0.0};   // LOS complex amplitude known to the receiver
};

struct ChannelTap {
    cplx gain{0.0, 0.0};
    double delay = 0.0;   // s
    double cos_phi = 1.0; // departure angle w.r.t. the jammer's velocity
};

/// N delay-resolved taps; tap 0 is the LOS ray.
class MultipathChannel {
public:
    MultipathChannel() = default;
    explicit MultipathChannel(std::vector<ChannelTap> taps);

    std::size_t size() const { return taps_.size(); }
    const ChannelTap& operator[](std::size_t l) const { return taps_[l]; }
    const ChannelTap& los() const { return taps_.front(); }
    const std::vector<ChannelTap>& taps() const { return taps_; }

    /// Sum of tap gains (the narrowband response).
    cplx total_gain() const;

private:
    std::vector<ChannelTap> taps_;
};

struct DelaySpread {
    double tau_max = 1e-6;  // excess delays drawn uniformly on (0, tau_max]
};

double path_loss(double d, const PathLossParams& p);

double doppler_shift(double delta_u, const CarrierConfig& carrier, double cos_phi);

/// Baseband LOS phase 2 pi f_c (delta_u cos_phi / c) tau.
double doppler_phase(double delta_u, double tau, const CarrierConfig& carrier, double cos_phi = 1.0);

/// Jammer-receiver LOS tap where the jammer closed d = delta_u * dt_interval.
ChannelTap los_tap_jx(double delta_u, double dt_interval, const PathLossParams& p, cplx gamma2,
                      const CarrierConfig& carrier);

/// Co-moving transmitter-receiver LOS tap; no Doppler term.
ChannelTap los_tap_tx(double d_txrx, const PathLossParams& p, cplx gamma1);

cplx rician_tap(const RicianParams& rp, double los_phase, Rng& rng);

/// Tap 0 is `los`; the other n_taps - 1 taps are Rician with excess delays
/// measured from the LOS delay, then sorted.
MultipathChannel synth_multipath(std::size_t n_taps, const ChannelTap& los, const RicianParams& nlos,
                                 const DelaySpread& spread, Rng& rng,
                                 double delta_u = 0.0, const CarrierConfig& carrier = {});

}  // namespace rsea
