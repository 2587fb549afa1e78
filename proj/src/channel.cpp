#include "rsea/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rsea {

MultipathChannel::MultipathChannel(std::vector<ChannelTap> taps) : taps_(std::move(taps))
{
    if (taps_.empty()) {
        throw DomainError("MultipathChannel: at least one tap required");
    }
    for (std::size_t l = 0; l < taps_.size(); ++l) {
        const auto& t = taps_[l];
        if (!(t.delay >= 0.0) || !std::isfinite(t.gain.real()) || !std::isfinite(t.gain.imag())) {
            throw DomainError("MultipathChannel: tap " + std::to_string(l) + " has invalid gain/delay");
        }
        if (l > 0 && t.delay < taps_[l - 1].delay) {
            throw DomainError("MultipathChannel: taps must be sorted by delay");
        }
    }
}

cplx MultipathChannel::total_gain() const
{
    cplx sum{0.0, 0.0};
    for (const auto& t : taps_) {
        sum += t.gain;
    }
    return sum;
}

double free_space_reference_gain(double tx_power_w, const CarrierConfig& carrier, double d_ref)
{
    if (!(tx_power_w > 0.0) || !(d_ref > 0.0)) {
        throw DomainError("free_space_reference_gain: power and d_ref must be > 0");
    }
    return std::sqrt(tx_power_w) * carrier.lambda() / (4.0 * kPi * d_ref);
}

double path_loss(double d, const PathLossParams& p)
{
    if (!(d > 0.0)) {
        throw DomainError("path_loss: distance must be > 0 (got " + std::to_string(d) + ")");
    }
    return p.g0 * std::pow(p.d_ref / d, p.n_p);
}

double doppler_shift(double delta_u, const CarrierConfig& carrier, double cos_phi)
{
    return delta_u * carrier.f_c * cos_phi / carrier.c;
}

double doppler_phase(double delta_u, double tau, const CarrierConfig& carrier, double cos_phi)
{
    return 2.0 * kPi * carrier.f_c * (delta_u * cos_phi / carrier.c) * tau;
}

ChannelTap los_tap_jx(double delta_u, double dt_interval, const PathLossParams& p, cplx gamma2,
                      const CarrierConfig& carrier)
{
    if (!(delta_u > 0.0)) {
        throw DomainError("los_tap_jx: relative speed must be > 0");
    }
    if (!(dt_interval > 0.0)) {
        throw DomainError("los_tap_jx: interval must be > 0");
    }
    const double d = delta_u * dt_interval;
    const double tau = d / carrier.c;
    const double omega = doppler_phase(delta_u, tau, carrier);
    const double magnitude = std::abs(gamma2) * p.g0 * std::pow(p.d_ref / d, 2.0);
    ChannelTap tap;
    tap.gain = std::polar(magnitude, omega);
    tap.delay = tau;
    tap.cos_phi = 1.0;
    return tap;
}

ChannelTap los_tap_tx(double d_txrx, const PathLossParams& p, cplx gamma1)
{
    ChannelTap tap;
    tap.gain = gamma1 * path_loss(d_txrx, p);
    tap.delay = d_txrx / kSpeedOfLight;
    tap.cos_phi = 1.0;
    return tap;
}

cplx rician_tap(const RicianParams& rp, double los_phase, Rng& rng)
{
    if (!(rp.k_factor >= 0.0)) {
        throw DomainError("rician_tap: k_factor must be >= 0");
    }
    if (std::isinf(rp.k_factor)) {
        return std::polar(rp.sigma_q, los_phase);
    }
    const double k = rp.k_factor;
    const double specular = std::sqrt(k / (k + 1.0));
    const double scattered = std::sqrt(1.0 / (k + 1.0));
    return specular * std::polar(rp.sigma_q, los_phase)
           + scattered * complex_gaussian(rng, rp.sigma_q * rp.sigma_q);
}

MultipathChannel synth_multipath(std::size_t n_taps, const ChannelTap& los, const RicianParams& nlos,
                                 const DelaySpread& spread, Rng& rng, double delta_u,
                                 const CarrierConfig& carrier)
{
    if (n_taps < 1) {
        throw DomainError("synth_multipath: n_taps must be >= 1");
    }
    std::vector<ChannelTap> taps;
    taps.reserve(n_taps);
    taps.push_back(los);
    const double tau_max = std::max(spread.tau_max, std::numeric_limits<double>::min());
    for (std::size_t l = 1; l < n_taps; ++l) {
        ChannelTap t;
        // (0, tau_max]: reflect the half-open uniform draw.
        t.delay = los.delay + (tau_max - uniform(rng, 0.0, tau_max));
        t.cos_phi = uniform(rng, -1.0, 1.0);
        const double phase = doppler_phase(delta_u, t.delay, carrier, t.cos_phi);
        t.gain = rician_tap(nlos, phase, rng);
        taps.push_back(t);
    }
    std::stable_sort(taps.begin() + 1, taps.end(),
                     [](const ChannelTap& a, const ChannelTap& b) { return a.delay < b.delay; });
    return MultipathChannel(std::move(taps));
}

}  // namespace rsea
