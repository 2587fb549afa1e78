#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rsea/channel.hpp"
#include "rsea/common.hpp"

namespace rsea {

/// K complex symbols (pilot, jamming, received or noise).
class SymbolVector {
public:
    SymbolVector() = default;
    explicit SymbolVector(std::vector<cplx> samples);

    std::size_t size() const { return samples_.size(); }
    const cplx& operator[](std::size_t k) const { return samples_[k]; }
    const std::vector<cplx>& samples() const { return samples_; }
    Eigen::VectorXcd to_eigen() const;

    auto begin() const { return samples_.begin(); }
    auto end() const { return samples_.end(); }

private:
    std::vector<cplx> samples_;
};

/// The jammer repeats one symbol f. When f is unset a random unit-modulus
/// symbol is drawn for every pilot burst.
struct SimplifiedJamming {
    std::optional<cplx> f;
};

/// M distinct symbols, each held for one contiguous block of the burst
/// (block sizes differ by at most one, earlier blocks take the remainder).
struct PiecewiseJamming {
    std::vector<cplx> symbols;
};

using JammingForm = std::variant<SimplifiedJamming, PiecewiseJamming>;

struct NoiseModel {
    double sigma_n2 = 0.0;
    /// K x K noise covariance. Empty means sigma_n2 * I.
    Eigen::MatrixXcd covariance;
    int hidden_node_count = 0;
    double collision_prob_per_node = 0.01;
    /// Interference power added to the noise floor when a hidden node collides.
    double hidden_node_power = 0.0;

    /// C_w for a burst of length K, with `extra_power` added on the diagonal.
    Eigen::MatrixXcd covariance_matrix(std::size_t k_len, double extra_power = 0.0) const;
};

/// Received burst: per-delay-bin view (K x N) and its row sums.
struct ReceivedSignal {
    SymbolVector aggregate;
    Eigen::MatrixXcd resolved;
};

SymbolVector make_pilot(std::size_t k_len);

/// Group index (0..M-1) of every burst position.
std::vector<std::size_t> jamming_pattern(const JammingForm& form, std::size_t k_len);

SymbolVector make_jamming(const JammingForm& form, std::size_t k_len, Rng& rng);

SymbolVector zeros(std::size_t k_len);

/// y[k][l] = h1[l] x[k] + h2[l] s[k] + w[k][l], each column's noise drawn
/// from C_w (plus `extra_noise_power` on the diagonal).
ReceivedSignal synthesize_received(const MultipathChannel& h1, const MultipathChannel& h2,
                                   const SymbolVector& x, const SymbolVector& s,
                                   const NoiseModel& noise, Rng& rng, double extra_noise_power = 0.0);

double sinr_db(cplx h1_los_gain, cplx h2_los_gain, double noise_power);
double sinr_db(cplx h1_los_gain, cplx h2_los_gain, const NoiseModel& noise);

/// Probability that at least one hidden node collides with the burst.
double collision_probability(const NoiseModel& noise);

/// Interference power for one step: hidden_node_power on collision, else 0.
double hidden_node_interference(const NoiseModel& noise, Rng& rng);

double watts_to_dbm(double p_w);
double dbm_to_watts(double p_dbm);

/// Reactive jammer gate: transmit only when the sensed power is above threshold.
bool jammer_triggered(double sensed_power_w, double threshold_dbm);

}  // namespace rsea
