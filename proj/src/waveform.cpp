#include "rsea/waveform.hpp"

#include <cmath>

namespace rsea {

SymbolVector::SymbolVector(std::vector<cplx> samples) : samples_(std::move(samples))
{
    if (samples_.empty()) {
        throw DomainError("SymbolVector: length must be >= 1");
    }
    for (const auto& v : samples_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw DomainError("SymbolVector: non-finite sample");
        }
    }
}

Eigen::VectorXcd SymbolVector::to_eigen() const
{
    Eigen::VectorXcd v(static_cast<Eigen::Index>(samples_.size()));
    for (std::size_t k = 0; k < samples_.size(); ++k) {
        v(static_cast<Eigen::Index>(k)) = samples_[k];
    }
    return v;
}

Eigen::MatrixXcd NoiseModel::covariance_matrix(std::size_t k_len, double extra_power) const
{
    const auto n = static_cast<Eigen::Index>(k_len);
    Eigen::MatrixXcd c;
    if (covariance.size() == 0) {
        c = Eigen::MatrixXcd::Identity(n, n) * sigma_n2;
    } else {
        if (covariance.rows() != n || covariance.cols() != n) {
            throw DomainError("NoiseModel: covariance is not K x K");
        }
        c = covariance;
    }
    c.diagonal().array() += extra_power;
    return c;
}

SymbolVector make_pilot(std::size_t k_len)
{
    if (k_len < 1) {
        throw DomainError("make_pilot: length must be >= 1");
    }
    return SymbolVector(std::vector<cplx>(k_len, cplx{1.0, 0.0}));
}

SymbolVector zeros(std::size_t k_len)
{
    return SymbolVector(std::vector<cplx>(k_len, cplx{0.0, 0.0}));
}

std::vector<std::size_t> jamming_pattern(const JammingForm& form, std::size_t k_len)
{
    if (k_len < 1) {
        throw DomainError("jamming_pattern: length must be >= 1");
    }
    if (std::holds_alternative<SimplifiedJamming>(form)) {
        return std::vector<std::size_t>(k_len, 0);
    }
    const auto& pw = std::get<PiecewiseJamming>(form);
    const std::size_t m = pw.symbols.size();
    if (m < 1) {
        throw DomainError("jamming_pattern: piecewise form needs at least one symbol");
    }
    if (m > k_len) {
        throw DomainError("jamming_pattern: " + std::to_string(m) + " symbols do not fit in "
                          + std::to_string(k_len) + " slots");
    }
    std::vector<std::size_t> pattern;
    pattern.reserve(k_len);
    const std::size_t base = k_len / m;
    const std::size_t extra = k_len % m;
    for (std::size_t g = 0; g < m; ++g) {
        const std::size_t len = base + (g < extra ? 1 : 0);
        pattern.insert(pattern.end(), len, g);
    }
    return pattern;
}

namespace {

cplx unit(cplx v)
{
    const double a = std::abs(v);
    if (a == 0.0) {
        throw DomainError("jamming symbol must be non-zero");
    }
    return v / a;
}

}  // namespace

SymbolVector make_jamming(const JammingForm& form, std::size_t k_len, Rng& rng)
{
    const auto pattern = jamming_pattern(form, k_len);
    std::vector<cplx> out(k_len);
    if (const auto* simp = std::get_if<SimplifiedJamming>(&form)) {
        const cplx f = simp->f ? unit(*simp->f) : std::polar(1.0, uniform(rng, 0.0, 2.0 * kPi));
        std::fill(out.begin(), out.end(), f);
    } else {
        const auto& pw = std::get<PiecewiseJamming>(form);
        for (std::size_t k = 0; k < k_len; ++k) {
            out[k] = unit(pw.symbols[pattern[k]]);
        }
    }
    return SymbolVector(std::move(out));
}

ReceivedSignal synthesize_received(const MultipathChannel& h1, const MultipathChannel& h2,
                                   const SymbolVector& x, const SymbolVector& s,
                                   const NoiseModel& noise, Rng& rng, double extra_noise_power)
{
    if (x.size() != s.size()) {
        throw DomainError("synthesize_received: pilot and jamming lengths differ");
    }
    if (h1.size() != h2.size()) {
        throw DomainError("synthesize_received: channels must share the delay-bin grid");
    }
    const auto k_len = static_cast<Eigen::Index>(x.size());
    const auto n_taps = static_cast<Eigen::Index>(h1.size());

    const Eigen::MatrixXcd cw = noise.covariance_matrix(x.size(), extra_noise_power);
    const bool noisy = cw.cwiseAbs().maxCoeff() > 0.0;
    Eigen::MatrixXcd chol;
    if (noisy) {
        Eigen::LLT<Eigen::MatrixXcd> llt(cw);
        if (llt.info() != Eigen::Success) {
            throw DomainError("synthesize_received: noise covariance is not positive definite");
        }
        chol = llt.matrixL();
    }

    ReceivedSignal out;
    out.resolved.resize(k_len, n_taps);
    for (Eigen::Index l = 0; l < n_taps; ++l) {
        const auto li = static_cast<std::size_t>(l);
        for (Eigen::Index k = 0; k < k_len; ++k) {
            const auto ki = static_cast<std::size_t>(k);
            out.resolved(k, l) = h1[li].gain * x[ki] + h2[li].gain * s[ki];
        }
        if (noisy) {
            Eigen::VectorXcd white(k_len);
            for (Eigen::Index k = 0; k < k_len; ++k) {
                white(k) = complex_gaussian(rng, 1.0);
            }
            out.resolved.col(l) += chol * white;
        }
    }
    const Eigen::VectorXcd agg = out.resolved.rowwise().sum();
    out.aggregate = SymbolVector(std::vector<cplx>(agg.data(), agg.data() + agg.size()));
    return out;
}

double sinr_db(cplx h1_los_gain, cplx h2_los_gain, double noise_power)
{
    const double signal = std::norm(h1_los_gain);
    const double denom = std::norm(h2_los_gain) + noise_power;
    return 10.0 * std::log10(signal / denom);
}

double sinr_db(cplx h1_los_gain, cplx h2_los_gain, const NoiseModel& noise)
{
    return sinr_db(h1_los_gain, h2_los_gain, noise.sigma_n2);
}

double collision_probability(const NoiseModel& noise)
{
    if (noise.hidden_node_count <= 0) {
        return 0.0;
    }
    return 1.0 - std::pow(1.0 - noise.collision_prob_per_node, noise.hidden_node_count);
}

double hidden_node_interference(const NoiseModel& noise, Rng& rng)
{
    const double p = collision_probability(noise);
    if (p <= 0.0) {
        return 0.0;
    }
    std::bernoulli_distribution hit(p);
    return hit(rng) ? noise.hidden_node_power : 0.0;
}

double watts_to_dbm(double p_w)
{
    return 10.0 * std::log10(p_w) + 30.0;
}

double dbm_to_watts(double p_dbm)
{
    return std::pow(10.0, (p_dbm - 30.0) / 10.0);
}

bool jammer_triggered(double sensed_power_w, double threshold_dbm)
{
    return sensed_power_w > 0.0 && watts_to_dbm(sensed_power_w) > threshold_dbm;
}

}  // namespace rsea
