#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace rsea {

using cplx = std::complex<double>;

/// Every scenario run and every Monte Carlo loop owns one of these.
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 2.998e8;

constexpr double kmh_to_ms(double kmh) { return kmh / 3.6; }
constexpr double ms_to_kmh(double ms) { return ms * 3.6; }

/// Input outside an operation's domain (non-positive distance, bad length, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The pilot/jamming system cannot be solved for the requested unknowns.
class IdentifiabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Jamming symbol groups could not be told apart.
class AmbiguityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configuration key is missing, unknown or out of range.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Zero-mean circularly-symmetric complex Gaussian with E|z|^2 = variance.
inline cplx complex_gaussian(Rng& rng, double variance)
{
    if (variance <= 0.0) {
        return {0.0, 0.0};
    }
    std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

inline double uniform(Rng& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

}  // namespace rsea
