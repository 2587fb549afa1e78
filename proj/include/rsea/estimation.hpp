#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rsea/channel.hpp"
#include "rsea/waveform.hpp"

namespace rsea {

/// Weighted least-squares estimate (X^H C^-1 X)^-1 X^H C^-1 y.
///
/// Throws DomainError when C_w is not positive definite and
/// IdentifiabilityError when the design matrix loses column rank.
Eigen::VectorXcd mmse_estimate(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& design,
                               const Eigen::MatrixXcd& c_w);

/// Per-bin estimate over a K x N delay-resolved observation.
struct CombinedEstimate {
    Eigen::MatrixXcd coefficients;  // P x N
    Eigen::MatrixXcd z;             // K x N fitted combined values, design * coefficients
};

CombinedEstimate mmse_estimate_resolved(const Eigen::MatrixXcd& y_resolved, const Eigen::MatrixXcd& design,
                                        const Eigen::MatrixXcd& c_w);

struct LosDecomposition {
    cplx h1_los{0.0, 0.0};
    /// (a1 + b1 j) s_k for every burst position.
    SymbolVector jamming_baseband;
    /// Unit-modulus jamming symbols. The common phase of h2 and s is not
    /// identifiable; it is carried by s_hat, leaving h2_los_hat real >= 0.
    SymbolVector s_hat;
    cplx h2_los_hat{0.0, 0.0};
    /// h2[l] * s for every delay bin (simplified form) or group 0 (piecewise form).
    std::vector<cplx> jammer_taps;
    double residual = 0.0;
    bool jammer_present = true;
};

/// Constant unknown jamming symbol. Requires K > 2N + 1.
LosDecomposition decompose_simplified(const CombinedEstimate& estimate, const MultipathChannel& h1_known,
                                      std::size_t n_taps);

/// M distinct unknown jamming symbols with a known burst pattern.
/// Requires K >= 2N + M + 1.
LosDecomposition decompose_unknown(const Eigen::MatrixXcd& y_resolved, const MultipathChannel& h1_known,
                                   const SymbolVector& pilot, std::size_t n_taps, std::size_t m_distinct,
                                   const std::vector<std::size_t>& pattern, const Eigen::MatrixXcd& c_w);

/// Group burst samples into m_distinct symbol classes. Exact repeats are
/// grouped directly; otherwise nearest-centroid clustering is used and an
/// AmbiguityError is raised if the resulting groups overlap.
std::vector<std::size_t> detect_pattern(std::span<const cplx> samples, std::size_t m_distinct);

/// a1 + b1 j.
cplx extract_los(const LosDecomposition& decomposition);

}  // namespace rsea
