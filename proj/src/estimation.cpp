#include "rsea/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rsea {

Eigen::VectorXcd mmse_estimate(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& design,
                               const Eigen::MatrixXcd& c_w)
{
    const Eigen::Index k_len = y.size();
    if (design.rows() != k_len || c_w.rows() != k_len || c_w.cols() != k_len) {
        throw DomainError("mmse_estimate: y, design and C_w dimensions disagree");
    }
    if (design.cols() < 1) {
        throw DomainError("mmse_estimate: design needs at least one column");
    }
    if (design.cols() > k_len) {
        throw IdentifiabilityError("mmse_estimate: " + std::to_string(design.cols())
                                   + " unknowns exceed " + std::to_string(k_len) + " observations");
    }

    Eigen::LLT<Eigen::MatrixXcd> llt(c_w);
    if (llt.info() != Eigen::Success) {
        throw DomainError("mmse_estimate: C_w is not positive definite");
    }
    // Whitening turns the weighted problem into ordinary least squares.
    const Eigen::MatrixXcd a = llt.matrixL().solve(design);
    const Eigen::VectorXcd b = llt.matrixL().solve(y);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
    qr.setThreshold(1e-10);
    if (qr.rank() < design.cols()) {
        throw IdentifiabilityError("mmse_estimate: design matrix is rank-deficient (rank "
                                   + std::to_string(qr.rank()) + " < "
                                   + std::to_string(design.cols()) + " unknowns)");
    }
    return qr.solve(b);
}

CombinedEstimate mmse_estimate_resolved(const Eigen::MatrixXcd& y_resolved, const Eigen::MatrixXcd& design,
                                        const Eigen::MatrixXcd& c_w)
{
    CombinedEstimate out;
    out.coefficients.resize(design.cols(), y_resolved.cols());
    for (Eigen::Index l = 0; l < y_resolved.cols(); ++l) {
        out.coefficients.col(l) = mmse_estimate(y_resolved.col(l), design, c_w);
    }
    out.z = design * out.coefficients;
    return out;
}

namespace {

void require_taps(const MultipathChannel& h1_known, Eigen::Index bins, std::size_t n_taps)
{
    if (n_taps < 1) {
        throw DomainError("decomposition: n_taps must be >= 1");
    }
    if (static_cast<std::size_t>(bins) != n_taps) {
        throw DomainError("decomposition: observation has " + std::to_string(bins) + " delay bins, expected "
                          + std::to_string(n_taps));
    }
    if (h1_known.size() < n_taps) {
        throw DomainError("decomposition: known Tx-Rx channel has fewer taps than the observation");
    }
}

}  // namespace

LosDecomposition decompose_simplified(const CombinedEstimate& estimate, const MultipathChannel& h1_known,
                                      std::size_t n_taps)
{
    const Eigen::MatrixXcd& z = estimate.z;
    require_taps(h1_known, z.cols(), n_taps);
    const auto k_len = static_cast<std::size_t>(z.rows());
    if (k_len <= 2 * n_taps + 1) {
        throw IdentifiabilityError("simplified jamming needs K > 2N+1 (K=" + std::to_string(k_len)
                                   + ", N=" + std::to_string(n_taps) + ")");
    }

    LosDecomposition out;
    out.h1_los = h1_known.los().gain;
    out.jammer_taps.resize(n_taps);
    double residual2 = 0.0;
    for (std::size_t l = 0; l < n_taps; ++l) {
        const auto col = z.col(static_cast<Eigen::Index>(l));
        const cplx mean = col.mean();
        residual2 += (col.array() - mean).abs2().sum();
        out.jammer_taps[l] = mean - h1_known[l].gain;
    }
    out.residual = std::sqrt(residual2);

    const cplx g0 = out.jammer_taps.front();
    out.jamming_baseband = SymbolVector(std::vector<cplx>(k_len, g0));
    const double mag = std::abs(g0);
    if (mag == 0.0) {
        out.jammer_present = false;
        out.s_hat = zeros(k_len);
        out.h2_los_hat = 0.0;
        return out;
    }
    const cplx s = g0 / mag;
    out.s_hat = SymbolVector(std::vector<cplx>(k_len, s));
    out.h2_los_hat = g0 * std::conj(s);
    return out;
}

LosDecomposition decompose_unknown(const Eigen::MatrixXcd& y_resolved, const MultipathChannel& h1_known,
                                   const SymbolVector& pilot, std::size_t n_taps, std::size_t m_distinct,
                                   const std::vector<std::size_t>& pattern, const Eigen::MatrixXcd& c_w)
{
    require_taps(h1_known, y_resolved.cols(), n_taps);
    const auto k_len = static_cast<std::size_t>(y_resolved.rows());
    if (m_distinct < 1) {
        throw DomainError("decompose_unknown: m_distinct must be >= 1");
    }
    if (k_len < 2 * n_taps + m_distinct + 1) {
        throw IdentifiabilityError("unknown jamming needs K >= 2N+M+1 (K=" + std::to_string(k_len)
                                   + ", N=" + std::to_string(n_taps) + ", M=" + std::to_string(m_distinct) + ")");
    }
    if (pilot.size() != k_len || pattern.size() != k_len) {
        throw DomainError("decompose_unknown: pilot/pattern length differs from the observation");
    }

    const auto k_rows = static_cast<Eigen::Index>(k_len);
    const auto m_cols = static_cast<Eigen::Index>(m_distinct);
    Eigen::MatrixXcd indicator = Eigen::MatrixXcd::Zero(k_rows, m_cols);
    for (std::size_t k = 0; k < k_len; ++k) {
        if (pattern[k] >= m_distinct) {
            throw DomainError("decompose_unknown: pattern index out of range");
        }
        indicator(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(pattern[k])) = 1.0;
    }
    const Eigen::VectorXcd x = pilot.to_eigen();

    LosDecomposition out;
    out.h1_los = h1_known.los().gain;
    out.jammer_taps.resize(n_taps);
    Eigen::VectorXcd g_los;
    double residual2 = 0.0;
    for (std::size_t l = 0; l < n_taps; ++l) {
        const Eigen::VectorXcd r = y_resolved.col(static_cast<Eigen::Index>(l)) - h1_known[l].gain * x;
        const Eigen::VectorXcd g = mmse_estimate(r, indicator, c_w);
        residual2 += (r - indicator * g).squaredNorm();
        out.jammer_taps[l] = g(0);
        if (l == 0) {
            g_los = g;
        }
    }
    out.residual = std::sqrt(residual2);

    // Unit-modulus symbols: every group sees |h2| directly.
    const double h2_mag = g_los.cwiseAbs().mean();
    std::vector<cplx> baseband(k_len);
    std::vector<cplx> s_hat(k_len);
    for (std::size_t k = 0; k < k_len; ++k) {
        const cplx g = g_los(static_cast<Eigen::Index>(pattern[k]));
        baseband[k] = g;
        s_hat[k] = std::abs(g) > 0.0 ? g / std::abs(g) : cplx{0.0, 0.0};
    }
    out.jamming_baseband = SymbolVector(std::move(baseband));
    out.s_hat = SymbolVector(std::move(s_hat));
    out.h2_los_hat = h2_mag;
    out.jammer_present = h2_mag > 0.0;
    return out;
}

std::vector<std::size_t> detect_pattern(std::span<const cplx> samples, std::size_t m_distinct)
{
    const std::size_t k_len = samples.size();
    if (m_distinct < 1 || m_distinct > k_len) {
        throw DomainError("detect_pattern: need 1 <= M <= K");
    }
    double scale = 0.0;
    for (const auto& v : samples) {
        scale = std::max(scale, std::abs(v));
    }
    const double tol = 1e-9 * std::max(scale, std::numeric_limits<double>::min());

    // Exact repeats.
    std::vector<cplx> reps;
    std::vector<std::size_t> labels(k_len);
    for (std::size_t k = 0; k < k_len; ++k) {
        auto it = std::find_if(reps.begin(), reps.end(),
                               [&](const cplx& r) { return std::abs(r - samples[k]) <= tol; });
        labels[k] = static_cast<std::size_t>(it - reps.begin());
        if (it == reps.end()) {
            reps.push_back(samples[k]);
        }
    }
    if (reps.size() == m_distinct) {
        return labels;
    }
    if (reps.size() < m_distinct) {
        throw AmbiguityError("detect_pattern: only " + std::to_string(reps.size())
                             + " distinct values for " + std::to_string(m_distinct) + " symbols");
    }

    // Farthest-point seeding, then Lloyd iterations.
    std::vector<cplx> centroids{samples[0]};
    while (centroids.size() < m_distinct) {
        std::size_t best = 0;
        double best_d = -1.0;
        for (std::size_t k = 0; k < k_len; ++k) {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) {
                d = std::min(d, std::abs(samples[k] - c));
            }
            if (d > best_d) {
                best_d = d;
                best = k;
            }
        }
        centroids.push_back(samples[best]);
    }
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        for (std::size_t k = 0; k < k_len; ++k) {
            std::size_t arg = 0;
            for (std::size_t c = 1; c < m_distinct; ++c) {
                if (std::abs(samples[k] - centroids[c]) < std::abs(samples[k] - centroids[arg])) {
                    arg = c;
                }
            }
            if (labels[k] != arg) {
                changed = true;
                labels[k] = arg;
            }
        }
        std::vector<cplx> sum(m_distinct, cplx{0.0, 0.0});
        std::vector<std::size_t> count(m_distinct, 0);
        for (std::size_t k = 0; k < k_len; ++k) {
            sum[labels[k]] += samples[k];
            ++count[labels[k]];
        }
        for (std::size_t c = 0; c < m_distinct; ++c) {
            if (count[c] == 0) {
                throw AmbiguityError("detect_pattern: empty symbol group");
            }
            centroids[c] = sum[c] / static_cast<double>(count[c]);
        }
        if (!changed && iter > 0) {
            break;
        }
    }

    double within = 0.0;
    for (std::size_t k = 0; k < k_len; ++k) {
        within += std::norm(samples[k] - centroids[labels[k]]);
    }
    const double spread = k_len > m_distinct ? std::sqrt(within / static_cast<double>(k_len - m_distinct)) : 0.0;
    for (std::size_t a = 0; a < m_distinct; ++a) {
        for (std::size_t b = a + 1; b < m_distinct; ++b) {
            if (std::abs(centroids[a] - centroids[b]) <= 3.0 * spread) {
                throw AmbiguityError("detect_pattern: symbol groups " + std::to_string(a) + " and "
                                     + std::to_string(b) + " are not separable");
            }
        }
    }

    // Relabel by first appearance so group 0 owns the first burst sample.
    std::vector<std::size_t> remap(m_distinct, m_distinct);
    std::size_t next = 0;
    for (auto& lab : labels) {
        if (remap[lab] == m_distinct) {
            remap[lab] = next++;
        }
        lab = remap[lab];
    }
    return labels;
}

cplx extract_los(const LosDecomposition& decomposition)
{
    return decomposition.jammer_present ? decomposition.h2_los_hat : cplx{0.0, 0.0};
}

}  // namespace rsea
