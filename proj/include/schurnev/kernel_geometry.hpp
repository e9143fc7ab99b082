#pragma once

// Reproducing kernels of the model space K_theta, Malmquist-Walsh
// functions, and the closed-form distance formulas driven by the
// Schur-Nevanlinna recursion, plus per-truncation distance traces.

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "schurnev/disc.hpp"
#include "schurnev/errors.hpp"
#include "schurnev/schur_function.hpp"
#include "schurnev/schur_recursion.hpp"

namespace schurnev {

struct KernelFamilySpec {
    SchurFn theta;
    DiscSequence seq;
};

// k_theta(lambda, z) = (1 - conj(theta(lambda)) theta(z)) / (1 - conj(lambda) z)
inline Complex model_kernel(const SchurFn& theta, const DiscPoint& lambda, Complex z) {
    const Complex tl = eval(theta, lambda.value());
    return (1.0 - std::conj(tl) * eval(theta, z)) / (1.0 - std::conj(lambda.value()) * z);
}

// ||k_theta(lambda,.)||^2 = (1 - |theta(lambda)|^2) / (1 - |lambda|^2)
inline double model_kernel_norm_sq(const SchurFn& theta, const DiscPoint& lambda) {
    const Complex tl = eval(theta, lambda.value());
    if (std::abs(tl) >= 1.0 - 1e-12)
        throw DegenerateKernel("kernel at lambda degenerates: |theta(lambda)| = " +
                               std::to_string(std::abs(tl)));
    return (1.0 - std::norm(tl)) / (1.0 - std::norm(lambda.value()));
}

inline Complex normalized_model_kernel(const SchurFn& theta, const DiscPoint& lambda, Complex z) {
    return model_kernel(theta, lambda, z) / std::sqrt(model_kernel_norm_sq(theta, lambda));
}

// Gram of the kernel family via the reproducing property:
// G(i,j) = <k_j, k_i> = k_theta(lambda_j, lambda_i). Hermitian by
// construction (upper triangle mirrored); normalized version has an
// exactly unit diagonal.
inline Eigen::MatrixXcd gram_kernels(const KernelFamilySpec& spec, bool normalized) {
    const std::size_t m = spec.seq.size();
    if (m == 0) throw InvalidSequence("gram_kernels: family must be nonempty");
    std::vector<Complex> theta_at(m);
    std::vector<double> norms(m);
    for (std::size_t i = 0; i < m; ++i) {
        theta_at[i] = eval(spec.theta, spec.seq[i].value());
        if (std::abs(theta_at[i]) >= 1.0 - 1e-12)
            throw DegenerateKernel("kernel " + std::to_string(i) + " degenerates");
        norms[i] = std::sqrt((1.0 - std::norm(theta_at[i])) / (1.0 - std::norm(spec.seq[i].value())));
    }
    Eigen::MatrixXcd g(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
            normalized ? Complex(1.0)
                       : Complex((1.0 - std::norm(theta_at[i])) / (1.0 - std::norm(spec.seq[i].value())));
        for (std::size_t j = i + 1; j < m; ++j) {
            Complex v = (1.0 - std::conj(theta_at[j]) * theta_at[i]) /
                        (1.0 - std::conj(spec.seq[j].value()) * spec.seq[i].value());
            if (normalized) v /= norms[i] * norms[j];
            g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(v);
        }
    }
    return g;
}

// l_n = B_{0,n-1} * normalized Szego kernel at lambda_n; orthonormal in H^2.
inline Complex malmquist_walsh(const DiscSequence& seq, std::size_t n, Complex z) {
    if (n >= seq.size()) throw InvalidSequence("malmquist_walsh: index out of range");
    const Complex lam = seq[n].value();
    const Complex pre = blaschke_prefix(seq, n, z);
    return pre * std::sqrt(1.0 - std::norm(lam)) / (1.0 - std::conj(lam) * z);
}

namespace detail {

// Product of positive factors; switches to log accumulation when any
// factor drops below 1e-8 so deep traces stay underflow-safe.
inline double stable_positive_product(const std::vector<double>& factors) {
    bool tiny = false;
    for (double f : factors)
        if (f < 1e-8) tiny = true;
    if (!tiny) {
        double p = 1.0;
        for (double f : factors) p *= f;
        return p;
    }
    double logsum = 0.0;
    for (double f : factors) {
        if (f <= 0.0) return 0.0;
        logsum += std::log(f);
    }
    return std::exp(logsum);
}

// Forward data needed by every distance formula: gamma_0..gamma_{m-1} and
// theta_k(mu) for k = 0..m.
struct RecursionAtPoint {
    std::vector<Complex> gammas;
    std::vector<Complex> theta_at_mu;  // size m+1
};

inline RecursionAtPoint forward_at_point(const SchurFn& theta, const DiscSequence& seq,
                                         std::size_t m, Complex mu) {
    const ForwardResult fwd = schur_forward(theta, seq, m);
    if (fwd.depth() < m)
        throw TerminatedRecursion("forward recursion terminated at step " +
                                  std::to_string(fwd.depth()) + " before requested depth " +
                                  std::to_string(m));
    RecursionAtPoint out;
    out.gammas = fwd.params.gammas;
    out.theta_at_mu.reserve(m + 1);
    for (std::size_t k = 0; k <= m; ++k) out.theta_at_mu.push_back(eval(fwd.functions[k], mu));
    return out;
}

} // namespace detail

// dist^2(P_theta l_n, span of the kernels at lambda_0..lambda_{n-1}):
// (1 - |theta(lambda_n)|^2) prod_{k=1}^{n} (1-|theta_k(lambda_n)|^2) /
// (1 - |theta_k(lambda_n)|^2 |b_{lambda_{k-1}}(lambda_n)|^2).
inline double dist_mw(const SchurFn& theta, const DiscSequence& seq, std::size_t n) {
    if (n >= seq.size()) throw InvalidSequence("dist_mw: node index out of range");
    const Complex mu = seq[n].value();
    const auto rec = detail::forward_at_point(theta, seq, n, mu);
    std::vector<double> factors;
    factors.reserve(n + 1);
    factors.push_back(1.0 - std::norm(rec.theta_at_mu[0]));
    for (std::size_t k = 1; k <= n; ++k) {
        const double tk = std::norm(rec.theta_at_mu[k]);
        const double bk = std::norm(blaschke_factor(seq[k - 1], mu));
        factors.push_back((1.0 - tk) / (1.0 - tk * bk));
    }
    return detail::stable_positive_product(factors);
}

// dist^2(normalized k_theta(mu,.), span of the kernels at the first m
// nodes): |B_{0,m-1}(mu)|^2 prod_{k=1}^{m} (1-|theta_k(mu)|^2) /
// (1-|theta_k(mu)|^2 |b_{lambda_{k-1}}(mu)|^2). The m-point span pairs
// with the product up to m.
inline double dist_nrk(const SchurFn& theta, const DiscSequence& seq, std::size_t m,
                       const DiscPoint& mu) {
    if (m > seq.size()) throw InvalidSequence("dist_nrk: span size exceeds sequence");
    if (seq.prefix(m).contains(mu.value()))
        throw InvalidSequence("dist_nrk: mu must avoid the node sequence");
    (void)model_kernel_norm_sq(theta, mu);  // DegenerateKernel guard
    const auto rec = detail::forward_at_point(theta, seq, m, mu.value());
    std::vector<double> factors;
    factors.reserve(m + 1);
    factors.push_back(std::norm(blaschke_prefix(seq, m, mu.value())));
    for (std::size_t k = 1; k <= m; ++k) {
        const double tk = std::norm(rec.theta_at_mu[k]);
        const double bk = std::norm(blaschke_factor(seq[k - 1], mu.value()));
        factors.push_back((1.0 - tk) / (1.0 - tk * bk));
    }
    return detail::stable_positive_product(factors);
}

// Same quantity through the coefficient form:
// |B_{0,m-1}(mu)|^2 / (1-|theta(mu)|^2) * (1-|theta_m(mu)|^2)
//   * prod_{k=0}^{m-1} |1 - conj(gamma_k) theta_k(mu)|^2 / (1-|gamma_k|^2).
inline double dist_nrk_gamma_form(const SchurFn& theta, const DiscSequence& seq, std::size_t m,
                                  const DiscPoint& mu) {
    if (m > seq.size()) throw InvalidSequence("dist_nrk_gamma_form: span size exceeds sequence");
    if (seq.prefix(m).contains(mu.value()))
        throw InvalidSequence("dist_nrk_gamma_form: mu must avoid the node sequence");
    const auto rec = detail::forward_at_point(theta, seq, m, mu.value());
    const double denom0 = 1.0 - std::norm(rec.theta_at_mu[0]);
    if (!(denom0 > 0.0))
        throw DegenerateKernel("dist_nrk_gamma_form: |theta(mu)| reaches 1");
    std::vector<double> factors;
    factors.reserve(m + 2);
    factors.push_back(std::norm(blaschke_prefix(seq, m, mu.value())) / denom0);
    factors.push_back(1.0 - std::norm(rec.theta_at_mu[m]));
    for (std::size_t k = 0; k < m; ++k) {
        factors.push_back(std::norm(1.0 - std::conj(rec.gammas[k]) * rec.theta_at_mu[k]) /
                          (1.0 - std::norm(rec.gammas[k])));
    }
    return detail::stable_positive_product(factors);
}

struct UsefulIdentityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_error = 0.0;
};

// Both sides of the telescoping identity
// (1-|theta(mu)|^2) prod_{k=1}^{n} (1-|theta_k|^2)/(1-|theta_k|^2|b_{k-1}|^2)
//   = (1-|theta_n(mu)|^2) prod_{k=0}^{n-1} |1-conj(gamma_k)theta_k|^2/(1-|gamma_k|^2),
// evaluated independently.
inline UsefulIdentityReport verify_useful_identity(const SchurFn& theta, const DiscSequence& seq,
                                                   const DiscPoint& mu, std::size_t n) {
    const auto rec = detail::forward_at_point(theta, seq, n, mu.value());
    std::vector<double> lhs_factors;
    lhs_factors.push_back(1.0 - std::norm(rec.theta_at_mu[0]));
    for (std::size_t k = 1; k <= n; ++k) {
        const double tk = std::norm(rec.theta_at_mu[k]);
        const double bk = std::norm(blaschke_factor(seq[k - 1], mu.value()));
        lhs_factors.push_back((1.0 - tk) / (1.0 - tk * bk));
    }
    std::vector<double> rhs_factors;
    rhs_factors.push_back(1.0 - std::norm(rec.theta_at_mu[n]));
    for (std::size_t k = 0; k < n; ++k)
        rhs_factors.push_back(std::norm(1.0 - std::conj(rec.gammas[k]) * rec.theta_at_mu[k]) /
                              (1.0 - std::norm(rec.gammas[k])));
    UsefulIdentityReport rep;
    rep.lhs = detail::stable_positive_product(lhs_factors);
    rep.rhs = detail::stable_positive_product(rhs_factors);
    rep.abs_error = std::abs(rep.lhs - rep.rhs);
    return rep;
}

// dist^2(P_theta l_mu, span of all kernels of the finite sequence), where
// l_mu = sqrt(1-|mu|^2)/(1-conj(mu) z) * B_Lambda. Exact at depth m for a
// finite m-point sequence:
// (1-|theta_m(mu)|^2) prod_{k=0}^{m-1} |1-conj(gamma_k)theta_k(mu)|^2/(1-|gamma_k|^2).
inline double dist_plmu(const SchurFn& theta, const DiscSequence& seq, const DiscPoint& mu) {
    if (seq.contains(mu.value()))
        throw InvalidSequence("dist_plmu: mu must avoid the node sequence");
    const std::size_t m = seq.size();
    const auto rec = detail::forward_at_point(theta, seq, m, mu.value());
    std::vector<double> factors;
    factors.push_back(1.0 - std::norm(rec.theta_at_mu[m]));
    for (std::size_t k = 0; k < m; ++k)
        factors.push_back(std::norm(1.0 - std::conj(rec.gammas[k]) * rec.theta_at_mu[k]) /
                          (1.0 - std::norm(rec.gammas[k])));
    return detail::stable_positive_product(factors);
}

// dist^2(normalized k_theta(lambda_n,.), span of kernels over the
// punctured sequence), computed by running the recursion on the punctured
// sequence itself (the literal original-sequence product of the source
// display fails the two-point cross-check; see the tests).
inline double dist_excluded_node(const SchurFn& theta, const DiscSequence& seq, std::size_t n,
                                 std::size_t depth) {
    if (n >= seq.size()) throw InvalidSequence("dist_excluded_node: node index out of range");
    const DiscSequence punctured = seq.without(n);
    const std::size_t m = std::min(depth, punctured.size());
    return dist_nrk(theta, punctured, m, seq[n]);
}

// --- distance traces -------------------------------------------------------

struct TraceEntry {
    std::size_t n = 0;
    double closed_form = 0.0;
    std::optional<double> oracle;
    std::optional<double> abs_discrepancy;
    std::optional<double> ratio_to_szego;
    std::optional<double> partial_sum_theta_sq;
    std::optional<double> oracle_drift;
};

struct DistanceTrace {
    std::vector<TraceEntry> entries;
    std::string status = "complete";
};

// Per-truncation closed-form distances of the normalized kernel at mu to
// the first-n kernel spans, with the ratio against the pure-Szego distance
// |B_{0,n-1}(mu)|^2 and the running sums |theta_k(mu)|^2 from k=1.
inline DistanceTrace completeness_trace(const SchurFn& theta, const DiscSequence& seq,
                                        const DiscPoint& mu, std::size_t n_max) {
    if (seq.contains(mu.value()))
        throw InvalidSequence("completeness_trace: mu must avoid the node sequence");
    if (n_max > seq.size()) throw InvalidSequence("completeness_trace: depth exceeds sequence");
    DistanceTrace trace;
    double partial_sum = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        TraceEntry entry;
        entry.n = n;
        try {
            entry.closed_form = (n == 0) ? 1.0 : dist_nrk(theta, seq, n, mu);
            if (n >= 1) {
                const ForwardResult fwd = schur_forward(theta, seq, n);
                partial_sum += std::norm(eval(fwd.functions[n], mu.value()));
            }
            entry.partial_sum_theta_sq = partial_sum;
            const double szego = std::norm(blaschke_prefix(seq, n, mu.value()));
            entry.ratio_to_szego = szego > 0.0 ? entry.closed_form / szego
                                               : std::numeric_limits<double>::quiet_NaN();
        } catch (const TerminatedRecursion&) {
            trace.status = "terminated_at_" + std::to_string(n);
            return trace;
        }
        trace.entries.push_back(entry);
    }
    return trace;
}

} // namespace schurnev
