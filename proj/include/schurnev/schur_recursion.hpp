#pragma once

// The node-dependent Schur recursion: theta_0 = theta,
//   theta_n = tau_{gamma_{n-1}}(theta_{n-1}) / tau_{lambda_{n-1}},
//   gamma_n = theta_n(lambda_n),
// its coefficient sequence with unimodular-termination status, and the
// three inverse processes that rebuild ball functions from prescribed
// coefficients (seeds gamma_n / theta_n(mu) / 1).

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "schurnev/disc.hpp"
#include "schurnev/errors.hpp"
#include "schurnev/schur_function.hpp"

namespace schurnev {

// Schur-Nevanlinna coefficients gamma_n with termination status. Stored
// coefficients always satisfy |gamma| < 1 - kUnimodularTol; a coefficient
// at or beyond that bound ends the recursion and is recorded separately.
struct ParamSeq {
    struct Terminated {
        std::size_t at = 0;
        Complex value{0.0};
    };

    std::vector<Complex> gammas;
    std::optional<Terminated> terminated;

    static ParamSeq from_gammas(std::vector<Complex> gs) {
        ParamSeq p;
        for (std::size_t k = 0; k < gs.size(); ++k)
            if (std::abs(gs[k]) >= 1.0 - kUnimodularTol)
                throw InvalidSequence("prescribed gamma_" + std::to_string(k) +
                                      " has modulus >= 1 - tolerance");
        p.gammas = std::move(gs);
        return p;
    }

    std::vector<double> partial_abs_sums() const {
        std::vector<double> sums;
        sums.reserve(gammas.size());
        double acc = 0.0;
        for (Complex g : gammas) {
            acc += std::abs(g);
            sums.push_back(acc);
        }
        return sums;
    }
};

struct SummabilityReport {
    std::vector<double> partial_sums;
    bool summable_flag = true;
};

// Heuristic summability flag: every increment in the last quartile of the
// sequence stays below 1e-8.
inline SummabilityReport summability_check(const ParamSeq& params) {
    SummabilityReport rep;
    rep.partial_sums = params.partial_abs_sums();
    const std::size_t n = params.gammas.size();
    rep.summable_flag = true;
    if (n > 0) {
        const std::size_t start = (3 * n) / 4;
        for (std::size_t k = start; k < n; ++k)
            if (std::abs(params.gammas[k]) >= 1e-8) rep.summable_flag = false;
    }
    return rep;
}

struct ForwardResult {
    ParamSeq params;
    std::vector<SchurFn> functions;  // theta_0 .. theta_k

    // Depth up to which functions/coefficients are valid: number of stored
    // functions minus one.
    std::size_t depth() const { return functions.empty() ? 0 : functions.size() - 1; }
};

// Runs N recursion steps (producing gamma_0..gamma_{N-1} and
// theta_0..theta_N) or stops early with TerminatedUnimodular status.
// Unimodularity of the final function, when no node remains to probe it,
// is detected from |theta_N(0)|: an interior unimodular value forces a
// unimodular constant by the maximum principle.
inline ForwardResult schur_forward(const SchurFn& theta, const DiscSequence& seq, std::size_t n_steps) {
    if (n_steps > seq.size())
        throw InvalidSequence("schur_forward: requested depth exceeds sequence length");
    ForwardResult out;
    out.functions.push_back(theta);
    for (std::size_t n = 0; n < n_steps; ++n) {
        const Complex lambda_n = seq[n].value();
        Complex gamma_n;
        try {
            gamma_n = eval(out.functions.back(), lambda_n);
        } catch (const SingularityTooClose& e) {
            throw NodeCoincidesWithSingularity(
                "node lambda_" + std::to_string(n) +
                " hits a removable singularity and the circle mean fails: " + e.what());
        }
        if (std::abs(gamma_n) >= 1.0 - kUnimodularTol) {
            out.params.terminated = ParamSeq::Terminated{n, gamma_n};
            return out;
        }
        out.params.gammas.push_back(gamma_n);
        out.functions.push_back(
            SchurFn::lower_step(DiscPoint(gamma_n), seq[n], out.functions.back()));
    }
    const Complex probe = eval(out.functions.back(), Complex(0.0));
    if (std::abs(probe) >= 1.0 - kUnimodularTol)
        out.params.terminated = ParamSeq::Terminated{n_steps, probe};
    return out;
}

// --- inverse processes ----------------------------------------------------

namespace detail {

inline SchurFn raise_chain(SchurFn seed, const std::vector<Complex>& gammas,
                           const DiscSequence& seq, std::size_t n) {
    SchurFn h = std::move(seed);
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t idx = n - k;
        h = SchurFn::raise_step(DiscPoint(gammas[idx]), seq[idx], h);
    }
    return h;
}

} // namespace detail

// Process I: seed gamma_n, then n raise steps. ||h_{n,n}||_inf < 1 and the
// forward recursion of the result recovers gamma_0..gamma_n.
inline SchurFn inverse_process_I(const ParamSeq& gamma, const DiscSequence& seq, std::size_t n) {
    if (n >= gamma.gammas.size())
        throw InvalidSequence("inverse_process_I: needs gamma_0..gamma_n");
    if (n > seq.size())
        throw InvalidSequence("inverse_process_I: needs lambda_0..lambda_{n-1}");
    return detail::raise_chain(SchurFn::constant(gamma.gammas[n]), gamma.gammas, seq, n);
}

// Process II: seed theta_n(mu) computed from the forward recursion of
// theta; the result lies in theta + b_mu B_{0,n-1} H^inf.
inline SchurFn inverse_process_II(const SchurFn& theta, const DiscSequence& seq,
                                  const DiscPoint& mu, std::size_t n) {
    if (seq.contains(mu.value()))
        throw InvalidSequence("inverse_process_II: mu must avoid the node sequence");
    const ForwardResult fwd = schur_forward(theta, seq, n);
    if (fwd.depth() < n)
        throw TerminatedRecursion("inverse_process_II: forward recursion terminated at step " +
                                  std::to_string(fwd.depth()));
    const Complex seed = eval(fwd.functions[n], mu.value());
    return detail::raise_chain(SchurFn::constant(seed), fwd.params.gammas, seq, n);
}

// Process III: seed 1; the result is a degree-n Blaschke product times a
// unimodular constant whose first n coefficients are gamma_0..gamma_{n-1}.
inline SchurFn inverse_process_III(const ParamSeq& gamma, const DiscSequence& seq, std::size_t n) {
    if (n > gamma.gammas.size())
        throw InvalidSequence("inverse_process_III: needs gamma_0..gamma_{n-1}");
    if (n > seq.size())
        throw InvalidSequence("inverse_process_III: needs lambda_0..lambda_{n-1}");
    return detail::raise_chain(SchurFn::constant(Complex(1.0)), gamma.gammas, seq, n);
}

// Forward-runs h on seq and reports the worst coefficient mismatch against
// the prescribed gammas; compares up to n+1 coefficients (process I
// recovers gamma_n as the n-th one, process III terminates at step n).
inline double roundtrip_check(const SchurFn& h, const DiscSequence& seq, const ParamSeq& gamma,
                              std::size_t n) {
    const std::size_t steps = std::min(n + 1, std::min(seq.size(), gamma.gammas.size()));
    const ForwardResult fwd = schur_forward(h, seq, steps);
    const std::size_t compare = std::min(fwd.params.gammas.size(), gamma.gammas.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < compare; ++k)
        worst = std::max(worst, std::abs(fwd.params.gammas[k] - gamma.gammas[k]));
    return worst;
}

struct BoundaryFloorReport {
    double empirical_min = 0.0;  // min over the grid of 1 - |h|^2
    double analytic_floor = 0.0; // (1-|gamma_n|^2) prod (1-|gamma_k|^2)/(1+|gamma_k|)^2
};

// Boundary floor for process-I output built from gammas (seed = last
// element). The empirical minimum must sit above the closed-form floor.
inline BoundaryFloorReport boundary_floor_check(const SchurFn& h, const ParamSeq& gamma,
                                                std::size_t grid_size) {
    if (gamma.gammas.empty())
        throw InvalidSequence("boundary_floor_check: needs at least the seed coefficient");
    if (grid_size < 8) throw InvalidSequence("boundary_floor_check: grid too small");
    BoundaryFloorReport rep;
    const std::size_t n = gamma.gammas.size() - 1;
    double floor = 1.0 - std::norm(gamma.gammas[n]);
    for (std::size_t k = 0; k < n; ++k) {
        const double a = std::abs(gamma.gammas[k]);
        floor *= (1.0 - a * a) / ((1.0 + a) * (1.0 + a));
    }
    rep.analytic_floor = floor;
    double emp = 2.0;
    for (std::size_t j = 0; j < grid_size; ++j) {
        const double t = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(grid_size);
        const Complex zeta = std::polar(1.0, t);
        emp = std::min(emp, 1.0 - std::norm(eval(h, zeta)));
    }
    rep.empirical_min = emp;
    return rep;
}

struct CauchyProbeTable {
    std::vector<double> radii;
    // rows[i] = {n, sup-differences per radius} for the step n-1 -> n
    struct Row {
        std::size_t n;
        std::vector<double> sup_diff;
    };
    std::vector<Row> rows;
};

// Successive sup-differences sup_{|z|=r} |h_n(z) - h_{n-1}(z)| over 64
// points per circle; the finite surrogate for locally uniform convergence
// of the inverse processes.
inline CauchyProbeTable cauchy_sequence_probe(const std::function<SchurFn(std::size_t)>& builder,
                                              const std::vector<double>& radii,
                                              std::size_t n_max) {
    constexpr std::size_t kPoints = 64;
    CauchyProbeTable table;
    table.radii = radii;
    SchurFn prev = builder(0);
    for (std::size_t n = 1; n <= n_max; ++n) {
        SchurFn cur = builder(n);
        CauchyProbeTable::Row row;
        row.n = n;
        for (double r : radii) {
            double sup = 0.0;
            for (std::size_t j = 0; j < kPoints; ++j) {
                const Complex z = std::polar(r, 2.0 * M_PI * static_cast<double>(j) / kPoints);
                sup = std::max(sup, std::abs(eval(cur, z) - eval(prev, z)));
            }
            row.sup_diff.push_back(sup);
        }
        table.rows.push_back(std::move(row));
        prev = std::move(cur);
    }
    return table;
}

} // namespace schurnev
