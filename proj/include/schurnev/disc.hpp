#pragma once

// Primitives on the open unit disc: Moebius transforms, Blaschke factors
// and partial products, the pseudohyperbolic metric, and diagnostics for
// finite node sequences (Blaschke sum, Carleson separation constant,
// thinness profile) together with deterministic sequence generators.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "schurnev/errors.hpp"

namespace schurnev {

using Complex = std::complex<double>;

inline constexpr double kDuplicateTol = 1e-12;   // pseudohyperbolic distinctness
inline constexpr std::size_t kLogProductCutover = 64;

// tau_mu(z) = (z - mu) / (1 - conj(mu) z); maps D -> D and T -> T.
inline Complex moebius(Complex mu, Complex z) {
    return (z - mu) / (1.0 - std::conj(mu) * z);
}

inline double pseudohyperbolic(Complex z, Complex w) {
    return std::abs(moebius(w, z));
}

// Blaschke factor normalized so b_lambda(0) = |lambda| > 0; the factor for
// lambda = 0 is z itself.
inline Complex blaschke_factor(Complex lambda, Complex z) {
    const double m = std::abs(lambda);
    if (m == 0.0) return z;
    return (std::conj(lambda) / m) * (lambda - z) / (1.0 - std::conj(lambda) * z);
}

// A point of the open unit disc, |value| < 1 enforced at construction.
class DiscPoint {
public:
    DiscPoint() : value_(0.0) {}
    explicit DiscPoint(Complex value) : value_(value) {
        if (!(std::abs(value) < 1.0))
            throw InvalidPoint("disc point has modulus " + std::to_string(std::abs(value)) +
                               " >= 1");
    }
    Complex value() const noexcept { return value_; }

private:
    Complex value_;
};

inline Complex moebius(const DiscPoint& mu, Complex z) { return moebius(mu.value(), z); }
inline Complex blaschke_factor(const DiscPoint& lambda, Complex z) {
    return blaschke_factor(lambda.value(), z);
}
inline double pseudohyperbolic(const DiscPoint& z, const DiscPoint& w) {
    return pseudohyperbolic(z.value(), w.value());
}

// Finite ordered sequence of pairwise-distinct disc points, with the
// Blaschke sum, Carleson constant and thinness profile computed on
// construction. Immutable; derived sequences are built by prefix/without.
class DiscSequence {
public:
    DiscSequence() = default;

    explicit DiscSequence(std::vector<DiscPoint> points) : points_(std::move(points)) {
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (pseudohyperbolic(points_[i], points_[j]) <= kDuplicateTol)
                    throw InvalidSequence("points " + std::to_string(i) + " and " +
                                          std::to_string(j) +
                                          " coincide within duplicate tolerance");
        recompute();
    }

    static DiscSequence from_values(const std::vector<Complex>& values) {
        std::vector<DiscPoint> pts;
        pts.reserve(values.size());
        for (Complex v : values) pts.emplace_back(v);
        return DiscSequence(std::move(pts));
    }

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const DiscPoint& operator[](std::size_t i) const { return points_.at(i); }
    const std::vector<DiscPoint>& points() const noexcept { return points_; }

    double blaschke_sum() const noexcept { return blaschke_sum_; }
    double carleson_constant() const noexcept { return carleson_constant_; }
    const std::vector<double>& thinness_profile() const noexcept { return thinness_profile_; }

    bool contains(Complex z, double tol = kDuplicateTol) const {
        for (const auto& p : points_)
            if (pseudohyperbolic(p.value(), z) <= tol) return true;
        return false;
    }

    DiscSequence prefix(std::size_t k) const {
        std::vector<DiscPoint> pts(points_.begin(),
                                   points_.begin() + static_cast<std::ptrdiff_t>(std::min(k, size())));
        return DiscSequence(std::move(pts));
    }

    DiscSequence without(std::size_t n) const {
        std::vector<DiscPoint> pts;
        pts.reserve(size() > 0 ? size() - 1 : 0);
        for (std::size_t i = 0; i < size(); ++i)
            if (i != n) pts.push_back(points_[i]);
        return DiscSequence(std::move(pts));
    }

private:
    void recompute() {
        blaschke_sum_ = 0.0;
        for (const auto& p : points_) blaschke_sum_ += 1.0 - std::abs(p.value());
        thinness_profile_.assign(points_.size(), 1.0);
        for (std::size_t n = 0; n < points_.size(); ++n) {
            double logp = 0.0;
            for (std::size_t m = 0; m < points_.size(); ++m)
                if (m != n) logp += std::log(pseudohyperbolic(points_[m], points_[n]));
            thinness_profile_[n] = std::exp(logp);
        }
        carleson_constant_ =
            points_.empty() ? 1.0
                            : *std::min_element(thinness_profile_.begin(), thinness_profile_.end());
    }

    std::vector<DiscPoint> points_;
    double blaschke_sum_ = 0.0;
    double carleson_constant_ = 1.0;
    std::vector<double> thinness_profile_;
};

// B_{k,n}(z) = prod_{j=k}^{n} b_{lambda_j}(z); k = n+1 encodes the empty
// product (the n+1==k test is wraparound-safe, so (0, size_t(-1)) is the
// empty prefix). Long products accumulate in log form to avoid underflow.
inline Complex blaschke_partial(const DiscSequence& seq, std::size_t k, std::size_t n, Complex z) {
    if (n + 1 == k) return Complex(1.0);
    if (k > n) throw InvalidSequence("blaschke_partial: k may exceed n by at most 1");
    if (n >= seq.size()) throw InvalidSequence("blaschke_partial: index range out of bounds");
    const std::size_t count = n - k + 1;
    if (count <= kLogProductCutover) {
        Complex prod(1.0);
        for (std::size_t j = k; j <= n; ++j) {
            Complex f = blaschke_factor(seq[j], z);
            if (f == Complex(0.0)) return Complex(0.0);
            prod *= f;
        }
        return prod;
    }
    Complex logsum(0.0);
    for (std::size_t j = k; j <= n; ++j) {
        Complex f = blaschke_factor(seq[j], z);
        if (f == Complex(0.0)) return Complex(0.0);
        logsum += std::log(f);
    }
    return std::exp(logsum);
}

// B_{0,count-1}(z); count = 0 gives the empty product.
inline Complex blaschke_prefix(const DiscSequence& seq, std::size_t count, Complex z) {
    return blaschke_partial(seq, 0, count - 1, z);
}

// Full Blaschke product over the sequence.
inline Complex blaschke_product(const DiscSequence& seq, Complex z) {
    return blaschke_prefix(seq, seq.size(), z);
}

inline double carleson_constant(const DiscSequence& seq) {
    if (seq.empty()) throw InvalidSequence("carleson_constant: empty sequence");
    return seq.carleson_constant();
}

inline std::vector<double> thinness_profile(const DiscSequence& seq) {
    if (seq.empty()) throw InvalidSequence("thinness_profile: empty sequence");
    return seq.thinness_profile();
}

// --- deterministic sequence generators -----------------------------------

struct GeometricParams {
    double c = 0.5;       // first gap: lambda_0 = (1-c) e^{i angle}
    double r = 0.5;       // gap ratio, in (0,1)
    double angle = 0.0;   // ray direction
};

// lambda_n = (1 - c r^n) e^{i angle}, n = 0..count-1.
inline DiscSequence make_geometric(const GeometricParams& p, std::size_t count) {
    if (count < 1) throw InvalidSequence("geometric: count must be >= 1");
    if (!(p.r > 0.0 && p.r < 1.0)) throw InvalidSequence("geometric: ratio must lie in (0,1)");
    if (!(p.c > 0.0 && p.c <= 1.0)) throw InvalidSequence("geometric: c must lie in (0,1]");
    std::vector<Complex> vals;
    vals.reserve(count);
    const Complex dir = std::polar(1.0, p.angle);
    for (std::size_t n = 0; n < count; ++n) {
        const double radius = 1.0 - p.c * std::pow(p.r, static_cast<double>(n));
        if (!(radius < 1.0))
            throw InvalidSequence("geometric: radius reached 1 at n=" + std::to_string(n));
        vals.push_back(radius * dir);
    }
    return DiscSequence::from_values(vals);
}

struct ThinParams {
    double gap0 = 0.4;    // first gap 1 - |lambda_0|
    double power = 1.5;   // gap_{n} = gap0^{power^n}: superexponential decay
    double angle = 0.0;
};

inline DiscSequence make_thin(const ThinParams& p, std::size_t count) {
    if (count < 1) throw InvalidSequence("thin: count must be >= 1");
    if (!(p.gap0 > 0.0 && p.gap0 < 1.0)) throw InvalidSequence("thin: gap0 must lie in (0,1)");
    if (!(p.power > 1.0)) throw InvalidSequence("thin: power must exceed 1");
    std::vector<Complex> vals;
    vals.reserve(count);
    const Complex dir = std::polar(1.0, p.angle);
    double expo = 1.0;
    for (std::size_t n = 0; n < count; ++n) {
        const double gap = std::pow(p.gap0, expo);
        const double radius = 1.0 - gap;
        if (!(radius < 1.0))
            throw InvalidSequence("thin: radius rounded to 1 at n=" + std::to_string(n) +
                                  "; relax gap0/power or shorten the sequence");
        vals.push_back(radius * dir);
        expo *= p.power;
    }
    return DiscSequence::from_values(vals);
}

struct PairedVanishingParams {
    double c = 0.5;          // radial law 1 - c r^n
    double r = 0.5;
    double alpha = 0.9;      // spiral step: arg(lambda_n) = n alpha
    double delta0 = 0.25;    // pseudohyperbolic offsets delta_n = delta0 q^n
    double q = 0.45;
    double beta = 1.5707963267948966;  // offset direction in tau_{lambda_n} coordinates
};

// Two Carleson sequences (Lambda, M) with rho(lambda_n, mu_n) = delta_n -> 0,
// so |B_M(lambda_n)| <= delta_n and symmetrically. Points sit on a
// logarithmic spiral to keep pseudohyperbolic separation strong without
// pushing moduli against the boundary.
inline std::pair<DiscSequence, DiscSequence> make_paired_vanishing(const PairedVanishingParams& p,
                                                                   std::size_t count) {
    if (count < 1) throw InvalidSequence("paired_vanishing: count must be >= 1");
    if (!(p.r > 0.0 && p.r < 1.0) || !(p.c > 0.0 && p.c <= 1.0))
        throw InvalidSequence("paired_vanishing: radial parameters out of range");
    if (!(p.delta0 > 0.0 && p.delta0 < 1.0) || !(p.q > 0.0 && p.q < 1.0))
        throw InvalidSequence("paired_vanishing: offset parameters out of range");
    std::vector<Complex> lam, mu;
    lam.reserve(count);
    mu.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        const double radius = 1.0 - p.c * std::pow(p.r, static_cast<double>(n));
        if (!(radius < 1.0))
            throw InvalidSequence("paired_vanishing: radius reached 1 at n=" + std::to_string(n));
        const Complex l = std::polar(radius, p.alpha * static_cast<double>(n));
        const Complex w = std::polar(p.delta0 * std::pow(p.q, static_cast<double>(n)), p.beta);
        // mu_n = tau_{-lambda_n}(w): the point at pseudohyperbolic distance |w|.
        const Complex m = (w + l) / (1.0 + std::conj(l) * w);
        lam.push_back(l);
        mu.push_back(m);
    }
    return {DiscSequence::from_values(lam), DiscSequence::from_values(mu)};
}

} // namespace schurnev
