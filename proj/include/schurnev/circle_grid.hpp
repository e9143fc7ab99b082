#pragma once

// Uniform boundary grids and sampled boundary functions. A GridFn carries
// both the nodal values and the normalized Fourier coefficients (computed
// once at construction), so transforms and inner products stay pure and
// deterministic with a fixed summation order.

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "schurnev/disc.hpp"
#include "schurnev/errors.hpp"
#include "schurnev/schur_function.hpp"

namespace schurnev {

inline constexpr std::size_t kDefaultGridSize = 4096;

class CircleGrid {
public:
    explicit CircleGrid(std::size_t n = kDefaultGridSize) : n_(n) {
        if (n_ < 256 || (n_ & (n_ - 1)) != 0)
            throw InvalidSequence("grid size must be a power of two >= 256");
        nodes_.reserve(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            const double t = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n_);
            nodes_.emplace_back(std::cos(t), std::sin(t));
        }
    }

    std::size_t size() const noexcept { return n_; }
    const std::vector<Complex>& nodes() const noexcept { return nodes_; }

private:
    std::size_t n_;
    std::vector<Complex> nodes_;
};

class GridFn {
public:
    static GridFn from_values(std::vector<Complex> values) {
        GridFn f;
        f.values_ = std::move(values);
        check_size(f.values_.size());
        Eigen::FFT<double> fft;
        std::vector<Complex> bins;
        fft.fwd(bins, f.values_);
        f.coeff_ = std::move(bins);
        const double scale = 1.0 / static_cast<double>(f.values_.size());
        for (auto& c : f.coeff_) c *= scale;
        return f;
    }

    static GridFn from_fourier(std::vector<Complex> coeff) {
        GridFn f;
        check_size(coeff.size());
        f.coeff_ = std::move(coeff);
        Eigen::FFT<double> fft;
        std::vector<Complex> bins = f.coeff_;
        const double scale = static_cast<double>(bins.size());
        for (auto& c : bins) c *= scale;
        fft.inv(f.values_, bins);
        return f;
    }

    static GridFn sample(const CircleGrid& grid, const std::function<Complex(Complex)>& fn) {
        std::vector<Complex> vals;
        vals.reserve(grid.size());
        for (Complex z : grid.nodes()) vals.push_back(fn(z));
        return from_values(std::move(vals));
    }

    static GridFn sample(const CircleGrid& grid, const SchurFn& f) {
        try {
            return sample(grid, [&](Complex z) { return eval(f, z); });
        } catch (const AtomTooClose& e) {
            throw SymbolSingularOnGrid(std::string("symbol singular at a grid node: ") + e.what());
        }
    }

    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<Complex>& values() const noexcept { return values_; }

    // Normalized Fourier coefficient for k in [-N/2, N/2); negative
    // frequencies sit in the upper bins.
    Complex coefficient(std::ptrdiff_t k) const {
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(size());
        if (k < -n / 2 || k >= n / 2)
            throw GridMismatch("fourier index " + std::to_string(k) + " outside [-N/2, N/2)");
        const std::size_t bin = static_cast<std::size_t>(k >= 0 ? k : k + n);
        return coeff_[bin];
    }

    const std::vector<Complex>& raw_coefficients() const noexcept { return coeff_; }

    double max_negative_coefficient() const {
        double worst = 0.0;
        for (std::size_t bin = size() / 2; bin < size(); ++bin)
            worst = std::max(worst, std::abs(coeff_[bin]));
        return worst;
    }

private:
    static void check_size(std::size_t n) {
        if (n < 256 || (n & (n - 1)) != 0)
            throw InvalidSequence("grid size must be a power of two >= 256");
    }

    std::vector<Complex> values_;
    std::vector<Complex> coeff_;
};

// (1/N) sum f conj(g); spectrally accurate for functions analytic in an
// annulus around the circle. Long-double accumulator keeps the summation
// error far below the quadrature budget.
inline Complex inner_product(const GridFn& f, const GridFn& g) {
    if (f.size() != g.size()) throw GridMismatch("inner_product: grids differ in size");
    std::complex<long double> acc(0.0L);
    const auto& fv = f.values();
    const auto& gv = g.values();
    for (std::size_t j = 0; j < fv.size(); ++j) {
        const std::complex<long double> a(fv[j].real(), fv[j].imag());
        const std::complex<long double> b(gv[j].real(), gv[j].imag());
        acc += a * std::conj(b);
    }
    acc /= static_cast<long double>(fv.size());
    return Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

inline double norm_sq(const GridFn& f) { return inner_product(f, f).real(); }

// Zeroes all negative-frequency coefficients; idempotent.
inline GridFn analytic_projection(const GridFn& f) {
    std::vector<Complex> coeff = f.raw_coefficients();
    for (std::size_t bin = coeff.size() / 2; bin < coeff.size(); ++bin) coeff[bin] = Complex(0.0);
    return GridFn::from_fourier(std::move(coeff));
}

} // namespace schurnev
