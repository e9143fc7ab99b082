#pragma once

// Brute-force verification layer: quadrature H^2 inner products, analytic
// and model-space projections, Gram least-squares distances, the matrix of
// theta(T_B) in the Malmquist-Walsh basis, and the Gram identity
// I - A A^* together with the adjoint eigenvector residual.

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "schurnev/circle_grid.hpp"
#include "schurnev/disc.hpp"
#include "schurnev/errors.hpp"
#include "schurnev/kernel_geometry.hpp"
#include "schurnev/schur_function.hpp"

namespace schurnev {

inline constexpr double kGramRidge = 1e-13;
inline constexpr double kConditionLimit = 1e12;
inline constexpr double kAnalyticCoeffTol = 1e-9;

// P_theta f = f - theta P_+(conj(theta) f) for f in H^2.
inline GridFn model_projection(const SchurFn& theta, const GridFn& f) {
    if (f.max_negative_coefficient() > kAnalyticCoeffTol)
        throw NotAnalytic("model_projection: input carries negative spectrum of size " +
                          std::to_string(f.max_negative_coefficient()));
    const CircleGrid grid(f.size());
    const GridFn theta_vals = GridFn::sample(grid, theta);
    std::vector<Complex> g(f.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        g[j] = std::conj(theta_vals.values()[j]) * f.values()[j];
    const GridFn plus = analytic_projection(GridFn::from_values(std::move(g)));
    std::vector<Complex> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        out[j] = f.values()[j] - theta_vals.values()[j] * plus.values()[j];
    return GridFn::from_values(std::move(out));
}

// Least-squares distance to a finite span from precomputed data:
// dist^2 = ||x||^2 - w^* G^{-1} w with w_i = <x, v_i>. Solved through the
// Hermitian eigendecomposition after a fixed ridge; conditioning beyond
// the limit raises instead of silently regularizing further.
inline double gram_distance(const Eigen::VectorXcd& w, double x_norm_sq,
                            const Eigen::MatrixXcd& gram) {
    if (gram.rows() != gram.cols() || gram.rows() != w.size())
        throw InvalidSequence("gram_distance: dimension mismatch");
    if (gram.rows() == 0) return std::max(x_norm_sq, 0.0);
    Eigen::MatrixXcd g = gram;
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, i) += kGramRidge;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > kConditionLimit)
        throw IllConditioned("gram_distance: condition estimate " +
                             std::to_string(lo > 0.0 ? hi / lo : std::nan("")) +
                             " exceeds 1e12");
    const Eigen::VectorXcd y = es.eigenvectors().adjoint() * w;
    double quad = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) quad += std::norm(y(i)) / es.eigenvalues()(i);
    return std::max(x_norm_sq - quad, 0.0);
}

// Quadrature Gram of an arbitrary family of boundary traces;
// G(i,j) = <v_j, v_i>.
inline Eigen::MatrixXcd gram_of(const std::vector<GridFn>& family) {
    const Eigen::Index m = static_cast<Eigen::Index>(family.size());
    Eigen::MatrixXcd g(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            g(i, j) = inner_product(family[static_cast<std::size_t>(j)],
                                    family[static_cast<std::size_t>(i)]);
    return g;
}

// Distance of a sampled function to the span of a sampled family, all by
// quadrature.
inline double gram_distance_sampled(const GridFn& x, const std::vector<GridFn>& family) {
    Eigen::VectorXcd w(static_cast<Eigen::Index>(family.size()));
    for (std::size_t i = 0; i < family.size(); ++i)
        w(static_cast<Eigen::Index>(i)) = inner_product(x, family[i]);
    return gram_distance(w, norm_sq(x), gram_of(family));
}

struct ThetaTBResult {
    Eigen::MatrixXcd matrix;          // A(i,j) = <theta l_j, l_i>
    double upper_triangle_max = 0.0;  // measured deviation from lower-triangularity
    double diag_error_max = 0.0;      // measured |A(i,i) - theta(lambda_i)|
};

// Matrix of the model-operator calculus applied to theta in the
// Malmquist-Walsh basis of the first n nodes, by quadrature, together
// with the measured structural deviations (lower triangular, diagonal
// theta(lambda_i)).
inline ThetaTBResult theta_TB_matrix(const SchurFn& theta, const DiscSequence& seq, std::size_t n,
                                     const CircleGrid& grid) {
    if (n > seq.size()) throw InvalidSequence("theta_TB_matrix: size exceeds sequence");
    const GridFn theta_vals = GridFn::sample(grid, theta);
    std::vector<GridFn> basis;
    basis.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
        basis.push_back(
            GridFn::sample(grid, [&](Complex z) { return malmquist_walsh(seq, j, z); }));
    ThetaTBResult out;
    out.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Complex> prod(grid.size());
        for (std::size_t t = 0; t < grid.size(); ++t)
            prod[t] = theta_vals.values()[t] * basis[j].values()[t];
        const GridFn theta_lj = GridFn::from_values(std::move(prod));
        for (std::size_t i = 0; i < n; ++i)
            out.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                inner_product(theta_lj, basis[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.diag_error_max = std::max(
            out.diag_error_max,
            std::abs(out.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) -
                     eval(theta, seq[i].value())));
        for (std::size_t j = i + 1; j < n; ++j)
            out.upper_triangle_max = std::max(
                out.upper_triangle_max,
                std::abs(out.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    }
    return out;
}

// Max entrywise residual of Gram({P_theta l_i}) against I - A A^*.
inline double lemma_g_check(const SchurFn& theta, const DiscSequence& seq, std::size_t n,
                            const CircleGrid& grid) {
    const ThetaTBResult tb = theta_TB_matrix(theta, seq, n, grid);
    std::vector<GridFn> projected;
    projected.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const GridFn lj =
            GridFn::sample(grid, [&](Complex z) { return malmquist_walsh(seq, j, z); });
        projected.push_back(model_projection(theta, lj));
    }
    const Eigen::MatrixXcd gram = gram_of(projected);
    const Eigen::MatrixXcd expected =
        Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) -
        tb.matrix * tb.matrix.adjoint();
    return (gram - expected).cwiseAbs().maxCoeff();
}

// || P_+(conj(theta) k~_B(lambda,.)) - conj(theta(lambda)) k~_B(lambda,.) ||_2:
// normalized kernels of K_B are eigenvectors of the adjoint calculus.
inline double adjoint_eigen_check(const SchurFn& theta, const DiscPoint& lambda,
                                  const DiscSequence& b_zeros, const CircleGrid& grid) {
    if (!b_zeros.contains(lambda.value()))
        throw InvalidSequence("adjoint_eigen_check: lambda must be a node of B");
    const SchurFn b = SchurFn::blaschke(b_zeros);
    const GridFn kernel =
        GridFn::sample(grid, [&](Complex z) { return normalized_model_kernel(b, lambda, z); });
    const GridFn theta_vals = GridFn::sample(grid, theta);
    std::vector<Complex> g(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        g[j] = std::conj(theta_vals.values()[j]) * kernel.values()[j];
    const GridFn projected = analytic_projection(GridFn::from_values(std::move(g)));
    const Complex scale = std::conj(eval(theta, lambda.value()));
    std::vector<Complex> diff(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        diff[j] = projected.values()[j] - scale * kernel.values()[j];
    return std::sqrt(norm_sq(GridFn::from_values(std::move(diff))));
}

} // namespace schurnev
