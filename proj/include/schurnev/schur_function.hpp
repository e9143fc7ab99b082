#pragma once

// Evaluable representation of functions in the closed unit ball of
// H^infinity: an immutable expression tree of constants, Blaschke
// products, atomic singular factors, Moebius compositions, and the
// raise/lower recursion steps. Evaluation handles the removable
// singularities of lower steps by an 8-point circle mean.

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "schurnev/disc.hpp"
#include "schurnev/errors.hpp"

namespace schurnev {

inline constexpr double kUnimodularTol = 1e-9;   // |gamma| >= 1 - tol terminates recursions
inline constexpr double kSingularEps = 1e-6;     // switch to circle mean inside this distance
inline constexpr double kSingularRadius = 1e-3;  // circle-mean radius
inline constexpr double kLowerStepMatchTol = 1e-10;

class SchurFn;

namespace detail {

struct ConstantNode {
    Complex value;
};

struct BlaschkeNode {
    DiscSequence zeros;
    Complex prefactor;  // unimodular
};

struct AtomicSingularNode {
    double mass;   // > 0
    Complex atom;  // |atom| = 1; factor exp(-mass (atom+z)/(atom-z))
};

struct ProductNode;
struct MoebiusComposeNode;
struct RaiseStepNode;
struct LowerStepNode;

using NodeVariant = std::variant<ConstantNode, BlaschkeNode, AtomicSingularNode, ProductNode,
                                 MoebiusComposeNode, RaiseStepNode, LowerStepNode>;

} // namespace detail

class SchurFn {
public:
    SchurFn() : SchurFn(constant(Complex(0.0))) {}

    static SchurFn constant(Complex c);
    static SchurFn blaschke(DiscSequence zeros, Complex prefactor = Complex(1.0));
    static SchurFn atomic_singular(double mass, Complex atom = Complex(1.0));
    static SchurFn product(std::vector<SchurFn> factors);
    // tau_gamma o f
    static SchurFn moebius_compose(const DiscPoint& gamma, SchurFn child);
    // tau_{-gamma}(tau_lambda * f)
    static SchurFn raise_step(const DiscPoint& gamma, const DiscPoint& lambda, SchurFn child);
    // tau_gamma(f) / tau_lambda, with f(lambda) = gamma (removable singularity)
    static SchurFn lower_step(const DiscPoint& gamma, const DiscPoint& lambda, SchurFn child);

    const detail::NodeVariant& node() const noexcept { return *node_; }

    bool has_atomic_factor() const;
    std::size_t depth() const;

private:
    explicit SchurFn(std::shared_ptr<const detail::NodeVariant> node) : node_(std::move(node)) {}
    std::shared_ptr<const detail::NodeVariant> node_;
};

namespace detail {

struct ProductNode {
    std::vector<SchurFn> factors;
};
struct MoebiusComposeNode {
    Complex gamma;
    SchurFn child;
};
struct RaiseStepNode {
    Complex gamma;
    Complex lambda;
    SchurFn child;
};
struct LowerStepNode {
    Complex gamma;
    Complex lambda;
    SchurFn child;
};

} // namespace detail

Complex eval(const SchurFn& f, Complex z);

namespace detail {

inline Complex eval_node(const NodeVariant& node, Complex z);

inline Complex eval_direct(const LowerStepNode& n, Complex z) {
    const Complex num = moebius(n.gamma, eval(n.child, z));
    return num / moebius(n.lambda, z);
}

// Mean of the node over 8 equispaced points of |w - z| = kSingularRadius.
// Exact to O(radius^8) for functions analytic on the circle; rejected when
// the circle leaves the closed disc.
inline Complex lower_step_circle_mean(const LowerStepNode& n, Complex z) {
    constexpr int kPoints = 8;
    Complex acc(0.0);
    for (int j = 0; j < kPoints; ++j) {
        const double phi = 2.0 * M_PI * (static_cast<double>(j) + 0.5) / kPoints;
        const Complex w = z + std::polar(kSingularRadius, phi);
        if (std::abs(w) > 1.0 + 1e-12)
            throw SingularityTooClose(
                "lower-step singularity at distance < " + std::to_string(kSingularEps) +
                " from the query point and the surrogate circle exits the closed disc");
        acc += eval_direct(n, w);
    }
    return acc / static_cast<double>(kPoints);
}

inline Complex eval_node(const NodeVariant& node, Complex z) {
    if (std::holds_alternative<ConstantNode>(node)) return std::get<ConstantNode>(node).value;
    if (std::holds_alternative<BlaschkeNode>(node)) {
        const auto& n = std::get<BlaschkeNode>(node);
        return n.prefactor * blaschke_product(n.zeros, z);
    }
    if (std::holds_alternative<AtomicSingularNode>(node)) {
        const auto& n = std::get<AtomicSingularNode>(node);
        if (std::abs(z - n.atom) <= 1e-9)
            throw AtomTooClose("evaluation within 1e-9 of the boundary atom");
        return std::exp(-n.mass * (n.atom + z) / (n.atom - z));
    }
    if (std::holds_alternative<ProductNode>(node)) {
        Complex prod(1.0);
        for (const auto& f : std::get<ProductNode>(node).factors) prod *= eval(f, z);
        return prod;
    }
    if (std::holds_alternative<MoebiusComposeNode>(node)) {
        const auto& n = std::get<MoebiusComposeNode>(node);
        return moebius(n.gamma, eval(n.child, z));
    }
    if (std::holds_alternative<RaiseStepNode>(node)) {
        const auto& n = std::get<RaiseStepNode>(node);
        const Complex w = moebius(n.lambda, z) * eval(n.child, z);
        return moebius(-n.gamma, w);
    }
    const auto& n = std::get<LowerStepNode>(node);
    if (std::abs(z - n.lambda) < kSingularEps) return lower_step_circle_mean(n, z);
    return eval_direct(n, z);
}

} // namespace detail

inline Complex eval(const SchurFn& f, Complex z) {
    return detail::eval_node(f.node(), z);
}

inline std::vector<Complex> eval_many(const SchurFn& f, const std::vector<Complex>& zs) {
    std::vector<Complex> out;
    out.reserve(zs.size());
    for (Complex z : zs) out.push_back(eval(f, z));
    return out;
}

// --- factories ------------------------------------------------------------

inline SchurFn SchurFn::constant(Complex c) {
    if (std::abs(c) > 1.0 + 1e-12)
        throw InvalidFunction("constant node lies outside the closed unit ball");
    return SchurFn(std::make_shared<const detail::NodeVariant>(detail::ConstantNode{c}));
}

inline SchurFn SchurFn::blaschke(DiscSequence zeros, Complex prefactor) {
    if (std::abs(std::abs(prefactor) - 1.0) > 1e-12)
        throw InvalidFunction("Blaschke prefactor must be unimodular");
    return SchurFn(std::make_shared<const detail::NodeVariant>(
        detail::BlaschkeNode{std::move(zeros), prefactor}));
}

inline SchurFn SchurFn::atomic_singular(double mass, Complex atom) {
    if (!(mass > 0.0)) throw InvalidFunction("atomic singular factor needs mass > 0");
    if (std::abs(std::abs(atom) - 1.0) > 1e-12)
        throw InvalidFunction("atomic singular factor needs a boundary atom");
    return SchurFn(std::make_shared<const detail::NodeVariant>(
        detail::AtomicSingularNode{mass, atom / std::abs(atom)}));
}

inline SchurFn SchurFn::product(std::vector<SchurFn> factors) {
    return SchurFn(
        std::make_shared<const detail::NodeVariant>(detail::ProductNode{std::move(factors)}));
}

inline SchurFn SchurFn::moebius_compose(const DiscPoint& gamma, SchurFn child) {
    return SchurFn(std::make_shared<const detail::NodeVariant>(
        detail::MoebiusComposeNode{gamma.value(), std::move(child)}));
}

inline SchurFn SchurFn::raise_step(const DiscPoint& gamma, const DiscPoint& lambda, SchurFn child) {
    return SchurFn(std::make_shared<const detail::NodeVariant>(
        detail::RaiseStepNode{gamma.value(), lambda.value(), std::move(child)}));
}

inline SchurFn SchurFn::lower_step(const DiscPoint& gamma, const DiscPoint& lambda, SchurFn child) {
    const Complex at_lambda = eval(child, lambda.value());
    const Complex residue = moebius(gamma.value(), at_lambda);
    if (std::abs(residue) > kLowerStepMatchTol)
        throw InvalidFunction("lower step requires child(lambda) = gamma; residual " +
                              std::to_string(std::abs(residue)));
    return SchurFn(std::make_shared<const detail::NodeVariant>(
        detail::LowerStepNode{gamma.value(), lambda.value(), std::move(child)}));
}

inline bool SchurFn::has_atomic_factor() const {
    const auto& n = node();
    if (std::holds_alternative<detail::AtomicSingularNode>(n)) return true;
    if (std::holds_alternative<detail::ProductNode>(n)) {
        for (const auto& f : std::get<detail::ProductNode>(n).factors)
            if (f.has_atomic_factor()) return true;
        return false;
    }
    if (std::holds_alternative<detail::MoebiusComposeNode>(n))
        return std::get<detail::MoebiusComposeNode>(n).child.has_atomic_factor();
    if (std::holds_alternative<detail::RaiseStepNode>(n))
        return std::get<detail::RaiseStepNode>(n).child.has_atomic_factor();
    if (std::holds_alternative<detail::LowerStepNode>(n))
        return std::get<detail::LowerStepNode>(n).child.has_atomic_factor();
    return false;
}

inline std::size_t SchurFn::depth() const {
    const auto& n = node();
    if (std::holds_alternative<detail::ProductNode>(n)) {
        std::size_t d = 0;
        for (const auto& f : std::get<detail::ProductNode>(n).factors)
            d = std::max(d, f.depth());
        return d + 1;
    }
    if (std::holds_alternative<detail::MoebiusComposeNode>(n))
        return std::get<detail::MoebiusComposeNode>(n).child.depth() + 1;
    if (std::holds_alternative<detail::RaiseStepNode>(n))
        return std::get<detail::RaiseStepNode>(n).child.depth() + 1;
    if (std::holds_alternative<detail::LowerStepNode>(n))
        return std::get<detail::LowerStepNode>(n).child.depth() + 1;
    return 1;
}

} // namespace schurnev
