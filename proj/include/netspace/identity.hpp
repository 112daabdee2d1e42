#ifndef NETSPACE_IDENTITY_HPP
#define NETSPACE_IDENTITY_HPP

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "netspace/activation.hpp"
#include "netspace/domain.hpp"
#include "netspace/errors.hpp"
#include "netspace/network.hpp"
#include "netspace/ops.hpp"

namespace netspace {

// Identity approximants. For L = 1 the exact affine identity works. For
// L ≥ 2 we chain two-layer blocks computing
//
//     ϱ_C(x) = (C/s₀)·ϱ(x/C + x₀) − C·r₀/s₀,
//
// which flattens onto the identity as C grows because ϱ is differentiable at
// the anchor x₀ with slope s₀ ≠ 0. The scale C exists but is not given by a
// formula, so we search C ∈ {B, 2B, 4B, …, 2²⁰·B} and certify the first C
// whose grid sup-error is ≤ ε. With ReLU and anchor x₀ = 1 the block is
// exactly the identity on [−C, ∞), so the search ends at C = B with error 0.

struct IdentityResult {
    Network net;
    int d = 0;
    int L = 0;
    double eps = 0.0;
    double B = 0.0;
    double C = 0.0;        // 0 when no scale search was needed (L = 1)
    Anchor anchor{0.0, 0.0, 0.0};
    double sup_error = 0.0;  // achieved on the certification grid
};

namespace detail {

// Two-layer block realizing ϱ_C componentwise on ℝ^d.
inline Network identity_block(const Activation& act, int d, double C) {
    const Anchor an = act.anchor();
    Matrix A1(d, d), A2(d, d);
    Vector b1(static_cast<std::size_t>(d), an.x0), b2(static_cast<std::size_t>(d), -C * an.r0 / an.s0);
    for (int i = 0; i < d; ++i) {
        A1(i, i) = 1.0 / C;
        A2(i, i) = C / an.s0;
    }
    return Network({{A1, b1}, {A2, b2}});
}

// Two-layer block realizing ϱ_C(x_coord) — the d→1 head of the projection
// approximant.
inline Network projection_block(const Activation& act, int d, int coord, double C) {
    const Anchor an = act.anchor();
    Matrix A1(1, d), A2(1, 1);
    A1(0, coord) = 1.0 / C;
    A2(0, 0) = C / an.s0;
    return Network({{A1, {an.x0}}, {A2, {-C * an.r0 / an.s0}}});
}

template <class Build, class Measure>
IdentityResult certified_scale_search(const Activation& act, int d, int L, double eps, double B,
                                      Build&& build, Measure&& measure, const char* what) {
    IdentityResult best;
    best.d = d;
    best.L = L;
    best.eps = eps;
    best.B = B;
    best.anchor = act.anchor();
    best.sup_error = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 20; ++k) {
        const double C = B * std::pow(2.0, k);
        Network net = build(C);
        const double err = measure(net);
        if (err < best.sup_error) {
            best.net = net;
            best.C = C;
            best.sup_error = err;
        }
        if (err <= eps) {
            best.net = std::move(net);
            best.C = C;
            best.sup_error = err;
            return best;
        }
    }
    throw ConstructionFailure(std::string(what) + ": no scale C up to 2^20*B certified eps=" +
                              std::to_string(eps) + " for " + act.name() +
                              "; best achieved sup-error " + std::to_string(best.sup_error));
}

}  // namespace detail

// L-layer approximant of id_{ℝ^d} on [−B, B]^d, architecture (d, d, …, d).
inline IdentityResult build_identity_network(const Activation& act, int d, int L, double eps,
                                             double B, int grid_points = 0) {
    if (d < 1 || L < 1) throw ContractViolation("build_identity_network: need d >= 1, L >= 1");
    if (eps <= 0.0 || B <= 0.0) throw ContractViolation("build_identity_network: need eps > 0, B > 0");
    if (L == 1) {
        IdentityResult res;
        res.net = Network({{Matrix::identity(d), Vector(static_cast<std::size_t>(d), 0.0)}});
        res.d = d;
        res.L = 1;
        res.eps = eps;
        res.B = B;
        res.anchor = act.anchor();
        return res;
    }
    if (act.anchor().s0 == 0.0)
        throw UnsupportedActivation("build_identity_network: anchor slope is zero for " + act.name());

    const DomainBox box(d, B, grid_points > 0 ? grid_points : default_grid_points(d));
    auto build = [&](double C) {
        Network chain = detail::identity_block(act, d, C);
        for (int i = 1; i < L - 1; ++i) chain = concatenate(detail::identity_block(act, d, C), chain);
        return chain;
    };
    auto measure = [&](const Network& net) {
        double worst = 0.0;
        box.for_each_grid_point([&](const Vector& x) {
            const Vector y = realize(net, act, x);
            for (int i = 0; i < d; ++i) worst = std::max(worst, std::abs(y[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]));
        });
        return worst;
    };
    return detail::certified_scale_search(act, d, L, eps, B, build, measure, "build_identity_network");
}

// L-layer approximant of x ↦ x_coord (0-based) on [−B, B]^d, architecture
// (d, 1, …, 1). Exactly constant in every other coordinate by construction.
inline IdentityResult build_projection_network(const Activation& act, int d, int coord, int L,
                                               double eps, double B, int grid_points = 0) {
    if (d < 1 || L < 1) throw ContractViolation("build_projection_network: need d >= 1, L >= 1");
    if (coord < 0 || coord >= d) throw ContractViolation("build_projection_network: coordinate out of range");
    if (eps <= 0.0 || B <= 0.0) throw ContractViolation("build_projection_network: need eps > 0, B > 0");
    if (L == 1) {
        Matrix A(1, d);
        A(0, coord) = 1.0;
        IdentityResult res;
        res.net = Network({{A, {0.0}}});
        res.d = d;
        res.L = 1;
        res.eps = eps;
        res.B = B;
        res.anchor = act.anchor();
        return res;
    }
    if (act.anchor().s0 == 0.0)
        throw UnsupportedActivation("build_projection_network: anchor slope is zero for " + act.name());

    const DomainBox box(d, B, grid_points > 0 ? grid_points : default_grid_points(d));
    auto build = [&](double C) {
        Network chain = detail::projection_block(act, d, coord, C);
        for (int i = 1; i < L - 1; ++i) chain = concatenate(detail::identity_block(act, 1, C), chain);
        return chain;
    };
    auto measure = [&](const Network& net) {
        double worst = 0.0;
        box.for_each_grid_point([&](const Vector& x) {
            worst = std::max(worst, std::abs(realize_scalar(net, act, x) - x[static_cast<std::size_t>(coord)]));
        });
        return worst;
    };
    return detail::certified_scale_search(act, d, L, eps, B, build, measure, "build_projection_network");
}

}  // namespace netspace

#endif  // NETSPACE_IDENTITY_HPP
