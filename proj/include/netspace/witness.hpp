#ifndef NETSPACE_WITNESS_HPP
#define NETSPACE_WITNESS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "netspace/activation.hpp"
#include "netspace/domain.hpp"
#include "netspace/errors.hpp"
#include "netspace/fn.hpp"
#include "netspace/identity.hpp"
#include "netspace/network.hpp"
#include "netspace/ops.hpp"

namespace netspace {

enum class WitnessKind { step_lp, derivative_c1, analytic_bounded, homogeneity, instability };

enum class ConvergenceMode { uniform, lp };

inline const char* to_string(WitnessKind k) {
    switch (k) {
        case WitnessKind::step_lp: return "step_lp";
        case WitnessKind::derivative_c1: return "derivative_c1";
        case WitnessKind::analytic_bounded: return "analytic_bounded";
        case WitnessKind::homogeneity: return "homogeneity";
        case WitnessKind::instability: return "instability";
    }
    return "?";
}

// An indexed family n ↦ Φ_n whose realizations approach `limit` in the
// declared mode, exhibiting a function outside (or at the edge of) the
// realization set. All networks share one architecture.
struct WitnessSequence {
    WitnessKind kind;
    Activation act;
    DomainBox domain;
    std::vector<int> indices;
    std::vector<Network> networks;  // parallel to indices
    RealFn limit;
    ConvergenceMode mode;
    double p = 2.0;  // only meaningful when mode == lp
    // Closed-form sup/L^p error bound as a function of the index, when the
    // construction comes with one; empty otherwise (rates then only fitted).
    std::function<double(int)> predicted_rate;
    // Null set on which the limit is a convention rather than a limit value;
    // L^p quadrature skips these points.
    PointPredicate quad_exclude;

    const Network& network_for(int index) const {
        for (std::size_t i = 0; i < indices.size(); ++i)
            if (indices[i] == index) return networks[i];
        throw ContractViolation("WitnessSequence: index " + std::to_string(index) + " not generated");
    }
};

namespace detail {

inline void check_indices(const std::vector<int>& ns, const char* what) {
    if (ns.empty()) throw ContractViolation(std::string(what) + ": empty index list");
    for (int n : ns)
        if (n < 1) throw ContractViolation(std::string(what) + ": indices must be >= 1");
}

// The (L−1)-layer network realizing (an approximation of) the hyperplane
// functional J(x) = ⟨v, x − x*⟩: a single affine collapse onto ⟨v, ·⟩
// followed by a scalar identity approximant. Exact when L = 2. The
// approximant is certified on [−2dB, 2dB], which contains the range of J.
inline Network hyperplane_functional_net(const Activation& act, const DomainBox& box,
                                         const Vector& x_star, const Vector& v, int L, double eps) {
    const int d = box.d;
    Matrix row(1, d);
    double shift = 0.0;
    for (int i = 0; i < d; ++i) {
        row(0, i) = v[static_cast<std::size_t>(i)];
        shift += v[static_cast<std::size_t>(i)] * x_star[static_cast<std::size_t>(i)];
    }
    const Network affine({{row, {-shift}}});
    if (L == 2) return affine;
    const Network psi = build_identity_network(act, 1, L - 1, eps, 2.0 * d * box.B).net;
    return concatenate(psi, affine);
}

inline void check_step_inputs(const Architecture& hint, const DomainBox& box, const Vector& x_star,
                              const Vector& v) {
    if (hint.input_dim() != box.d || hint.output_dim() != 1)
        throw ContractViolation("build_step_witness: arch hint must map the domain to scalars");
    if (hint.num_layers() < 2)
        throw ContractViolation("build_step_witness: need L >= 2");
    if (static_cast<int>(x_star.size()) != box.d || !box.contains(x_star))
        throw ContractViolation("build_step_witness: x* must lie in the domain box");
    if (static_cast<int>(v.size()) != box.d)
        throw ContractViolation("build_step_witness: v must have the domain dimension");
    double norm2 = 0.0;
    for (double c : v) norm2 += c * c;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-9)
        throw ContractViolation("build_step_witness: v must be a unit vector");
}

}  // namespace detail

// Step-function witness: realizations converge in L^p to a jump across the
// hyperplane H = {⟨v, x − x*⟩ = 0}, a function no continuous network realizes.
// Unbounded activations with distinct asymptotic slopes λ ≠ λ′ use
//   h_n(x) = ϱ(nJ(x)) − ϱ(nJ(x) − 1),  arch (d, 1, …, 1, 2, 1),
// with limit λ·1_{J>0} + γ·1_{J=0} + λ′·1_{J<0}, γ = ϱ(0) − ϱ(−1).
// Bounded activations use h̃_n(x) = ϱ(nJ(x)), arch (d, 1, …, 1, 1, 1), with
// limit c·1_{J>0} + ϱ(0)·1_{J=0} + c′·1_{J<0} from the function limits c, c′.
// The arch hint fixes d and L only; the networks use the minimal widths above.
inline WitnessSequence build_step_witness(const Activation& act, const Architecture& arch_hint,
                                          const std::vector<int>& n_list, const DomainBox& domain,
                                          const Vector& x_star, const Vector& v) {
    detail::check_indices(n_list, "build_step_witness");
    detail::check_step_inputs(arch_hint, domain, x_star, v);
    const int L = arch_hint.num_layers();

    double lo, hi;  // limit values on {J < 0} and {J > 0}
    double at_zero;
    bool unbounded_branch;
    if (!act.bounded() && act.slope_pos_inf() && act.slope_neg_inf() &&
        *act.slope_pos_inf() != *act.slope_neg_inf()) {
        unbounded_branch = true;
        hi = *act.slope_pos_inf();
        lo = *act.slope_neg_inf();
        at_zero = act.eval(0.0) - act.eval(-1.0);
        if (arch_hint.dims[static_cast<std::size_t>(L - 1)] < 2)
            throw ContractViolation(
                "build_step_witness: unbounded branch needs width >= 2 in the last hidden layer");
    } else if (act.bounded() && act.limit_pos_inf() && act.limit_neg_inf() &&
               *act.limit_pos_inf() != *act.limit_neg_inf()) {
        unbounded_branch = false;
        hi = *act.limit_pos_inf();
        lo = *act.limit_neg_inf();
        at_zero = act.eval(0.0);
    } else {
        throw UnsupportedActivation(
            "build_step_witness: " + act.name() +
            " has neither distinct asymptotic derivative slopes (unbounded case) nor distinct "
            "function limits at ±infinity (bounded case)");
    }

    WitnessSequence ws{WitnessKind::step_lp, act, domain, {}, {}, nullptr,
                       ConvergenceMode::lp, 1.0, nullptr, nullptr};
    const Vector vs = v;
    const Vector xs = x_star;
    auto J_exact = [vs, xs](const Vector& x) {
        double acc = 0.0;
        for (std::size_t i = 0; i < vs.size(); ++i) acc += vs[i] * (x[i] - xs[i]);
        return acc;
    };
    ws.limit = [J_exact, hi, lo, at_zero](const Vector& x) {
        const double j = J_exact(x);
        if (j > 0.0) return hi;
        if (j < 0.0) return lo;
        return at_zero;
    };
    ws.quad_exclude = [J_exact](const Vector& x) { return J_exact(x) == 0.0; };

    for (int n : n_list) {
        // J realized exactly for L = 2, else through an identity approximant
        // with slack 1/(2n²), tight enough not to disturb the 1/(2n) rate.
        const Network jnet =
            detail::hyperplane_functional_net(act, domain, x_star, v, L, 1.0 / (static_cast<double>(n) * n));
        Network head;
        if (unbounded_branch) {
            Matrix A1(2, 1);
            A1(0, 0) = n;
            A1(1, 0) = n;
            Matrix A2(1, 2);
            A2(0, 0) = 1.0;
            A2(0, 1) = -1.0;
            head = Network({{A1, {0.0, -1.0}}, {A2, {0.0}}});
        } else {
            head = Network({{Matrix(1, 1, static_cast<double>(n)), {0.0}}, {Matrix(1, 1, 1.0), {0.0}}});
        }
        ws.indices.push_back(n);
        ws.networks.push_back(concatenate(head, jnet));
    }
    return ws;
}

// Derivative witness (activations in C¹ but not C^∞): realizations
//   f_n(x) = n·(ϱ(λx₁ + λ/n) − ϱ(λx₁))
// converge uniformly to λϱ′(λx₁), which lies outside the realization set for
// the kink-free-but-not-smooth activations. Arch (d, 1, …, 1, 2, 1); the
// scalar feed x₁ is exact for L = 2.
inline WitnessSequence build_derivative_witness(const Activation& act, double lambda,
                                                const DomainBox& domain,
                                                const std::vector<int>& n_list, int L = 2) {
    detail::check_indices(n_list, "build_derivative_witness");
    if (lambda <= 0.0) throw ContractViolation("build_derivative_witness: lambda must be > 0");
    if (L < 2) throw ContractViolation("build_derivative_witness: need L >= 2");
    if (act.smoothness() < 1)
        throw UnsupportedActivation("build_derivative_witness: " + act.name() +
                                    " is not C1 (the construction divides by the derivative's continuity)");

    WitnessSequence ws{WitnessKind::derivative_c1, act, domain, {}, {}, nullptr,
                       ConvergenceMode::uniform, 2.0, nullptr, nullptr};
    const Activation a = act;
    ws.limit = [a, lambda](const Vector& x) { return lambda * a.deriv(lambda * x[0]); };

    for (int n : n_list) {
        const Network proj = [&] {
            if (L == 2) {
                Matrix row(1, domain.d);
                row(0, 0) = 1.0;
                return Network({{row, {0.0}}});
            }
            return build_projection_network(act, domain.d, 0, L - 1,
                                            1.0 / (2.0 * n * static_cast<double>(n)), domain.B)
                .net;
        }();
        Matrix A1(2, 1);
        A1(0, 0) = lambda;
        A1(1, 0) = lambda;
        Matrix A2(1, 2);
        A2(0, 0) = n;
        A2(0, 1) = -n;
        const Network head({{A1, {lambda / n, 0.0}}, {A2, {0.0}}});
        ws.indices.push_back(n);
        ws.networks.push_back(concatenate(head, proj));
    }
    return ws;
}

// Analytic-activation witness (bounded + analytic): realizations
//   ϱ(x₁) + n·(ϱ(x₁/n + x*) − ϱ(x*))
// converge uniformly to ϱ(x₁) + ϱ′(x*)·x₁, which is unbounded on ℝ while
// every fixed-size realization with bounded ϱ stays bounded... on compact Ω
// the point is subtler (analyticity), but the family is exactly the one that
// certifies non-closedness. Arch (d, 1, …, 1, 2, 1).
inline WitnessSequence build_analytic_witness(const Activation& act, double x_star,
                                              const DomainBox& domain, const std::vector<int>& n_list,
                                              int L = 2) {
    detail::check_indices(n_list, "build_analytic_witness");
    if (L < 2) throw ContractViolation("build_analytic_witness: need L >= 2");
    if (!act.bounded() || !act.analytic())
        throw UnsupportedActivation("build_analytic_witness: " + act.name() +
                                    " is not bounded and analytic");
    if (act.deriv(x_star) == 0.0)
        throw ContractViolation("build_analytic_witness: need an anchor with nonzero derivative");

    WitnessSequence ws{WitnessKind::analytic_bounded, act, domain, {}, {}, nullptr,
                       ConvergenceMode::uniform, 2.0, nullptr, nullptr};
    const Activation a = act;
    const double slope = act.deriv(x_star);
    ws.limit = [a, slope](const Vector& x) { return a.eval(x[0]) + slope * x[0]; };

    for (int n : n_list) {
        const Network proj = [&] {
            if (L == 2) {
                Matrix row(1, domain.d);
                row(0, 0) = 1.0;
                return Network({{row, {0.0}}});
            }
            return build_projection_network(act, domain.d, 0, L - 1, 1.0 / n, domain.B).net;
        }();
        Matrix A1(2, 1);
        A1(0, 0) = 1.0;
        A1(1, 0) = 1.0 / n;
        Matrix A2(1, 2);
        A2(0, 0) = 1.0;
        A2(0, 1) = n;
        const Network head({{A1, {0.0, x_star}}, {A2, {-act.eval(x_star) * n}}});
        ws.indices.push_back(n);
        ws.networks.push_back(concatenate(head, proj));
    }
    return ws;
}

// Approximate-homogeneity witness: if |ϱ(x) − x^r| ≤ s for x ≥ 0 and
// |ϱ(x) − x^q| ≤ s for x ≤ 0 with r ≠ q, then k^{−r}·ϱ(k·x₁) → (x₁)₊^r
// uniformly on the box. One hidden unit, arch (d, 1, 1): first-layer row
// k·e₁ᵀ, output weight k^{−r}.
inline WitnessSequence build_homogeneity_witness(const Activation& act, const HomogeneityOrder& order,
                                                 const DomainBox& domain,
                                                 const std::vector<int>& k_list) {
    detail::check_indices(k_list, "build_homogeneity_witness");
    if (order.q < 0 || order.r <= order.q)
        throw ContractViolation(
            "build_homogeneity_witness: need orders r > q >= 0 for k^{-r}·ϱ(k·) to converge");

    WitnessSequence ws{WitnessKind::homogeneity, act, domain, {}, {}, nullptr,
                       ConvergenceMode::uniform, 2.0, nullptr, nullptr};
    const int r = order.r;
    ws.limit = [r](const Vector& x) { return x[0] > 0.0 ? std::pow(x[0], r) : 0.0; };

    // Softplus has the two-sided slack ln 2 (ln(1+eˣ) is within ln 2 of x on
    // x ≥ 0 and of 0 in absolute value on x ≤ 0), giving the tight rate
    // ln(2)/k. Generic orders fall back to the coarser branch bound.
    if (act.id() == Act::softplus && order.r == 1 && order.q == 0) {
        ws.predicted_rate = [](int k) { return std::log(2.0) / k; };
    } else {
        const double s = order.s;
        const int q = order.q;
        const double B = domain.B;
        ws.predicted_rate = [s, q, r, B](int k) {
            return (s + std::pow(static_cast<double>(k), q) * std::pow(B, q)) /
                   std::pow(static_cast<double>(k), r);
        };
    }

    for (int k : k_list) {
        Matrix A1(1, domain.d);
        A1(0, 0) = k;
        Matrix A2(1, 1, std::pow(static_cast<double>(k), -r));
        ws.indices.push_back(k);
        ws.networks.push_back(Network({{A1, {0.0}}, {A2, {0.0}}}));
    }
    return ws;
}

}  // namespace netspace

#endif  // NETSPACE_WITNESS_HPP
