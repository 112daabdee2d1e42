#ifndef NETSPACE_INSTABILITY_HPP
#define NETSPACE_INSTABILITY_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "netspace/activation.hpp"
#include "netspace/domain.hpp"
#include "netspace/errors.hpp"
#include "netspace/identity.hpp"
#include "netspace/network.hpp"
#include "netspace/ops.hpp"
#include "netspace/witness.hpp"

namespace netspace {

// Second difference f_a(x) = ϱ(x+a) − 2ϱ(x) + ϱ(x−a). Constant iff ϱ is
// affine on every lattice a·ℤ + t, which for the zoo means: never.
inline double second_difference(const Activation& act, double a, double x) {
    return act.eval(x + a) - 2.0 * act.eval(x) + act.eval(x - a);
}

// Outcome of the inverse-instability construction: the sequence itself plus
// the certificate that f_a is non-constant (two points where it differs).
struct InstabilityResult {
    WitnessSequence seq;
    double a;            // second-difference step, probed if not supplied
    double b_point;      // grid argmin of f_a
    double c_point;      // grid argmax of f_a
    double oscillation;  // f_a(c_point) − f_a(b_point) > 1e−6
};

namespace detail {

struct FaProbe {
    double b_point;
    double c_point;
    double oscillation;
};

inline FaProbe probe_second_difference(const Activation& act, double a) {
    // f_a lives on all of ℝ, but any non-affine behaviour of the zoo shows
    // up well inside [−4−a, 4+a].
    const double R = 4.0 + a;
    const int grid = 2049;
    double lo = second_difference(act, a, -R), hi = lo;
    double arg_lo = -R, arg_hi = -R;
    for (int i = 1; i < grid; ++i) {
        const double x = -R + 2.0 * R * i / (grid - 1);
        const double v = second_difference(act, a, x);
        if (v < lo) { lo = v; arg_lo = x; }
        if (v > hi) { hi = v; arg_hi = x; }
    }
    return {arg_lo, arg_hi, hi - lo};
}

// Two-layer core realizing n⁻¹·f_a(n²(x − x₀)₁). The middle coefficient −2
// is split over two identical hidden neurons, −2ϱ(z) = −ϱ(z) − ϱ(z), so the
// output row is n⁻¹·(1, −1, −1, 1) and ‖Φ_n‖_scaling = max(n², 1/n) = n² for
// every n ≥ 1. The textbook three-neuron row n⁻¹·(1, −2, 1) would bump the
// norm to 2/n > n² at n = 1; it is kept only for callers that pin the first
// hidden width to exactly 3 (there the n = 1 norm is 2, not 1).
inline Network instability_core(const Activation&, double a, const Vector& x0, int n,
                                bool three_neuron) {
    const int d = static_cast<int>(x0.size());
    const double n2 = static_cast<double>(n) * n;
    const double inner = -n2 * x0[0];
    const int width = three_neuron ? 3 : 4;
    Matrix A1(width, d);
    for (int i = 0; i < width; ++i) A1(i, 0) = n2;
    Vector b1(static_cast<std::size_t>(width), inner);
    b1.front() += a;
    b1.back() -= a;
    Matrix A2(1, width);
    if (three_neuron) {
        A2(0, 0) = 1.0 / n;
        A2(0, 1) = -2.0 / n;
        A2(0, 2) = 1.0 / n;
    } else {
        A2(0, 0) = 1.0 / n;
        A2(0, 1) = -1.0 / n;
        A2(0, 2) = -1.0 / n;
        A2(0, 3) = 1.0 / n;
    }
    return Network({{A1, b1}, {A2, {0.0}}});
}

}  // namespace detail

// Inverse-instability family: realizations F_n = ψ(n⁻¹·f_a(n²(x − x₀)₁))
// converge uniformly to 0 while every parameterization in the family has
// ‖·‖_scaling = n² — the realization map has no continuous local inverse.
// `a` may be omitted; then a ∈ {1, 1/2, 1/4, …} is probed until f_a visibly
// oscillates. ψ is the (L−1)-layer identity approximant (nothing for L = 2).
inline InstabilityResult build_instability_sequence(const Activation& act, const Architecture& arch,
                                                    const DomainBox& domain, const Vector& x0_point,
                                                    std::optional<double> a,
                                                    const std::vector<int>& n_list) {
    detail::check_indices(n_list, "build_instability_sequence");
    const int L = arch.num_layers();
    if (arch.input_dim() != domain.d || arch.output_dim() != 1)
        throw ContractViolation("build_instability_sequence: arch must map the domain to scalars");
    if (L < 2) throw ContractViolation("build_instability_sequence: need L >= 2");
    if (arch.dims[1] < 3)
        throw ContractViolation("build_instability_sequence: first hidden layer must have width >= 3");
    if (static_cast<int>(x0_point.size()) != domain.d)
        throw ContractViolation("build_instability_sequence: x0 must have the domain dimension");
    for (double c : x0_point)
        if (std::abs(c) >= domain.B)
            throw ContractViolation("build_instability_sequence: x0 must be interior to the domain");

    double a_used = a.value_or(1.0);
    detail::FaProbe probe{};
    if (a) {
        if (a_used <= 0.0) throw ContractViolation("build_instability_sequence: a must be > 0");
        probe = detail::probe_second_difference(act, a_used);
        if (probe.oscillation <= 1e-6)
            throw ConstructionFailure("build_instability_sequence: f_a is numerically constant for a = " +
                                      std::to_string(a_used) + " (oscillation " +
                                      std::to_string(probe.oscillation) + ")");
    } else {
        bool found = false;
        for (int k = 0; k <= 40; ++k, a_used *= 0.5) {
            probe = detail::probe_second_difference(act, a_used);
            if (probe.oscillation > 1e-6) {
                found = true;
                break;
            }
        }
        if (!found)
            throw UnsupportedActivation("build_instability_sequence: " + act.name() +
                                        " has constant second differences at every probed step; "
                                        "the construction needs a non-affine activation");
    }

    const bool three_neuron = arch.dims[1] == 3;
    const double M = act.lipschitz();
    const double fa_bound = 2.0 * M * a_used;

    WitnessSequence ws{WitnessKind::instability, act, domain, {}, {}, nullptr,
                       ConvergenceMode::uniform, 2.0, nullptr, nullptr};
    ws.limit = [](const Vector&) { return 0.0; };
    ws.predicted_rate = [fa_bound, L](int n) {
        double r = fa_bound / n;
        if (L > 2) r += 1.0 / (static_cast<double>(n) * n);
        return r;
    };

    for (int n : n_list) {
        Network core = detail::instability_core(act, a_used, x0_point, n, three_neuron);
        if (L > 2) {
            // |inner values| ≤ 2M|a|/n ≤ fa_bound, so certify ψ there.
            const Network psi =
                build_identity_network(act, 1, L - 1, 1.0 / (static_cast<double>(n) * n),
                                       std::max(1.0, fa_bound))
                    .net;
            core = concatenate(psi, core);
        }
        ws.indices.push_back(n);
        ws.networks.push_back(enlarge(core, arch));
    }
    return {std::move(ws), a_used, probe.b_point, probe.c_point, probe.oscillation};
}

}  // namespace netspace

#endif  // NETSPACE_INSTABILITY_HPP
