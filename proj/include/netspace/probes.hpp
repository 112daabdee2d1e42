#ifndef NETSPACE_PROBES_HPP
#define NETSPACE_PROBES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/SVD>

#include "netspace/activation.hpp"
#include "netspace/domain.hpp"
#include "netspace/fn.hpp"
#include "netspace/network.hpp"

namespace netspace {

// Grid surrogate for ‖f − g‖_sup over the box.
inline double sup_distance(const RealFn& f, const RealFn& g, const DomainBox& box) {
    double worst = 0.0;
    box.for_each_grid_point([&](const Vector& x) {
        const double e = std::abs(f(x) - g(x));
        if (e > worst) worst = e;
    });
    return worst;
}

// Grid quadrature for ‖f − g‖_{L^p}: uniform weight (2B)^d / #points per grid
// point (a Riemann sum; all points carry the same cell volume). Points where
// `exclude` fires are skipped — used for limits only defined off a null set —
// and still count toward the total, i.e. excluded cells contribute zero mass.
inline double lp_distance(const RealFn& f, const RealFn& g, double p, const DomainBox& box,
                          const PointPredicate& exclude = nullptr) {
    if (p <= 0.0) throw ContractViolation("lp_distance: p must be > 0");
    double vol = 1.0;
    for (int k = 0; k < box.d; ++k) vol *= 2.0 * box.B;
    const double w = vol / static_cast<double>(box.grid_size());
    double acc = 0.0;
    box.for_each_grid_point([&](const Vector& x) {
        if (exclude && exclude(x)) return;
        acc += w * std::pow(std::abs(f(x) - g(x)), p);
    });
    return std::pow(acc, 1.0 / p);
}

// Max difference quotient |f(x)−f(y)|/‖x−y‖_∞ over grid-adjacent pairs.
// A lower bound on Lip(f); exact for piecewise-linear f whose pieces are
// resolved by the grid.
inline double empirical_lipschitz(const RealFn& f, const DomainBox& box) {
    const int n = box.grid_points_per_axis;
    const std::int64_t total = box.grid_size();
    std::vector<double> values(static_cast<std::size_t>(total));
    std::int64_t flat = 0;
    box.for_each_grid_point([&](const Vector& x) { values[static_cast<std::size_t>(flat++)] = f(x); });

    const double h = box.spacing();
    double best = 0.0;
    // Odometer order is last-axis-fastest: axis k has stride n^(d−1−k).
    std::int64_t stride = 1;
    for (int k = box.d - 1; k >= 0; --k) {
        for (std::int64_t i = 0; i < total; ++i) {
            const std::int64_t pos_k = (i / stride) % n;
            if (pos_k + 1 >= n) continue;
            const double q = std::abs(values[static_cast<std::size_t>(i + stride)] -
                                      values[static_cast<std::size_t>(i)]) / h;
            if (q > best) best = q;
        }
        stride *= n;
    }
    return best;
}

struct LipschitzCheck {
    double empirical;
    double bound;
    bool ok;
};

// Checks the a-priori bound Lip(R(Φ)) ≤ M^L · N₀⋯N_{L−1} · ‖Φ‖_scaling^L
// (ℓ∞ norms on both sides; M is the activation's global Lipschitz constant,
// taken as max(M, 1) since that is how the bound is derived). The empirical
// side uses the ℓ∞ norm across output coordinates.
inline LipschitzCheck lipschitz_bound_check(const Network& net, const Activation& act,
                                            const DomainBox& box) {
    const Architecture arch = net.arch();
    const int L = arch.num_layers();
    const double M = std::max(1.0, act.lipschitz());
    double bound = 1.0;
    for (int l = 0; l < L; ++l) bound *= arch.dims[static_cast<std::size_t>(l)];
    bound *= std::pow(M, L) * std::pow(norm_scaling(net), L);

    double empirical;
    if (arch.output_dim() == 1) {
        empirical = empirical_lipschitz(realization_fn(net, act), box);
    } else {
        // Vector-valued: same adjacent-pair scan, ℓ∞ norm of the output delta.
        const int n = box.grid_points_per_axis;
        const std::int64_t total = box.grid_size();
        std::vector<Vector> values(static_cast<std::size_t>(total));
        std::int64_t flat = 0;
        box.for_each_grid_point(
            [&](const Vector& x) { values[static_cast<std::size_t>(flat++)] = realize(net, act, x); });
        const double h = box.spacing();
        empirical = 0.0;
        std::int64_t stride = 1;
        for (int k = box.d - 1; k >= 0; --k) {
            for (std::int64_t i = 0; i < total; ++i) {
                const std::int64_t pos_k = (i / stride) % n;
                if (pos_k + 1 >= n) continue;
                const Vector& u = values[static_cast<std::size_t>(i)];
                const Vector& v = values[static_cast<std::size_t>(i + stride)];
                double d_inf = 0.0;
                for (std::size_t c = 0; c < u.size(); ++c) d_inf = std::max(d_inf, std::abs(v[c] - u[c]));
                empirical = std::max(empirical, d_inf / h);
            }
            stride *= n;
        }
    }
    // Affine networks attain the bound exactly, and the difference quotient
    // carries a few ulps of forward-pass rounding, so equality needs slack.
    return {empirical, bound, empirical <= bound * (1.0 + 1e-12)};
}

struct RankProbeReport {
    int num_functions = 0;
    int num_sample_points = 0;
    std::vector<double> singular_values;  // descending
    int numerical_rank = 0;
    std::int64_t parameter_count = 0;
    bool verdict = false;  // numerical_rank > parameter_count
};

// Samples each realization at m low-discrepancy points and counts singular
// values above τ·σ_max. More independent realizations than parameters rules
// out convexity of the realization set, which is what the verdict flags.
inline RankProbeReport rank_probe(const std::vector<Network>& nets, const Activation& act,
                                  const DomainBox& box, int num_points, double tau,
                                  std::uint64_t seed = 0) {
    if (nets.empty()) throw ContractViolation("rank_probe: need at least one network");
    const Architecture arch = nets.front().arch();
    for (const Network& n : nets)
        if (!(n.arch() == arch))
            throw ContractViolation("rank_probe: all networks must share one architecture");
    if (arch.output_dim() != 1)
        throw ContractViolation("rank_probe: scalar-output networks only");
    if (num_points < static_cast<int>(nets.size()))
        throw ContractViolation("rank_probe: need at least as many sample points as networks");

    const std::vector<Vector> pts = halton_points(box, num_points, seed);
    Eigen::MatrixXd G(static_cast<Eigen::Index>(nets.size()), num_points);
    for (std::size_t i = 0; i < nets.size(); ++i)
        for (int j = 0; j < num_points; ++j)
            G(static_cast<Eigen::Index>(i), j) = realize_scalar(nets[i], act, pts[static_cast<std::size_t>(j)]);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
    RankProbeReport rep;
    rep.num_functions = static_cast<int>(nets.size());
    rep.num_sample_points = num_points;
    rep.parameter_count = arch.num_params();
    rep.singular_values.assign(svd.singularValues().data(),
                               svd.singularValues().data() + svd.singularValues().size());
    const double sigma_max = rep.singular_values.empty() ? 0.0 : rep.singular_values.front();
    if (sigma_max > 0.0)
        for (double s : rep.singular_values)
            if (s > tau * sigma_max) ++rep.numerical_rank;
    rep.verdict = rep.numerical_rank > rep.parameter_count;
    return rep;
}

// --- parameter-vector plumbing shared by the gradient checker and training ---

inline std::int64_t param_count(const Network& net) { return net.arch().num_params(); }

// Flat parameter order: layer by layer, A row-major, then b.
inline double get_param(const Network& net, std::int64_t idx) {
    for (const Layer& l : net.layers) {
        const std::int64_t nw = static_cast<std::int64_t>(l.A.data.size());
        if (idx < nw) return l.A.data[static_cast<std::size_t>(idx)];
        idx -= nw;
        const std::int64_t nb = static_cast<std::int64_t>(l.b.size());
        if (idx < nb) return l.b[static_cast<std::size_t>(idx)];
        idx -= nb;
    }
    throw ContractViolation("get_param: index out of range");
}

inline void set_param(Network& net, std::int64_t idx, double v) {
    for (Layer& l : net.layers) {
        const std::int64_t nw = static_cast<std::int64_t>(l.A.data.size());
        if (idx < nw) {
            l.A.data[static_cast<std::size_t>(idx)] = v;
            return;
        }
        idx -= nw;
        const std::int64_t nb = static_cast<std::int64_t>(l.b.size());
        if (idx < nb) {
            l.b[static_cast<std::size_t>(idx)] = v;
            return;
        }
        idx -= nb;
    }
    throw ContractViolation("set_param: index out of range");
}

// Max over parameters of |analytic − central difference| / max(1, |analytic|).
// `loss` is any scalar function of the weights; `analytic_grad` its claimed
// gradient at `net`, stored network-shaped.
template <class LossFn>
double finite_diff_gradient_check(LossFn&& loss, const Network& net, const Network& analytic_grad,
                                  double h) {
    if (h <= 0.0) throw ContractViolation("finite_diff_gradient_check: h must be > 0");
    const std::int64_t D = param_count(net);
    Network probe = net;
    double worst = 0.0;
    for (std::int64_t i = 0; i < D; ++i) {
        const double theta = get_param(net, i);
        set_param(probe, i, theta + h);
        const double up = loss(probe);
        set_param(probe, i, theta - h);
        const double down = loss(probe);
        set_param(probe, i, theta);
        const double fd = (up - down) / (2.0 * h);
        const double analytic = get_param(analytic_grad, i);
        const double err = std::abs(analytic - fd) / std::max(1.0, std::abs(analytic));
        if (err > worst) worst = err;
    }
    return worst;
}

}  // namespace netspace

#endif  // NETSPACE_PROBES_HPP
