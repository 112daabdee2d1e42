#ifndef NETSPACE_TRAINING_HPP
#define NETSPACE_TRAINING_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "netspace/activation.hpp"
#include "netspace/domain.hpp"
#include "netspace/errors.hpp"
#include "netspace/fn.hpp"
#include "netspace/network.hpp"
#include "netspace/probes.hpp"
#include "netspace/rng.hpp"

namespace netspace {

// Labeled sample ((x_i, y_i))_{i<N} drawn uniformly from a box, with enough
// provenance to regenerate it exactly.
struct Dataset {
    std::vector<Vector> xs;
    Vector ys;
    std::string target_id;  // free-form description of the label source
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(xs.size()); }
};

inline Dataset make_dataset(const RealFn& target, const std::string& target_id,
                            const DomainBox& box, int count, std::uint64_t seed) {
    if (count < 1) throw ContractViolation("make_dataset: need at least one sample");
    Dataset data;
    data.xs = box.sample(count, seed);
    data.ys.reserve(static_cast<std::size_t>(count));
    for (const Vector& x : data.xs) data.ys.push_back(target(x));
    data.target_id = target_id;
    data.seed = seed;
    return data;
}

enum class Optimizer { gradient_descent, momentum };

struct TrainConfig {
    double step = 0.05;
    int iterations = 2000;
    Optimizer opt = Optimizer::gradient_descent;
    double momentum = 0.9;
    double init_scale = 0.5;
    std::uint64_t seed = 0;
    int record_stride = 100;

    void validate() const {
        if (step <= 0.0) throw ContractViolation("TrainConfig: step must be > 0");
        if (iterations < 1) throw ContractViolation("TrainConfig: need at least one iteration");
        if (record_stride < 1) throw ContractViolation("TrainConfig: record stride must be >= 1");
        if (init_scale < 0.0) throw ContractViolation("TrainConfig: init scale must be >= 0");
        if (opt == Optimizer::momentum && (momentum < 0.0 || momentum >= 1.0))
            throw ContractViolation("TrainConfig: momentum must lie in [0, 1)");
    }
};

// E_N(Φ) = (1/N) Σ |R(Φ)(x_i) − y_i|².
inline double empirical_loss(const Network& net, const Activation& act, const Dataset& data) {
    if (data.size() == 0) throw ContractViolation("empirical_loss: empty dataset");
    if (net.output_dim() != 1)
        throw ContractViolation("empirical_loss: experiments use scalar-output networks");
    double acc = 0.0;
    for (int i = 0; i < data.size(); ++i) {
        const double r = realize_scalar(net, act, data.xs[static_cast<std::size_t>(i)]) -
                         data.ys[static_cast<std::size_t>(i)];
        acc += r * r;
    }
    return acc / data.size();
}

// Reverse-mode gradient of the empirical loss, layer shapes mirroring the
// network. Kink points inherit the activation's right-hand derivative.
inline Network gradient(const Network& net, const Activation& act, const Dataset& data) {
    if (data.size() == 0) throw ContractViolation("gradient: empty dataset");
    if (net.output_dim() != 1)
        throw ContractViolation("gradient: experiments use scalar-output networks");
    const int L = net.num_layers();
    Network grad = Network::zeros(net.arch());

    std::vector<Vector> pre(static_cast<std::size_t>(L));      // z_ℓ = A_ℓ x_{ℓ−1} + b_ℓ
    std::vector<Vector> post(static_cast<std::size_t>(L) + 1);  // x_ℓ, with x₀ the input
    for (int i = 0; i < data.size(); ++i) {
        post[0] = data.xs[static_cast<std::size_t>(i)];
        for (int l = 0; l < L; ++l) {
            Vector z = matvec(net.layers[static_cast<std::size_t>(l)].A, post[static_cast<std::size_t>(l)]);
            const Vector& b = net.layers[static_cast<std::size_t>(l)].b;
            for (std::size_t k = 0; k < z.size(); ++k) z[k] += b[k];
            pre[static_cast<std::size_t>(l)] = z;
            if (l + 1 < L)
                for (double& v : z) v = act.eval(v);
            post[static_cast<std::size_t>(l) + 1] = std::move(z);
        }

        Vector delta{2.0 / data.size() *
                     (post[static_cast<std::size_t>(L)][0] - data.ys[static_cast<std::size_t>(i)])};
        for (int l = L - 1; l >= 0; --l) {
            Matrix& gA = grad.layers[static_cast<std::size_t>(l)].A;
            Vector& gb = grad.layers[static_cast<std::size_t>(l)].b;
            const Vector& in = post[static_cast<std::size_t>(l)];
            for (int r = 0; r < gA.rows; ++r) {
                gb[static_cast<std::size_t>(r)] += delta[static_cast<std::size_t>(r)];
                for (int c = 0; c < gA.cols; ++c)
                    gA(r, c) += delta[static_cast<std::size_t>(r)] * in[static_cast<std::size_t>(c)];
            }
            if (l == 0) break;
            const Matrix& A = net.layers[static_cast<std::size_t>(l)].A;
            Vector next(static_cast<std::size_t>(A.cols), 0.0);
            for (int r = 0; r < A.rows; ++r)
                for (int c = 0; c < A.cols; ++c)
                    next[static_cast<std::size_t>(c)] += A(r, c) * delta[static_cast<std::size_t>(r)];
            const Vector& z = pre[static_cast<std::size_t>(l) - 1];
            for (std::size_t k = 0; k < next.size(); ++k) next[k] *= act.deriv(z[k]);
            delta = std::move(next);
        }
    }
    return grad;
}

inline Network random_network(const Architecture& arch, double scale, std::uint64_t seed) {
    Network net = Network::zeros(arch);
    Rng rng(seed);
    for (Layer& layer : net.layers) {
        for (double& w : layer.A.data) w = rng.uniform(-scale, scale);
        for (double& b : layer.b) b = rng.uniform(-scale, scale);
    }
    return net;
}

struct TrajectoryRow {
    int iter;
    double loss;
    double norm_total;
    double norm_scaling;
};

struct TrainResult {
    Network net;
    std::vector<TrajectoryRow> trajectory;
    bool diverged = false;
    double final_loss = 0.0;
};

// Full-batch gradient descent (optionally with heavy-ball momentum) on the
// empirical loss. Plain and fixed-step on purpose: any weight growth should
// be attributable to the loss landscape, not optimizer dynamics.
inline TrainResult train(const Network& net0, const Activation& act, const Dataset& data,
                         const TrainConfig& cfg) {
    cfg.validate();
    TrainResult res;
    res.net = net0;
    Network velocity = Network::zeros(net0.arch());

    auto record = [&](int iter, double loss) {
        res.trajectory.push_back({iter, loss, norm_total(res.net), norm_scaling(res.net)});
    };

    double loss = empirical_loss(res.net, act, data);
    for (int iter = 0; iter < cfg.iterations; ++iter) {
        if (!std::isfinite(loss)) {
            res.diverged = true;
            res.final_loss = loss;
            record(iter, loss);
            return res;
        }
        if (iter % cfg.record_stride == 0) record(iter, loss);

        const Network g = gradient(res.net, act, data);
        for (std::size_t l = 0; l < res.net.layers.size(); ++l) {
            Layer& layer = res.net.layers[l];
            const Layer& gl = g.layers[l];
            Layer& vl = velocity.layers[l];
            if (cfg.opt == Optimizer::momentum) {
                for (std::size_t k = 0; k < layer.A.data.size(); ++k) {
                    vl.A.data[k] = cfg.momentum * vl.A.data[k] - cfg.step * gl.A.data[k];
                    layer.A.data[k] += vl.A.data[k];
                }
                for (std::size_t k = 0; k < layer.b.size(); ++k) {
                    vl.b[k] = cfg.momentum * vl.b[k] - cfg.step * gl.b[k];
                    layer.b[k] += vl.b[k];
                }
            } else {
                for (std::size_t k = 0; k < layer.A.data.size(); ++k)
                    layer.A.data[k] -= cfg.step * gl.A.data[k];
                for (std::size_t k = 0; k < layer.b.size(); ++k)
                    layer.b[k] -= cfg.step * gl.b[k];
            }
        }
        loss = empirical_loss(res.net, act, data);
    }
    res.final_loss = loss;
    res.diverged = !std::isfinite(loss);
    record(cfg.iterations, loss);
    return res;
}

// Named regression targets for the weight-explosion experiment. "step" and
// "deriv_limit" sit at the boundary of what the architecture can realize;
// "inset" is the realization of a fixed, small network of the same
// architecture and serves as the stay-bounded control.
inline RealFn make_experiment_target(const std::string& target_id, const Activation& act,
                                     const Architecture& arch) {
    if (target_id == "step") return [](const Vector& x) { return x[0] > 0.0 ? 1.0 : 0.0; };
    if (target_id == "deriv_limit") {
        const Activation a = act;
        return [a](const Vector& x) { return a.deriv(x[0]); };
    }
    if (target_id == "inset") {
        const Network fixed = random_network(arch, 0.5, /*seed=*/0x175e7ull);
        const Activation a = act;
        return [fixed, a](const Vector& x) { return realize_scalar(fixed, a, x); };
    }
    throw ContractViolation("unknown experiment target '" + target_id +
                            "' (expected step, deriv_limit or inset)");
}

struct ExplodeRow {
    int N;
    double final_loss;
    double final_norm_total;
    double final_norm_scaling;
    bool diverged;
};

struct ExplodeSummary {
    std::string target_id;
    double init_norm_total = 0.0;  // norm of the fresh initialization
    std::vector<ExplodeRow> rows;
};

// Trains against ever larger samples of a fixed target, warm-starting each
// run from the previous solution. For targets just outside the realization
// set the fitted weights have no finite optimum to settle on and their norms
// climb with N; for the in-set control they stay put.
inline ExplodeSummary exploding_weights_experiment(const Activation& act, const Architecture& arch,
                                                   const std::string& target_id,
                                                   const std::vector<int>& N_list,
                                                   const DomainBox& box, const TrainConfig& cfg) {
    cfg.validate();
    if (N_list.empty()) throw ContractViolation("exploding_weights_experiment: empty N list");
    for (int N : N_list)
        if (N < 1) throw ContractViolation("exploding_weights_experiment: sample counts must be >= 1");
    if (arch.input_dim() != box.d || arch.output_dim() != 1)
        throw ContractViolation("exploding_weights_experiment: arch must map the domain to scalars");

    const RealFn target = make_experiment_target(target_id, act, arch);
    ExplodeSummary summary;
    summary.target_id = target_id;

    Network net = random_network(arch, cfg.init_scale, mix_seed(cfg.seed, 0xA111));
    summary.init_norm_total = norm_total(net);
    for (int N : N_list) {
        const Dataset data =
            make_dataset(target, target_id, box, N, mix_seed(cfg.seed, static_cast<std::uint64_t>(N)));
        const TrainResult run = train(net, act, data, cfg);
        summary.rows.push_back({N, run.final_loss, norm_total(run.net), norm_scaling(run.net),
                                run.diverged});
        if (!run.diverged) net = run.net;  // warm start the next sample size
    }
    return summary;
}

struct MidpointGapResult {
    double floor;                     // min over restarts of final L² distance
    std::vector<double> per_restart;  // all final distances, restart order
};

// Searches for the midpoint (R(f₁)+R(f₂))/2 inside the realization set of
// `arch` by multi-restart regression; the reported floor is the best L²
// grid distance any restart reached. A persistent floor for realizable f₁,
// f₂ is the instance-level face of non-convexity.
inline MidpointGapResult midpoint_gap_experiment(const Activation& act, const Architecture& arch,
                                                 const Network& f1, const Network& f2,
                                                 const DomainBox& box, const TrainConfig& cfg,
                                                 int restarts = 20, int sample_count = 256) {
    cfg.validate();
    if (restarts < 1) throw ContractViolation("midpoint_gap_experiment: need at least one restart");
    if (!(f1.arch() == arch) || !(f2.arch() == arch))
        throw ContractViolation("midpoint_gap_experiment: f1 and f2 must have the probed architecture");
    if (arch.input_dim() != box.d || arch.output_dim() != 1)
        throw ContractViolation("midpoint_gap_experiment: arch must map the domain to scalars");

    const Activation a = act;
    const Network g1 = f1, g2 = f2;
    const RealFn midpoint = [a, g1, g2](const Vector& x) {
        return 0.5 * (realize_scalar(g1, a, x) + realize_scalar(g2, a, x));
    };

    MidpointGapResult result{std::numeric_limits<double>::infinity(), {}};
    for (int r = 0; r < restarts; ++r) {
        const Dataset data = make_dataset(midpoint, "midpoint", box, sample_count,
                                          mix_seed(cfg.seed, 0xD1000 + static_cast<std::uint64_t>(r)));
        const Network start =
            random_network(arch, cfg.init_scale, mix_seed(cfg.seed, 0x57A27 + static_cast<std::uint64_t>(r)));
        const TrainResult run = train(start, act, data, cfg);
        const double dist = run.diverged
                                ? std::numeric_limits<double>::infinity()
                                : lp_distance(realization_fn(run.net, act), midpoint, 2.0, box);
        result.per_restart.push_back(dist);
        if (dist < result.floor) result.floor = dist;
    }
    return result;
}

}  // namespace netspace

#endif  // NETSPACE_TRAINING_HPP
