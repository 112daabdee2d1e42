#ifndef NETSPACE_NETWORK_HPP
#define NETSPACE_NETWORK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "netspace/activation.hpp"
#include "netspace/matrix.hpp"

namespace netspace {

// Layer widths S = (N₀, N₁, …, N_L). N₀ is the input dimension, L the
// number of affine layers.
struct Architecture {
    std::vector<int> dims;

    Architecture() = default;
    explicit Architecture(std::vector<int> d) : dims(std::move(d)) { validate(); }
    Architecture(std::initializer_list<int> d) : dims(d) { validate(); }

    int input_dim() const { return dims.front(); }
    int output_dim() const { return dims.back(); }
    int num_layers() const { return static_cast<int>(dims.size()) - 1; }

    // D = Σ_{ℓ=1}^{L} (N_{ℓ−1}+1)·N_ℓ — every weight plus every bias.
    std::int64_t num_params() const {
        std::int64_t total = 0;
        for (std::size_t l = 1; l < dims.size(); ++l)
            total += static_cast<std::int64_t>(dims[l - 1] + 1) * dims[l];
        return total;
    }

    bool operator==(const Architecture&) const = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < dims.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(dims[i]);
        }
        return s + ")";
    }

private:
    void validate() const {
        if (dims.size() < 2) throw ShapeError("Architecture: need at least (N0, N1)");
        for (int n : dims)
            if (n < 1) throw ShapeError("Architecture: every layer width must be >= 1");
    }
};

struct Layer {
    Matrix A;
    Vector b;

    bool operator==(const Layer&) const = default;
};

// A network Φ = ((A_ℓ, b_ℓ))_{ℓ=1…L}. Values are immutable by convention:
// every operation returns a fresh network.
struct Network {
    std::vector<Layer> layers;

    Network() = default;
    explicit Network(std::vector<Layer> ls) : layers(std::move(ls)) { validate(); }

    // All-zero network of the given architecture.
    static Network zeros(const Architecture& arch) {
        std::vector<Layer> ls;
        ls.reserve(arch.dims.size() - 1);
        for (std::size_t l = 1; l < arch.dims.size(); ++l)
            ls.push_back({Matrix(arch.dims[l], arch.dims[l - 1]),
                          Vector(static_cast<std::size_t>(arch.dims[l]), 0.0)});
        return Network(std::move(ls));
    }

    Architecture arch() const {
        std::vector<int> dims;
        dims.reserve(layers.size() + 1);
        dims.push_back(layers.front().A.cols);
        for (const Layer& l : layers) dims.push_back(l.A.rows);
        return Architecture(std::move(dims));
    }

    int input_dim() const { return layers.front().A.cols; }
    int output_dim() const { return layers.back().A.rows; }
    int num_layers() const { return static_cast<int>(layers.size()); }

    bool operator==(const Network&) const = default;

    void validate() const {
        if (layers.empty()) throw ShapeError("Network: needs at least one layer");
        for (std::size_t l = 0; l < layers.size(); ++l) {
            const Layer& layer = layers[l];
            if (layer.A.rows < 1 || layer.A.cols < 1)
                throw ShapeError("Network: layer " + std::to_string(l + 1) + " is empty");
            if (static_cast<int>(layer.b.size()) != layer.A.rows)
                throw ShapeError("Network: bias length mismatch in layer " + std::to_string(l + 1));
            if (l > 0 && layers[l - 1].A.rows != layer.A.cols)
                throw ShapeError("Network: layer " + std::to_string(l + 1) +
                                 " expects input width " + std::to_string(layer.A.cols) +
                                 " but previous layer outputs " + std::to_string(layers[l - 1].A.rows));
        }
    }
};

// The realization map: x₀ = x, x_ℓ = ϱ(A_ℓ x_{ℓ−1} + b_ℓ) for ℓ < L, and the
// last layer stays affine.
inline Vector realize(const Network& net, const Activation& act, const Vector& x) {
    Vector cur = x;
    const std::size_t L = net.layers.size();
    for (std::size_t l = 0; l < L; ++l) {
        cur = matvec(net.layers[l].A, cur);
        const Vector& b = net.layers[l].b;
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] += b[i];
        if (l + 1 < L)
            for (double& v : cur) v = act.eval(v);
    }
    return cur;
}

// Convenience for the ubiquitous scalar-output case.
inline double realize_scalar(const Network& net, const Activation& act, const Vector& x) {
    return realize(net, act, x).front();
}

// ‖Φ‖_scaling = max_ℓ ‖A_ℓ‖_max.
inline double norm_scaling(const Network& net) {
    double best = 0.0;
    for (const Layer& l : net.layers) best = std::max(best, max_abs(l.A));
    return best;
}

// ‖Φ‖_total = ‖Φ‖_scaling + max_ℓ ‖b_ℓ‖_max.
inline double norm_total(const Network& net) {
    double bias = 0.0;
    for (const Layer& l : net.layers) bias = std::max(bias, max_abs(l.b));
    return norm_scaling(net) + bias;
}

inline std::int64_t num_params(const Architecture& arch) { return arch.num_params(); }

}  // namespace netspace

#endif  // NETSPACE_NETWORK_HPP
