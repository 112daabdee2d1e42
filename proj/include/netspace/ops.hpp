#ifndef NETSPACE_OPS_HPP
#define NETSPACE_OPS_HPP

#include <string>

#include "netspace/errors.hpp"
#include "netspace/network.hpp"

namespace netspace {

// λ·R(Φ) by rescaling the last (affine) layer; the architecture and all
// hidden layers are untouched, so this works for every activation at once.
inline Network scale_output(const Network& net, double lambda) {
    Network out = net;
    Layer& last = out.layers.back();
    for (double& v : last.A.data) v *= lambda;
    for (double& v : last.b) v *= lambda;
    return out;
}

// Widens the hidden layers to `target` without changing the realization:
// each block lands in the top-left corner and the new rows/columns stay zero,
// so the padded neurons output ϱ(0) but nobody ever reads them.
inline Network enlarge(const Network& net, const Architecture& target) {
    const Architecture src = net.arch();
    if (src.num_layers() != target.num_layers())
        throw ContractViolation("enlarge: depth mismatch (" + src.to_string() + " vs " +
                                target.to_string() + ")");
    if (src.input_dim() != target.input_dim() || src.output_dim() != target.output_dim())
        throw ContractViolation("enlarge: input/output dimensions must match");
    for (std::size_t i = 1; i + 1 < src.dims.size(); ++i)
        if (target.dims[i] < src.dims[i])
            throw ContractViolation("enlarge: hidden width " + std::to_string(i) +
                                    " shrinks from " + std::to_string(src.dims[i]) + " to " +
                                    std::to_string(target.dims[i]));

    Network out = Network::zeros(target);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const Layer& in = net.layers[l];
        Layer& padded = out.layers[l];
        for (int i = 0; i < in.A.rows; ++i)
            for (int j = 0; j < in.A.cols; ++j) padded.A(i, j) = in.A(i, j);
        for (int i = 0; i < in.A.rows; ++i) padded.b[i] = in.b[i];
    }
    return out;
}

// Concatenation Φ¹ • Φ², realizing R(Φ¹) ∘ R(Φ²). The boundary is merged
// into a single affine layer (A₁¹ A_{L₂}², A₁¹ b_{L₂}² + b₁¹), giving
// L₁ + L₂ − 1 layers, so no activation is inserted between the two halves.
inline Network concatenate(const Network& phi1, const Network& phi2) {
    if (phi1.input_dim() != phi2.output_dim())
        throw ShapeError("concatenate: phi1 expects input width " +
                         std::to_string(phi1.input_dim()) + " but phi2 outputs " +
                         std::to_string(phi2.output_dim()));

    std::vector<Layer> layers;
    layers.reserve(phi1.layers.size() + phi2.layers.size() - 1);
    for (std::size_t l = 0; l + 1 < phi2.layers.size(); ++l) layers.push_back(phi2.layers[l]);

    const Layer& inner_last = phi2.layers.back();
    const Layer& outer_first = phi1.layers.front();
    Layer merged;
    merged.A = matmul(outer_first.A, inner_last.A);
    merged.b = matvec(outer_first.A, inner_last.b);
    for (std::size_t i = 0; i < merged.b.size(); ++i) merged.b[i] += outer_first.b[i];
    layers.push_back(std::move(merged));

    for (std::size_t l = 1; l < phi1.layers.size(); ++l) layers.push_back(phi1.layers[l]);
    return Network(std::move(layers));
}

}  // namespace netspace

#endif  // NETSPACE_OPS_HPP
