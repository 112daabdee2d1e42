#ifndef NETSPACE_CANONICAL_HPP
#define NETSPACE_CANONICAL_HPP

#include <cmath>
#include <string>
#include <vector>

#include "netspace/domain.hpp"
#include "netspace/errors.hpp"
#include "netspace/network.hpp"

namespace netspace {

// Rewrites a ReLU network into a canonical form with domain-bounded hidden
// biases, without changing the realization on the box. A forward interval
// pass classifies each hidden neuron:
//   · provably dead on the box (pre-activation ≤ 0 everywhere): row and bias
//     zeroed — the neuron output was identically 0 already;
//   · provably active (pre-activation ≥ 0 everywhere): the bias is capped at
//     Σ_j |A_kj|·R_j, the per-neuron reach of the linear part, and the excess
//     e is folded into the next layer's bias as A_next[:,k]·e, using
//     ϱ(t + e) = ϱ(t) + e valid while t stays nonnegative;
//   · straddling neurons already satisfy |β| < Σ_j |A_kj|·R_j and are left
//     alone.
// Layers are processed front to back, so a fold that inflates the next
// hidden bias gets capped in turn when that layer is reached.
inline Network canonicalize_relu_biases(const Network& net, const DomainBox& domain) {
    net.validate();
    if (net.input_dim() != domain.d)
        throw ContractViolation("canonicalize_relu_biases: network input dimension " +
                                std::to_string(net.input_dim()) + " does not match the domain");

    Network out = net;
    const int L = out.num_layers();

    // Per-coordinate reach of the current layer's input: values lie in
    // [lo_j, hi_j]. Inputs start in the box itself.
    std::vector<double> lo(static_cast<std::size_t>(domain.d), -domain.B);
    std::vector<double> hi(static_cast<std::size_t>(domain.d), domain.B);

    for (int l = 0; l + 1 < L; ++l) {
        Matrix& A = out.layers[static_cast<std::size_t>(l)].A;
        Vector& b = out.layers[static_cast<std::size_t>(l)].b;
        Layer& next = out.layers[static_cast<std::size_t>(l) + 1];

        std::vector<double> nlo(static_cast<std::size_t>(A.rows));
        std::vector<double> nhi(static_cast<std::size_t>(A.rows));
        for (int k = 0; k < A.rows; ++k) {
            double m_lo = 0.0, m_hi = 0.0, reach = 0.0;
            for (int j = 0; j < A.cols; ++j) {
                const double w = A(k, j);
                const double c1 = w * lo[static_cast<std::size_t>(j)];
                const double c2 = w * hi[static_cast<std::size_t>(j)];
                m_lo += std::min(c1, c2);
                m_hi += std::max(c1, c2);
                reach += std::abs(w) * std::max(std::abs(lo[static_cast<std::size_t>(j)]),
                                                std::abs(hi[static_cast<std::size_t>(j)]));
            }
            const double p_lo = m_lo + b[static_cast<std::size_t>(k)];
            const double p_hi = m_hi + b[static_cast<std::size_t>(k)];

            if (p_hi <= 0.0) {
                // Dead on the whole box; downstream already sees a constant 0.
                for (int j = 0; j < A.cols; ++j) A(k, j) = 0.0;
                b[static_cast<std::size_t>(k)] = 0.0;
                nlo[static_cast<std::size_t>(k)] = 0.0;
                nhi[static_cast<std::size_t>(k)] = 0.0;
            } else if (p_lo >= 0.0) {
                double beta = b[static_cast<std::size_t>(k)];
                if (beta > reach) {
                    const double e = beta - reach;
                    b[static_cast<std::size_t>(k)] = reach;
                    for (int i = 0; i < next.A.rows; ++i)
                        next.b[static_cast<std::size_t>(i)] += next.A(i, k) * e;
                    beta = reach;
                }
                // Still active: beta ≥ −m_lo held before and the cap only
                // lowers beta toward reach ≥ −m_lo.
                nlo[static_cast<std::size_t>(k)] = m_lo + beta;
                nhi[static_cast<std::size_t>(k)] = m_hi + beta;
            } else {
                // Straddling: −m_hi < β < −m_lo forces |β| < reach already.
                nlo[static_cast<std::size_t>(k)] = 0.0;
                nhi[static_cast<std::size_t>(k)] = p_hi;
            }
        }
        lo = std::move(nlo);
        hi = std::move(nhi);
    }
    return out;
}

// Per-neuron bias caps of the interval pass, computed on the given network
// as-is (useful for asserting the canonical form: every hidden bias must
// satisfy |β_k| ≤ cap_k up to roundoff).
inline std::vector<std::vector<double>> relu_bias_caps(const Network& net, const DomainBox& domain) {
    net.validate();
    std::vector<std::vector<double>> caps;
    std::vector<double> lo(static_cast<std::size_t>(domain.d), -domain.B);
    std::vector<double> hi(static_cast<std::size_t>(domain.d), domain.B);
    const int L = net.num_layers();
    for (int l = 0; l + 1 < L; ++l) {
        const Matrix& A = net.layers[static_cast<std::size_t>(l)].A;
        const Vector& b = net.layers[static_cast<std::size_t>(l)].b;
        std::vector<double> layer_caps(static_cast<std::size_t>(A.rows));
        std::vector<double> nlo(static_cast<std::size_t>(A.rows));
        std::vector<double> nhi(static_cast<std::size_t>(A.rows));
        for (int k = 0; k < A.rows; ++k) {
            double m_lo = 0.0, m_hi = 0.0, reach = 0.0;
            for (int j = 0; j < A.cols; ++j) {
                const double w = A(k, j);
                const double c1 = w * lo[static_cast<std::size_t>(j)];
                const double c2 = w * hi[static_cast<std::size_t>(j)];
                m_lo += std::min(c1, c2);
                m_hi += std::max(c1, c2);
                reach += std::abs(w) * std::max(std::abs(lo[static_cast<std::size_t>(j)]),
                                                std::abs(hi[static_cast<std::size_t>(j)]));
            }
            layer_caps[static_cast<std::size_t>(k)] = reach;
            const double p_lo = m_lo + b[static_cast<std::size_t>(k)];
            const double p_hi = m_hi + b[static_cast<std::size_t>(k)];
            nlo[static_cast<std::size_t>(k)] = std::max(0.0, p_lo);
            nhi[static_cast<std::size_t>(k)] = std::max(0.0, p_hi);
        }
        caps.push_back(std::move(layer_caps));
        lo = std::move(nlo);
        hi = std::move(nhi);
    }
    return caps;
}

// First-layer row normalization for parametric-ReLU networks of depth 2:
// positive homogeneity ϱ_a(C·t) = C·ϱ_a(t) for C > 0 lets every nonzero row
// be scaled to Euclidean norm 1 with the factor folded into the output
// column. Zero rows (constant neurons) stay as they are.
inline Network normalize_parrelu_rows(const Network& net, double a) {
    net.validate();
    if (net.num_layers() != 2)
        throw ContractViolation("normalize_parrelu_rows: needs exactly two layers, got " +
                                std::to_string(net.num_layers()));
    if (a < 0.0) throw ContractViolation("normalize_parrelu_rows: slope a must be >= 0");

    Network out = net;
    Matrix& A1 = out.layers[0].A;
    Vector& b1 = out.layers[0].b;
    Matrix& A2 = out.layers[1].A;
    for (int k = 0; k < A1.rows; ++k) {
        double norm2 = 0.0;
        for (int j = 0; j < A1.cols; ++j) norm2 += A1(k, j) * A1(k, j);
        const double C = std::sqrt(norm2);
        if (C == 0.0) continue;
        for (int j = 0; j < A1.cols; ++j) A1(k, j) /= C;
        b1[static_cast<std::size_t>(k)] /= C;
        for (int i = 0; i < A2.rows; ++i) A2(i, k) *= C;
    }
    return out;
}

}  // namespace netspace

#endif  // NETSPACE_CANONICAL_HPP
