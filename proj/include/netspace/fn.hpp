#ifndef NETSPACE_FN_HPP
#define NETSPACE_FN_HPP

#include <functional>

#include "netspace/activation.hpp"
#include "netspace/matrix.hpp"
#include "netspace/network.hpp"

namespace netspace {

// Scalar function on the domain box, the common currency of the probes.
using RealFn = std::function<double(const Vector&)>;
using PointPredicate = std::function<bool(const Vector&)>;

inline RealFn realization_fn(const Network& net, const Activation& act) {
    return [net, act](const Vector& x) { return realize_scalar(net, act, x); };
}

}  // namespace netspace

#endif  // NETSPACE_FN_HPP
