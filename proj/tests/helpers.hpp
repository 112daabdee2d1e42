#ifndef NETSPACE_TESTS_HELPERS_HPP
#define NETSPACE_TESTS_HELPERS_HPP

#include <initializer_list>
#include <vector>

#include "netspace/netspace.hpp"

namespace netspace::testing {

// Row-major literal, e.g. mat({{1, 2}, {3, 4}}).
inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = static_cast<int>(rows.begin()->size());
    Matrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

// The step ramp h_n(x) = ϱ(nx) − ϱ(nx − 1): the running example for a
// realization whose limit escapes the set.
inline Network step_ramp(double n) {
    Matrix a1(2, 1);
    a1(0, 0) = n;
    a1(1, 0) = n;
    Matrix a2(1, 2);
    a2(0, 0) = 1.0;
    a2(0, 1) = -1.0;
    return Network({{a1, {0.0, -1.0}}, {a2, {0.0}}});
}

inline std::vector<Activation> zoo() { return default_activation_set(); }

}  // namespace netspace::testing

#endif  // NETSPACE_TESTS_HELPERS_HPP
