#ifndef NETSPACE_DOMAIN_HPP
#define NETSPACE_DOMAIN_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "netspace/errors.hpp"
#include "netspace/matrix.hpp"
#include "netspace/rng.hpp"

namespace netspace {

// Default per-axis grid resolution. Counts are odd so that 0 and ±B are grid
// points — the constructions put their singularities exactly there.
inline int default_grid_points(int d) {
    if (d <= 1) return 1025;
    if (d == 2) return 65;
    return 9;
}

// The cube Ω = [−B, B]^d together with its evaluation grid.
struct DomainBox {
    int d = 1;
    double B = 1.0;
    int grid_points_per_axis = 1025;

    DomainBox() = default;
    DomainBox(int dim, double half_width)
        : d(dim), B(half_width), grid_points_per_axis(default_grid_points(dim)) {
        validate();
    }
    DomainBox(int dim, double half_width, int points)
        : d(dim), B(half_width), grid_points_per_axis(points) {
        validate();
    }

    void validate() const {
        if (d < 1) throw ContractViolation("DomainBox: dimension must be >= 1");
        if (B <= 0.0) throw ContractViolation("DomainBox: half-width must be > 0");
        if (grid_points_per_axis < 2) throw ContractViolation("DomainBox: need >= 2 grid points per axis");
    }

    double spacing() const { return 2.0 * B / (grid_points_per_axis - 1); }

    double axis_point(int i) const {
        // Computed as a convex combination so both ends are exact and the
        // midpoint of an odd grid is exactly 0.
        const int m = grid_points_per_axis - 1;
        if (2 * i == m) return 0.0;
        return -B + (2.0 * B) * i / m;
    }

    std::vector<double> axis() const {
        std::vector<double> xs(static_cast<std::size_t>(grid_points_per_axis));
        for (int i = 0; i < grid_points_per_axis; ++i) xs[i] = axis_point(i);
        return xs;
    }

    std::int64_t grid_size() const {
        std::int64_t total = 1;
        for (int k = 0; k < d; ++k) total *= grid_points_per_axis;
        return total;
    }

    // Visits every tensor-grid point in odometer order (last axis fastest).
    template <class F>
    void for_each_grid_point(F&& f) const {
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        Vector x(static_cast<std::size_t>(d));
        while (true) {
            for (int k = 0; k < d; ++k) x[k] = axis_point(idx[k]);
            f(static_cast<const Vector&>(x));
            int k = d - 1;
            while (k >= 0 && ++idx[k] == grid_points_per_axis) idx[k--] = 0;
            if (k < 0) break;
        }
    }

    std::vector<Vector> grid() const {
        std::vector<Vector> pts;
        pts.reserve(static_cast<std::size_t>(grid_size()));
        for_each_grid_point([&](const Vector& x) { pts.push_back(x); });
        return pts;
    }

    bool contains(const Vector& x) const {
        if (static_cast<int>(x.size()) != d) return false;
        for (double v : x)
            if (v < -B || v > B) return false;
        return true;
    }

    // Monte-Carlo sample, uniform on the box.
    std::vector<Vector> sample(int count, std::uint64_t seed) const {
        Rng rng(seed);
        std::vector<Vector> pts(static_cast<std::size_t>(count), Vector(static_cast<std::size_t>(d)));
        for (auto& p : pts)
            for (double& v : p) v = rng.uniform(-B, B);
        return pts;
    }
};

namespace detail {
inline double halton_radical_inverse(std::int64_t i, int base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * (i % base);
        i /= base;
    }
    return r;
}
}  // namespace detail

// Deterministic low-discrepancy points in the box (Halton sequence, one prime
// base per axis). `seed` offsets the start index so seed 0 is the canonical
// sequence beginning at index 1.
inline std::vector<Vector> halton_points(const DomainBox& box, int count, std::uint64_t seed = 0) {
    static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    if (box.d > static_cast<int>(sizeof(primes) / sizeof(primes[0])))
        throw ContractViolation("halton_points: dimension too large");
    std::vector<Vector> pts(static_cast<std::size_t>(count), Vector(static_cast<std::size_t>(box.d)));
    for (int i = 0; i < count; ++i) {
        const std::int64_t index = static_cast<std::int64_t>(seed) + 1 + i;
        for (int k = 0; k < box.d; ++k) {
            const double u = detail::halton_radical_inverse(index, primes[k]);
            pts[i][k] = -box.B + 2.0 * box.B * u;
        }
    }
    return pts;
}

}  // namespace netspace

#endif  // NETSPACE_DOMAIN_HPP
