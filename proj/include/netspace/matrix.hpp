#ifndef NETSPACE_MATRIX_HPP
#define NETSPACE_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace netspace {

using Vector = std::vector<double>;

struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense row-major matrix. The lab never sees more than a few hundred
// parameters per network, so there is no call for anything cleverer.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0)
        : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {
        if (r < 0 || c < 0) throw ShapeError("Matrix: negative dimension");
    }

    double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    bool operator==(const Matrix&) const = default;
};

inline Vector matvec(const Matrix& m, const Vector& x) {
    if (static_cast<int>(x.size()) != m.cols)
        throw ShapeError("matvec: expected vector of length " + std::to_string(m.cols) +
                         ", got " + std::to_string(x.size()));
    Vector y(static_cast<std::size_t>(m.rows), 0.0);
    for (int i = 0; i < m.rows; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m.cols; ++j) acc += m(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw ShapeError("matmul: inner dimensions disagree");
    Matrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            for (int j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline double max_abs(const Matrix& m) {
    double best = 0.0;
    for (double v : m.data) {
        const double a = v < 0 ? -v : v;
        if (a > best) best = a;
    }
    return best;
}

inline double max_abs(const Vector& v) {
    double best = 0.0;
    for (double x : v) {
        const double a = x < 0 ? -x : x;
        if (a > best) best = a;
    }
    return best;
}

}  // namespace netspace

#endif  // NETSPACE_MATRIX_HPP
