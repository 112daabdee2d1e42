#ifndef NETSPACE_ACTIVATION_HPP
#define NETSPACE_ACTIVATION_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "netspace/errors.hpp"

namespace netspace {

// Largest k with ϱ ∈ C^k(ℝ); this sentinel stands for C^∞.
inline constexpr int kSmoothnessInf = std::numeric_limits<int>::max();

enum class Act {
    relu,
    parametric_relu,  // x ↦ max{ax, x}, a ≥ 0, a ≠ 1
    elu,              // x for x ≥ 0, a(eˣ−1) for x < 0
    softsign,         // x / (1+|x|)
    isrlu,            // x for x ≥ 0, x/√(1+ax²) for x < 0
    isru,             // x / √(1+ax²)
    sigmoid,
    tanh_fn,
    arctan_fn,
    softplus,         // ln(1+eˣ)
};

// Anchor point x₀ with ϱ′(x₀) ≠ 0 plus the cached values r₀ = ϱ(x₀),
// s₀ = ϱ′(x₀); the identity-approximant construction consumes these.
struct Anchor {
    double x0;
    double r0;
    double s0;
};

// One entry of the activation zoo: the scalar function, its derivative and
// the property metadata the constructions dispatch on. Derivatives at kinks
// follow the right-hand convention (relu'(0) = 1).
class Activation {
public:
    Activation(Act id, double a) : id_(id), a_(a) { validate(); }

    Act id() const { return id_; }
    double param() const { return a_; }

    double eval(double x) const {
        switch (id_) {
            case Act::relu: return x > 0.0 ? x : 0.0;
            case Act::parametric_relu: return std::max(a_ * x, x);
            case Act::elu: return x >= 0.0 ? x : a_ * std::expm1(x);
            case Act::softsign: return x / (1.0 + std::abs(x));
            case Act::isrlu: return x >= 0.0 ? x : x / std::sqrt(1.0 + a_ * x * x);
            case Act::isru: return x / std::sqrt(1.0 + a_ * x * x);
            case Act::sigmoid: {
                // Split to avoid overflow in exp for large |x|.
                if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
                const double e = std::exp(x);
                return e / (1.0 + e);
            }
            case Act::tanh_fn: return std::tanh(x);
            case Act::arctan_fn: return std::atan(x);
            case Act::softplus: return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
        }
        return 0.0;  // unreachable
    }

    double deriv(double x) const {
        switch (id_) {
            case Act::relu: return x >= 0.0 ? 1.0 : 0.0;
            case Act::parametric_relu: return x >= 0.0 ? std::max(a_, 1.0) : std::min(a_, 1.0);
            case Act::elu: return x >= 0.0 ? 1.0 : a_ * std::exp(x);
            case Act::softsign: {
                const double t = 1.0 + std::abs(x);
                return 1.0 / (t * t);
            }
            case Act::isrlu: return x >= 0.0 ? 1.0 : std::pow(1.0 + a_ * x * x, -1.5);
            case Act::isru: return std::pow(1.0 + a_ * x * x, -1.5);
            case Act::sigmoid: {
                const double s = eval(x);
                return s * (1.0 - s);
            }
            case Act::tanh_fn: {
                const double t = std::tanh(x);
                return 1.0 - t * t;
            }
            case Act::arctan_fn: return 1.0 / (1.0 + x * x);
            case Act::softplus: {
                // softplus' = sigmoid
                if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
                const double e = std::exp(x);
                return e / (1.0 + e);
            }
        }
        return 0.0;  // unreachable
    }

    bool bounded() const {
        switch (id_) {
            case Act::softsign:
            case Act::isru:
            case Act::sigmoid:
            case Act::tanh_fn:
            case Act::arctan_fn: return true;
            default: return false;
        }
    }

    int smoothness() const {
        switch (id_) {
            case Act::relu: return 0;
            case Act::parametric_relu: return 0;
            case Act::elu: return a_ == 1.0 ? 1 : 0;  // derivative jumps at 0 unless a = 1
            case Act::softsign: return 1;
            case Act::isrlu: return 2;
            default: return kSmoothnessInf;
        }
    }

    bool analytic() const { return id_ == Act::isru || id_ == Act::sigmoid || id_ == Act::tanh_fn ||
                                   id_ == Act::arctan_fn || id_ == Act::softplus; }

    // Limits of ϱ′ at +∞ / −∞, stored only where the function is unbounded
    // and the limits are actual slopes of linear asymptotes.
    std::optional<double> slope_pos_inf() const {
        switch (id_) {
            case Act::relu: return 1.0;
            case Act::parametric_relu: return std::max(a_, 1.0);
            case Act::elu: return 1.0;
            case Act::isrlu: return 1.0;
            case Act::softplus: return 1.0;
            default: return std::nullopt;
        }
    }
    std::optional<double> slope_neg_inf() const {
        switch (id_) {
            case Act::relu: return 0.0;
            case Act::parametric_relu: return std::min(a_, 1.0);
            case Act::elu: return 0.0;
            case Act::isrlu: return 0.0;
            case Act::softplus: return 0.0;
            default: return std::nullopt;
        }
    }

    // Function limits at ±∞ for the bounded entries (drive the bounded
    // step-witness branch).
    std::optional<double> limit_pos_inf() const {
        switch (id_) {
            case Act::softsign: return 1.0;
            case Act::isru: return 1.0 / std::sqrt(a_);
            case Act::sigmoid: return 1.0;
            case Act::tanh_fn: return 1.0;
            case Act::arctan_fn: return std::acos(-1.0) / 2.0;
            default: return std::nullopt;
        }
    }
    std::optional<double> limit_neg_inf() const {
        switch (id_) {
            case Act::softsign: return -1.0;
            case Act::isru: return -1.0 / std::sqrt(a_);
            case Act::sigmoid: return 0.0;
            case Act::tanh_fn: return -1.0;
            case Act::arctan_fn: return -std::acos(-1.0) / 2.0;
            default: return std::nullopt;
        }
    }

    Anchor anchor() const {
        // Kinked functions anchor at x₀ = 1 (strictly inside the linear
        // branch); everything differentiable at 0 anchors there.
        if (id_ == Act::relu || id_ == Act::parametric_relu) return {1.0, eval(1.0), deriv(1.0)};
        return {0.0, eval(0.0), deriv(0.0)};
    }

    // Global Lipschitz constant of ϱ (the exact sup of |ϱ′|).
    double lipschitz() const {
        switch (id_) {
            case Act::parametric_relu: return std::max(a_, 1.0);
            case Act::elu: return std::max(a_, 1.0);
            case Act::sigmoid: return 0.25;
            default: return 1.0;
        }
    }

    bool positively_homogeneous() const { return id_ == Act::relu || id_ == Act::parametric_relu; }

    bool has_param() const {
        return id_ == Act::parametric_relu || id_ == Act::elu || id_ == Act::isrlu || id_ == Act::isru;
    }

    std::string name() const {
        std::string base;
        switch (id_) {
            case Act::relu: base = "relu"; break;
            case Act::parametric_relu: base = "parametric_relu"; break;
            case Act::elu: base = "elu"; break;
            case Act::softsign: base = "softsign"; break;
            case Act::isrlu: base = "isrlu"; break;
            case Act::isru: base = "isru"; break;
            case Act::sigmoid: base = "sigmoid"; break;
            case Act::tanh_fn: base = "tanh"; break;
            case Act::arctan_fn: base = "arctan"; break;
            case Act::softplus: base = "softplus"; break;
        }
        if (has_param()) {
            std::string num = std::to_string(a_);
            // trim trailing zeros for readability; std::to_string gives 6 decimals
            while (num.size() > 1 && num.back() == '0') num.pop_back();
            if (!num.empty() && num.back() == '.') num.pop_back();
            base += ":a=" + num;
        }
        return base;
    }

private:
    void validate() const {
        switch (id_) {
            case Act::parametric_relu:
                if (a_ < 0.0) throw ContractViolation("parametric_relu: slope a must be >= 0");
                if (a_ == 1.0) throw ContractViolation("parametric_relu: slope a = 1 is the identity, not allowed");
                break;
            case Act::elu:
            case Act::isrlu:
            case Act::isru:
                if (a_ <= 0.0) throw ContractViolation(name() + ": parameter a must be > 0");
                break;
            default: break;
        }
    }

    Act id_;
    double a_;
};

inline Activation make_activation(Act id, std::optional<double> a = std::nullopt) {
    double def = 1.0;
    if (id == Act::parametric_relu) def = 0.01;
    return Activation(id, a.value_or(def));
}

// Parses CLI ids of the form "name" or "name:a=<float>", e.g.
// "parametric_relu:a=0.2".
inline Activation parse_activation(const std::string& spec) {
    std::string base = spec;
    std::optional<double> a;
    if (const auto pos = spec.find(':'); pos != std::string::npos) {
        base = spec.substr(0, pos);
        const std::string rest = spec.substr(pos + 1);
        if (rest.rfind("a=", 0) != 0)
            throw ParseError("activation parameter must look like a=<float>, got '" + rest + "'");
        try {
            std::size_t used = 0;
            a = std::stod(rest.substr(2), &used);
            if (used != rest.size() - 2) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError("cannot parse activation parameter in '" + spec + "'");
        }
    }
    Act id;
    if (base == "relu") id = Act::relu;
    else if (base == "parametric_relu") id = Act::parametric_relu;
    else if (base == "elu") id = Act::elu;
    else if (base == "softsign") id = Act::softsign;
    else if (base == "isrlu") id = Act::isrlu;
    else if (base == "isru") id = Act::isru;
    else if (base == "sigmoid") id = Act::sigmoid;
    else if (base == "tanh") id = Act::tanh_fn;
    else if (base == "arctan") id = Act::arctan_fn;
    else if (base == "softplus") id = Act::softplus;
    else throw ParseError("unknown activation '" + base + "'");
    Activation act = make_activation(id, a);
    if (a && !act.has_param())
        throw ParseError("activation '" + base + "' takes no parameter");
    return act;
}

// The whole zoo with default parameters, for property sweeps.
inline std::vector<Activation> default_activation_set() {
    return {
        make_activation(Act::relu),
        make_activation(Act::parametric_relu),
        make_activation(Act::elu),
        make_activation(Act::softsign),
        make_activation(Act::isrlu),
        make_activation(Act::isru),
        make_activation(Act::sigmoid),
        make_activation(Act::tanh_fn),
        make_activation(Act::arctan_fn),
        make_activation(Act::softplus),
    };
}

// Declared homogeneity order (r, q) with slack bound s:
// |ϱ(x) − x^r| ≤ s for x ≥ 0 and |ϱ(x) − x^q| ≤ s for x ≤ 0.
struct HomogeneityOrder {
    int r;
    int q;
    double s;
};

// Measures the homogeneity slack on a dense grid over [−range, range].
inline double check_approx_homogeneity(const Activation& act, const HomogeneityOrder& order,
                                       double range, int grid_points = 20001) {
    if (range <= 0.0) throw ContractViolation("check_approx_homogeneity: range must be > 0");
    double worst = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double x = -range + 2.0 * range * i / (grid_points - 1);
        const int k = x >= 0.0 ? order.r : order.q;
        const double err = std::abs(act.eval(x) - std::pow(x, k));
        if (err > worst) worst = err;
        if (x == 0.0) {  // both branches claim x = 0
            const double err0 = std::abs(act.eval(0.0) - std::pow(0.0, order.q));
            if (err0 > worst) worst = err0;
        }
    }
    return worst;
}

}  // namespace netspace

#endif  // NETSPACE_ACTIVATION_HPP
