#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"

using namespace netspace;
using netspace::testing::mat;

namespace {

const RealFn kZero = [](const Vector&) { return 0.0; };

double witness_distance(const WitnessSequence& ws, int n) {
    const RealFn f = realization_fn(ws.network_for(n), ws.act);
    if (ws.mode == ConvergenceMode::uniform) return sup_distance(f, ws.limit, ws.domain);
    return lp_distance(f, ws.limit, ws.p, ws.domain, ws.quad_exclude);
}

}  // namespace

TEST_CASE("identity approximant: relu is exact, smooth entries certify eps") {
    const Activation relu = make_activation(Act::relu);
    const IdentityResult exact = build_identity_network(relu, 1, 2, 0.01, 1.0);
    CHECK(exact.sup_error == 0.0);
    const RealFn f = realization_fn(exact.net, relu);
    for (double x : DomainBox{1, 1.0, 257}.axis()) CHECK(f({x}) == x);

    for (Act id : {Act::sigmoid, Act::tanh_fn, Act::softplus, Act::arctan_fn}) {
        const Activation act = make_activation(id);
        for (double eps : {0.1, 0.01}) {
            const IdentityResult res = build_identity_network(act, 1, 2, eps, 1.0);
            INFO(act.name() << " eps=" << eps);
            CHECK(res.sup_error <= eps);
            // The certificate is about the realization, not just bookkeeping.
            const double recheck =
                sup_distance(realization_fn(res.net, act), [](const Vector& x) { return x[0]; },
                             DomainBox{1, 1.0, 1025});
            CHECK(recheck <= eps);
            CHECK(res.net.arch().num_layers() == 2);
        }
    }
}

TEST_CASE("identity approximant composes through depth and dimension") {
    const Activation sig = make_activation(Act::sigmoid);
    const IdentityResult res = build_identity_network(sig, 2, 3, 0.05, 1.0);
    CHECK(res.net.arch().num_layers() == 3);
    CHECK(res.net.input_dim() == 2);
    CHECK(res.net.output_dim() == 2);
    const DomainBox box{2, 1.0, 33};
    double worst = 0.0;
    box.for_each_grid_point([&](const Vector& x) {
        const Vector y = realize(res.net, sig, x);
        worst = std::max(worst, std::max(std::abs(y[0] - x[0]), std::abs(y[1] - x[1])));
    });
    CHECK(worst <= 0.05);
    CHECK(res.sup_error <= 0.05);
}

TEST_CASE("projection approximant extracts one coordinate") {
    const Activation tanh_a = make_activation(Act::tanh_fn);
    const IdentityResult res = build_projection_network(tanh_a, 3, 1, 2, 0.02, 1.0);
    CHECK(res.net.input_dim() == 3);
    CHECK(res.net.output_dim() == 1);
    const DomainBox box{3, 1.0, 9};
    double worst = 0.0;
    box.for_each_grid_point([&](const Vector& x) {
        worst = std::max(worst, std::abs(realize_scalar(res.net, tanh_a, x) - x[1]));
    });
    CHECK(worst <= 0.02);
}

TEST_CASE("step witness (unbounded branch): L1 rate 1/(2n) for relu") {
    const Activation relu = make_activation(Act::relu);
    const DomainBox box{1, 1.0, 8193};
    const WitnessSequence ws =
        build_step_witness(relu, Architecture{1, 2, 1}, {4, 8, 16}, box, Vector{0.0}, Vector{1.0});

    CHECK(ws.mode == ConvergenceMode::lp);
    double prev = 1e300;
    for (int n : {4, 8, 16}) {
        const double d1 = lp_distance(realization_fn(ws.network_for(n), relu), ws.limit, 1.0,
                                      box, ws.quad_exclude);
        INFO("n=" << n);
        CHECK(d1 == Catch::Approx(1.0 / (2.0 * n)).epsilon(0.05));
        CHECK(d1 < prev);
        prev = d1;
        // The escape costs weights: the family's norms blow up linearly.
        CHECK(norm_total(ws.network_for(n)) >= n);
    }
}

TEST_CASE("step witness limit values follow the asymptotic slopes") {
    // elu: slopes 1 (right) and 0 (left); limit jumps between them across the
    // hyperplane, with the documented convention on the hyperplane itself.
    const Activation elu = make_activation(Act::elu, 1.0);
    const DomainBox box{2, 1.0, 65};
    const Vector x_star{0.25, -0.25};
    const Vector v{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    const WitnessSequence ws =
        build_step_witness(elu, Architecture{2, 2, 1}, {64}, box, x_star, v);

    CHECK(ws.limit({0.8, 0.2}) == 1.0);    // J > 0
    CHECK(ws.limit({-0.8, -0.2}) == 0.0);  // J < 0
    const double gamma = elu.eval(0.0) - elu.eval(-1.0);
    CHECK(ws.limit(x_star) == gamma);

    // Far from the hyperplane the realization is already near its limit.
    const RealFn f = realization_fn(ws.network_for(64), elu);
    CHECK(std::abs(f({0.8, 0.2}) - 1.0) < 0.05);
    CHECK(std::abs(f({-0.8, -0.2}) - 0.0) < 0.05);
}

TEST_CASE("step witness (bounded branch): limits come from the function tails") {
    const Activation sig = make_activation(Act::sigmoid);
    const DomainBox box{1, 1.0, 1025};
    const WitnessSequence ws =
        build_step_witness(sig, Architecture{1, 1, 1}, {1, 4, 16, 64, 256}, box,
                           Vector{0.0}, Vector{1.0});

    CHECK(ws.limit({0.5}) == 1.0);
    CHECK(ws.limit({-0.5}) == 0.0);
    CHECK(ws.limit({0.0}) == 0.5);  // ϱ(0) on the hyperplane

    double prev = 1e300;
    for (int n : {1, 4, 16, 64, 256}) {
        const double d = witness_distance(ws, n);
        CHECK(d <= prev + 1e-12);
        prev = d;
    }
    // L² mass of the crossover region scales like 1/√n: ≈ 0.039 at n = 256.
    CHECK(prev < 0.05);
}

TEST_CASE("step witness validates its geometry") {
    const Activation relu = make_activation(Act::relu);
    const DomainBox box{1, 1.0, 65};
    // v must be a unit vector; x* must lie in the box.
    CHECK_THROWS_AS(build_step_witness(relu, Architecture{1, 2, 1}, {4}, box,
                                       Vector{0.0}, Vector{2.0}),
                    ContractViolation);
    CHECK_THROWS_AS(build_step_witness(relu, Architecture{1, 2, 1}, {4}, box,
                                       Vector{3.0}, Vector{1.0}),
                    ContractViolation);
    CHECK_THROWS_AS(build_step_witness(relu, Architecture{1, 2, 1}, {0}, box,
                                       Vector{0.0}, Vector{1.0}),
                    ContractViolation);
}

TEST_CASE("derivative witness converges to lambda*rho'(lambda*x) and rejects kinks") {
    const Activation sig = make_activation(Act::sigmoid);
    const DomainBox box{1, 1.0, 1025};
    const std::vector<int> ns{1, 4, 16, 64, 256};
    const WitnessSequence ws = build_derivative_witness(sig, 2.0, box, ns);

    CHECK(ws.mode == ConvergenceMode::uniform);
    CHECK(ws.limit({0.3}) == Catch::Approx(2.0 * sig.deriv(2.0 * 0.3)).epsilon(1e-15));

    double prev = 1e300;
    for (int n : ns) {
        const double d = witness_distance(ws, n);
        CHECK(d <= prev);
        prev = d;
    }
    CHECK(prev < 1e-2);

    CHECK_THROWS_AS(build_derivative_witness(make_activation(Act::relu), 1.0, box, ns),
                    UnsupportedActivation);
    CHECK_THROWS_AS(build_derivative_witness(sig, -1.0, box, ns), ContractViolation);
}

TEST_CASE("derivative witness at depth 3 pays only the projection error") {
    const Activation sig = make_activation(Act::sigmoid);
    const DomainBox box{1, 1.0, 513};
    const WitnessSequence ws = build_derivative_witness(sig, 1.0, box, {64, 256}, 3);
    for (int n : {64, 256}) {
        CHECK(ws.network_for(n).arch().num_layers() == 3);
        CHECK(witness_distance(ws, n) < 0.05);
    }
}

TEST_CASE("analytic witness escapes the bounded set") {
    const Activation atan_a = make_activation(Act::arctan_fn);
    const DomainBox box{1, 1.0, 1025};
    const std::vector<int> ns{1, 4, 16, 64};
    const WitnessSequence ws = build_analytic_witness(atan_a, 0.0, box, ns);

    // Limit ϱ(x₁) + ϱ′(x*)·x₁ exceeds the activation's own range.
    CHECK(ws.limit({1.0}) == Catch::Approx(std::atan(1.0) + 1.0).epsilon(1e-15));
    double prev = 1e300;
    for (int n : ns) {
        const double d = witness_distance(ws, n);
        CHECK(d <= prev);
        prev = d;
    }
    CHECK(prev < 0.02);

    CHECK_THROWS_AS(build_analytic_witness(make_activation(Act::relu), 0.0, box, ns),
                    UnsupportedActivation);
    CHECK_THROWS_AS(build_analytic_witness(make_activation(Act::softsign), 0.0, box, ns),
                    UnsupportedActivation);  // bounded but not analytic
}

TEST_CASE("homogeneity witness: relu is exactly its own limit") {
    const Activation relu = make_activation(Act::relu);
    const DomainBox box{1, 1.0, 1025};
    const WitnessSequence ws =
        build_homogeneity_witness(relu, {1, 0, 0.0}, box, {1, 2, 4, 8});
    for (int k : {1, 2, 4, 8})
        CHECK(witness_distance(ws, k) == 0.0);  // positive homogeneity, no error at all
}

TEST_CASE("homogeneity witness: softplus decays at exactly ln(2)/k") {
    const Activation sp = make_activation(Act::softplus);
    const DomainBox box{1, 1.0, 1025};
    const std::vector<int> ks{1, 2, 4, 8, 16, 32};
    const WitnessSequence ws = build_homogeneity_witness(sp, {1, 0, std::log(2.0)}, box, ks);

    for (int k : ks) {
        const double d = witness_distance(ws, k);
        const double bound = std::log(2.0) / k;
        INFO("k=" << k);
        // The sup is attained at x = 0 where the error is ln(2)/k on the nose;
        // allow a couple of ulps of evaluation rounding.
        CHECK(d <= bound * (1.0 + 1e-13));
        CHECK(d >= bound * (1.0 - 1e-13));
        CHECK(ws.predicted_rate(k) == bound);
    }

    CHECK_THROWS_AS(build_homogeneity_witness(sp, {0, 1, 0.0}, box, ks), ContractViolation);
    CHECK_THROWS_AS(build_homogeneity_witness(sp, {1, 1, 0.0}, box, ks), ContractViolation);
}

TEST_CASE("witness sequences expose exactly the requested indices") {
    const Activation relu = make_activation(Act::relu);
    const DomainBox box{1, 1.0, 65};
    const WitnessSequence ws =
        build_step_witness(relu, Architecture{1, 2, 1}, {3, 7}, box, Vector{0.0}, Vector{1.0});
    CHECK(ws.indices == std::vector<int>{3, 7});
    CHECK_NOTHROW(ws.network_for(7));
    CHECK_THROWS_AS(ws.network_for(5), ContractViolation);
}

TEST_CASE("instability family: norms explode while realizations vanish") {
    const Activation relu = make_activation(Act::relu);
    const DomainBox box{1, 1.0, 1025};
    const std::vector<int> ns{1, 2, 4, 8};
    const InstabilityResult res = build_instability_sequence(
        relu, Architecture{1, 4, 1}, box, Vector{0.0}, 1.0, ns);

    CHECK(res.a == 1.0);
    CHECK(res.oscillation > 1e-6);
    for (int n : ns) {
        const Network& net = res.seq.network_for(n);
        const RealFn f = realization_fn(net, relu);
        INFO("n=" << n);
        CHECK(sup_distance(f, kZero, box) == 1.0 / n);
        CHECK(norm_scaling(net) == double(n) * double(n));
        // Duality: the sup shrinks exactly as fast as the slope grows.
        const double lip = empirical_lipschitz(f, box);
        CHECK(lip * sup_distance(f, kZero, box) == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("instability family: three-neuron literal only at the width floor") {
    const Activation relu = make_activation(Act::relu);
    const DomainBox box{1, 1.0, 513};
    const InstabilityResult res = build_instability_sequence(
        relu, Architecture{1, 3, 1}, box, Vector{0.0}, 1.0, {1, 2, 4});
    for (int n : {1, 2, 4}) {
        const Network& net = res.seq.network_for(n);
        CHECK(net.arch() == Architecture{1, 3, 1});
        // max|A₂| = 2/n beats n² only at n = 1.
        CHECK(norm_scaling(net) == std::max(double(n) * n, 2.0 / n));
    }
}

TEST_CASE("instability probes a when none is given") {
    const Activation sig = make_activation(Act::sigmoid);
    const DomainBox box{1, 1.0, 257};
    const InstabilityResult res = build_instability_sequence(
        sig, Architecture{1, 4, 1}, box, Vector{0.0}, std::nullopt, {4});
    CHECK(res.a > 0.0);
    CHECK(res.oscillation > 1e-6);
    CHECK(res.b_point != res.c_point);

    // An explicitly useless a (second difference ~ a²·sup|ϱ″|) is refused.
    CHECK_THROWS_AS(build_instability_sequence(sig, Architecture{1, 4, 1}, box,
                                               Vector{0.0}, 1e-12, {4}),
                    ConstructionFailure);
    // x₀ must be strictly interior.
    CHECK_THROWS_AS(build_instability_sequence(sig, Architecture{1, 4, 1}, box,
                                               Vector{1.0}, 1.0, {4}),
                    ContractViolation);
}

TEST_CASE("instability at depth 3 still vanishes uniformly") {
    const Activation relu = make_activation(Act::relu);
    const DomainBox box{1, 1.0, 513};
    const InstabilityResult res = build_instability_sequence(
        relu, Architecture{1, 4, 4, 1}, box, Vector{0.0}, 1.0, {2, 8});
    double prev = 1e300;
    for (int n : {2, 8}) {
        const Network& net = res.seq.network_for(n);
        CHECK(net.arch() == Architecture{1, 4, 4, 1});
        const double d = sup_distance(realization_fn(net, relu), kZero, box);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 0.2);
}

TEST_CASE("relu bias canonicalization: dead, saturated and straddling neurons") {
    const Activation relu = make_activation(Act::relu);
    const DomainBox box{1, 1.0, 1025};

    // Three hidden neurons on [−1,1]: always dead (x − 5), always active
    // (x + 10, reach 1), straddling (x + 0.25).
    const Network net({{mat({{1.0}, {1.0}, {1.0}}), {-5.0, 10.0, 0.25}},
                       {mat({{0.5, 0.8, -1.0}}), {0.3}}});
    const Network canon = canonicalize_relu_biases(net, box);

    CHECK(sup_distance(realization_fn(net, relu), realization_fn(canon, relu), box) <= 1e-12);
    // Dead neuron: entire row and bias zeroed.
    CHECK(canon.layers[0].A(0, 0) == 0.0);
    CHECK(canon.layers[0].b[0] == 0.0);
    // Saturated-active neuron: bias capped at its reach, excess folded forward.
    CHECK(canon.layers[0].b[1] == 1.0);
    CHECK(canon.layers[1].b[0] == Catch::Approx(0.3 + 0.8 * 9.0).epsilon(1e-15));
    // Straddling neuron: untouched.
    CHECK(canon.layers[0].b[2] == 0.25);

    // Every canonical hidden bias obeys the interval bound.
    const auto caps = relu_bias_caps(canon, box);
    for (std::size_t l = 0; l < caps.size(); ++l)
        for (std::size_t i = 0; i < caps[l].size(); ++i)
            CHECK(std::abs(canon.layers[l].b[i]) <= caps[l][i] + 1e-12);
}

TEST_CASE("canonicalization folds front to back through deep nets") {
    const Activation relu = make_activation(Act::relu);
    const DomainBox box{1, 1.0, 2049};
    const Network net({{mat({{2.0}, {-1.0}}), {7.0, 0.1}},
                       {mat({{0.5, 1.0}, {-0.25, 0.75}}), {20.0, -0.4}},
                       {mat({{1.0, -0.5}}), {0.2}}});
    const Network canon = canonicalize_relu_biases(net, box);

    CHECK(sup_distance(realization_fn(net, relu), realization_fn(canon, relu), box) <= 1e-12);
    const auto caps = relu_bias_caps(canon, box);
    for (std::size_t l = 0; l + 1 < canon.layers.size(); ++l)
        for (std::size_t i = 0; i < caps[l].size(); ++i) {
            INFO("layer " << l << " neuron " << i);
            CHECK(std::abs(canon.layers[l].b[i]) <= caps[l][i] + 1e-12);
        }
}

TEST_CASE("canonicalization preserves norm_total for contractive output weights") {
    const Activation relu = make_activation(Act::relu);
    const DomainBox box{1, 1.0, 513};
    // |outgoing| ≤ 1 keeps the fold from minting a larger bias than the one
    // it removed.
    const Network net({{mat({{3.0}, {1.0}}), {8.0, -9.0}},
                       {mat({{1.0, -0.5}}), {0.1}}});
    const Network canon = canonicalize_relu_biases(net, box);
    CHECK(sup_distance(realization_fn(net, relu), realization_fn(canon, relu), box) <= 1e-12);
    CHECK(norm_total(canon) <= norm_total(net));
}

TEST_CASE("parametric relu row normalization") {
    // The worked example: row (3,4), bias 5, outgoing weight 2 becomes
    // (0.6, 0.8), bias 1, outgoing 10.
    const Network net({{mat({{3.0, 4.0}, {0.0, 0.0}}), {5.0, 2.0}},
                       {mat({{2.0, 1.0}}), {-0.5}}});
    const Network normed = normalize_parrelu_rows(net, 0.25);

    CHECK(normed.layers[0].A(0, 0) == 0.6);
    CHECK(normed.layers[0].A(0, 1) == 0.8);
    CHECK(normed.layers[0].b[0] == 1.0);
    CHECK(normed.layers[1].A(0, 0) == 10.0);
    // Zero rows stay zero (no direction to normalize along).
    CHECK(normed.layers[0].A(1, 0) == 0.0);
    CHECK(normed.layers[0].b[1] == 2.0);
    CHECK(normed.layers[1].A(0, 1) == 1.0);

    const Activation pr = make_activation(Act::parametric_relu, 0.25);
    const DomainBox box{2, 2.0, 33};
    CHECK(sup_distance(realization_fn(net, pr), realization_fn(normed, pr), box) <= 1e-12);

    // Depth-2 only: the rescaling argument needs the next layer to be last.
    const Network deep({{mat({{1.0}}), {0.0}},
                        {mat({{1.0}}), {0.0}},
                        {mat({{1.0}}), {0.0}}});
    CHECK_THROWS_AS(normalize_parrelu_rows(deep, 0.25), ContractViolation);
}
