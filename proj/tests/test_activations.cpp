#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"

using namespace netspace;
using netspace::testing::zoo;

TEST_CASE("derivatives agree with central differences away from kinks") {
    const double h = 1e-6;
    for (const Activation& act : zoo()) {
        for (double x : {-3.7, -1.2, -0.31, 0.41, 0.9, 2.6}) {
            const double fd = (act.eval(x + h) - act.eval(x - h)) / (2.0 * h);
            INFO(act.name() << " at x=" << x);
            CHECK(act.deriv(x) == Catch::Approx(fd).margin(1e-7));
        }
    }
}

TEST_CASE("every zoo entry is nondecreasing") {
    for (const Activation& act : zoo()) {
        double prev = act.eval(-50.0);
        for (int i = -499; i <= 500; ++i) {
            const double cur = act.eval(i * 0.1);
            INFO(act.name() << " near x=" << i * 0.1);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("lipschitz constant dominates the derivative everywhere") {
    for (const Activation& act : zoo()) {
        for (int i = -400; i <= 400; ++i) {
            INFO(act.name() << " at x=" << i * 0.025);
            CHECK(std::abs(act.deriv(i * 0.025)) <= act.lipschitz() + 1e-15);
        }
    }
}

TEST_CASE("boundedness metadata matches the tails") {
    for (const Activation& act : zoo()) {
        INFO(act.name());
        if (act.bounded()) {
            REQUIRE(act.limit_pos_inf().has_value());
            REQUIRE(act.limit_neg_inf().has_value());
            CHECK(std::abs(act.eval(1e6) - *act.limit_pos_inf()) < 1e-3);
            CHECK(std::abs(act.eval(-1e6) - *act.limit_neg_inf()) < 1e-3);
            CHECK(!act.slope_pos_inf().has_value());
        } else {
            REQUIRE(act.slope_pos_inf().has_value());
            REQUIRE(act.slope_neg_inf().has_value());
            // Slopes of the linear asymptotes, measured far out.
            const double sp = (act.eval(1e6 + 1.0) - act.eval(1e6));
            const double sn = (act.eval(-1e6 + 1.0) - act.eval(-1e6));
            CHECK(sp == Catch::Approx(*act.slope_pos_inf()).margin(1e-6));
            CHECK(sn == Catch::Approx(*act.slope_neg_inf()).margin(1e-6));
        }
    }
}

TEST_CASE("kink conventions take the right-hand derivative") {
    CHECK(make_activation(Act::relu).deriv(0.0) == 1.0);
    CHECK(make_activation(Act::parametric_relu, 0.25).deriv(0.0) == 1.0);
    CHECK(make_activation(Act::parametric_relu, 3.0).deriv(0.0) == 3.0);
    CHECK(make_activation(Act::elu, 2.0).deriv(0.0) == 1.0);
}

TEST_CASE("anchors sit where the construction can invert the slope") {
    for (const Activation& act : zoo()) {
        const Anchor a = act.anchor();
        INFO(act.name());
        CHECK(a.r0 == act.eval(a.x0));
        CHECK(a.s0 == act.deriv(a.x0));
        CHECK(a.s0 != 0.0);
    }
    // Kinked entries anchor strictly inside the linear branch, not at 0.
    CHECK(make_activation(Act::relu).anchor().x0 == 1.0);
    CHECK(make_activation(Act::parametric_relu, 0.5).anchor().x0 == 1.0);
}

TEST_CASE("smoothness classes drive witness eligibility") {
    CHECK(make_activation(Act::relu).smoothness() == 0);
    CHECK(make_activation(Act::parametric_relu, 0.1).smoothness() == 0);
    CHECK(make_activation(Act::elu, 1.0).smoothness() == 1);   // C¹ exactly at a = 1
    CHECK(make_activation(Act::elu, 2.0).smoothness() == 0);   // derivative jumps otherwise
    CHECK(make_activation(Act::softsign).smoothness() == 1);
    CHECK(make_activation(Act::isrlu, 1.0).smoothness() == 2);
    CHECK(make_activation(Act::sigmoid).smoothness() == kSmoothnessInf);

    CHECK(make_activation(Act::sigmoid).analytic());
    CHECK(!make_activation(Act::softsign).analytic());  // |x| in the denominator
    CHECK(make_activation(Act::softplus).analytic());
}

TEST_CASE("only the relu pair is positively homogeneous") {
    int homogeneous = 0;
    for (const Activation& act : zoo()) {
        if (!act.positively_homogeneous()) continue;
        ++homogeneous;
        for (double lambda : {0.5, 2.0, 7.0})
            for (double x : {-2.0, -0.3, 0.4, 1.7}) {
                INFO(act.name());
                CHECK(act.eval(lambda * x) == Catch::Approx(lambda * act.eval(x)).epsilon(1e-15));
            }
    }
    CHECK(homogeneous == 2);
}

TEST_CASE("softplus is approximately homogeneous of order (1,0)") {
    const Activation sp = make_activation(Act::softplus);
    const double measured = check_approx_homogeneity(sp, {1, 0, 0.0}, 64.0, 4097);
    // x ≥ 0 contributes ln(1+e⁻ˣ) ≤ ln 2; x ≤ 0 compares against x⁰ = 1 and
    // tops out at 1 − softplus(−64) ≈ 1. Slack bounded uniformly in the window.
    CHECK(measured <= 1.0 + std::log(2.0));
    CHECK(measured == Catch::Approx(1.0).margin(1e-9));

    // Sigmoid is not: the defect keeps growing with the window.
    const Activation sig = make_activation(Act::sigmoid);
    const double near = check_approx_homogeneity(sig, {1, 0, 0.0}, 16.0, 1025);
    const double far = check_approx_homogeneity(sig, {1, 0, 0.0}, 64.0, 4097);
    CHECK(far > near + 1.0);
}

TEST_CASE("activation spec strings parse with parameters") {
    CHECK(parse_activation("relu").id() == Act::relu);
    CHECK(parse_activation("tanh").id() == Act::tanh_fn);
    const Activation pr = parse_activation("parametric_relu:a=0.2");
    CHECK(pr.id() == Act::parametric_relu);
    CHECK(pr.param() == 0.2);
    CHECK(parse_activation("elu:a=1.5").param() == 1.5);

    CHECK_THROWS_AS(parse_activation("swish"), ParseError);
    CHECK_THROWS_AS(parse_activation("relu:a=notanumber"), ParseError);
    // a = 1 turns the parametric relu into the identity; the zoo refuses it.
    CHECK_THROWS_AS(make_activation(Act::parametric_relu, 1.0), ContractViolation);
    CHECK_THROWS_AS(make_activation(Act::elu, -2.0), ContractViolation);
}

TEST_CASE("names round-trip through the parser") {
    for (const Activation& act : zoo()) {
        const Activation back = parse_activation(act.name());
        CHECK(back.id() == act.id());
        CHECK(back.param() == act.param());
    }
}
