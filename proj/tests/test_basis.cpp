#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hkan/basis.hpp"
#include "hkan/errors.hpp"

#include <algorithm>
#include <cmath>

using hkan::BafKind;
using hkan::BafParams;
using hkan::eval_baf;
using hkan::generate_locations;
using hkan::Placement;
using hkan::RngStream;

TEST_CASE("hand-checkable evaluations") {
    CHECK(eval_baf({BafKind::Gaussian, 0.3, 5.0}, 0.3) == doctest::Approx(1.0));
    CHECK(eval_baf({BafKind::Sigmoid, 0.7, 12.0}, 0.7) == doctest::Approx(0.5));
    CHECK(eval_baf({BafKind::Gaussian, 0.0, 1.0}, 1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(eval_baf({BafKind::Identity, 9.0, 9.0}, 0.42) == doctest::Approx(0.42));
    CHECK(eval_baf({BafKind::Relu, 0.5, 2.0}, 0.25) == doctest::Approx(0.0));
    CHECK(eval_baf({BafKind::Relu, 0.5, 2.0}, 1.0) == doctest::Approx(1.0));
    CHECK(eval_baf({BafKind::Tanh, 0.0, 1.0}, 0.5) == doctest::Approx(std::tanh(0.5)));
    CHECK(eval_baf({BafKind::Softplus, 0.0, 1.0}, 0.0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("softplus is overflow-safe at extreme arguments") {
    const double big = eval_baf({BafKind::Softplus, 0.0, 1.0}, 1e6);
    CHECK(std::isfinite(big));
    CHECK(big == doctest::Approx(1e6));
    const double small = eval_baf({BafKind::Softplus, 0.0, 1.0}, -1e6);
    CHECK(std::isfinite(small));
    CHECK(small >= 0.0);
}

TEST_CASE("output ranges hold over randomized inputs") {
    RngStream rng(5);
    for (int i = 0; i < 2000; ++i) {
        const double z = rng.uniform(-20.0, 20.0);
        const double mu = rng.uniform(-2.0, 2.0);
        const double sigma = rng.uniform(0.1, 10.0);
        // Closed bounds: saturation and underflow reach the endpoints exactly.
        const double g = eval_baf({BafKind::Gaussian, mu, sigma}, z);
        CHECK(g >= 0.0);
        CHECK(g <= 1.0);
        const double s = eval_baf({BafKind::Sigmoid, mu, sigma}, z);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        const double t = eval_baf({BafKind::Tanh, mu, sigma}, z);
        CHECK(t >= -1.0);
        CHECK(t <= 1.0);
        CHECK(eval_baf({BafKind::Relu, mu, sigma}, z) >= 0.0);
        CHECK(eval_baf({BafKind::Softplus, mu, sigma}, z) >= 0.0);
    }
}

TEST_CASE("monotone kinds are monotone and the gaussian peaks at mu") {
    RngStream rng(6);
    for (BafKind kind :
         {BafKind::Sigmoid, BafKind::Tanh, BafKind::Relu, BafKind::Softplus, BafKind::Identity}) {
        double prev = eval_baf({kind, 0.3, 2.5}, -5.0);
        for (double z = -4.9; z <= 5.0; z += 0.1) {
            const double v = eval_baf({kind, 0.3, 2.5}, z);
            CHECK(v >= prev - 1e-15);
            prev = v;
        }
    }
    const BafParams gauss{BafKind::Gaussian, 0.4, 3.0};
    const double peak = eval_baf(gauss, 0.4);
    for (int i = 0; i < 200; ++i) CHECK(eval_baf(gauss, rng.uniform(-3.0, 3.0)) <= peak);
}

TEST_CASE("equally spaced locations follow the midpoint rule") {
    Eigen::VectorXd column(2);
    column << 0.0, 1.0;
    RngStream rng(1);
    const auto mus = generate_locations(Placement::EquallySpaced, 2, column, rng);
    REQUIRE(mus.size() == 2);
    CHECK(mus[0] == doctest::Approx(0.25));
    CHECK(mus[1] == doctest::Approx(0.75));
}

TEST_CASE("data-driven locations are support points of the column") {
    Eigen::VectorXd constant(4);
    constant << 0.5, 0.5, 0.5, 0.5;
    RngStream rng(2);
    for (double mu : generate_locations(Placement::DataDriven, 3, constant, rng))
        CHECK(mu == doctest::Approx(0.5));

    Eigen::VectorXd column(5);
    column << 0.1, 0.4, 0.7, 0.2, 0.9;
    RngStream rng2(3);
    for (double mu : generate_locations(Placement::DataDriven, 64, column, rng2)) {
        bool member = false;
        for (Eigen::Index i = 0; i < column.size(); ++i)
            if (mu == column(i)) member = true;
        CHECK(member);
    }
}

TEST_CASE("random locations widen to the unit interval for in-range columns") {
    Eigen::VectorXd column(3);
    column << 0.4, 0.5, 0.6;
    RngStream rng(4);
    const auto mus = generate_locations(Placement::RandomUniform, 1000, column, rng);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (double mu : mus) {
        lo = std::min(lo, mu);
        hi = std::max(hi, mu);
        sum += mu;
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
    CHECK(lo < 0.4);  // escapes the narrow observed range
    CHECK(hi > 0.6);
    CHECK(sum / 1000.0 == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("random locations track the observed range of wide columns") {
    Eigen::VectorXd column(4);
    column << -3.0, 1.0, 4.0, 0.0;
    RngStream rng(5);
    for (double mu : generate_locations(Placement::RandomUniform, 500, column, rng)) {
        CHECK(mu >= -3.0);
        CHECK(mu < 4.0);
    }
}

TEST_CASE("location generation is seed-deterministic") {
    Eigen::VectorXd column(6);
    column << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6;
    RngStream a(11), b(11);
    CHECK(generate_locations(Placement::RandomUniform, 10, column, a) ==
          generate_locations(Placement::RandomUniform, 10, column, b));
    RngStream c(12), d(12);
    CHECK(generate_locations(Placement::DataDriven, 10, column, c) ==
          generate_locations(Placement::DataDriven, 10, column, d));
}

TEST_CASE("invalid location requests are rejected") {
    Eigen::VectorXd column(2);
    column << 0.0, 1.0;
    RngStream rng(1);
    CHECK_THROWS_AS(generate_locations(Placement::DataDriven, 0, column, rng),
                    hkan::InvalidInput);
    CHECK_THROWS_AS(generate_locations(Placement::DataDriven, 3, Eigen::VectorXd(0), rng),
                    hkan::EmptyDataset);
}

TEST_CASE("wire names round-trip") {
    for (BafKind kind : {BafKind::Gaussian, BafKind::Sigmoid, BafKind::Relu, BafKind::Softplus,
                         BafKind::Tanh, BafKind::Identity})
        CHECK(hkan::baf_kind_from_string(hkan::to_string(kind)) == kind);
    for (Placement placement :
         {Placement::RandomUniform, Placement::DataDriven, Placement::EquallySpaced})
        CHECK(hkan::placement_from_string(hkan::to_string(placement)) == placement);
    CHECK(hkan::to_string(BafKind::Softplus) == "softplus");
    CHECK(hkan::to_string(Placement::RandomUniform) == "random");
    CHECK_THROWS_AS(hkan::baf_kind_from_string("spline"), hkan::ParseError);
    CHECK_THROWS_AS(hkan::placement_from_string("grid"), hkan::ParseError);
}

TEST_CASE("output-layer-only markers") {
    CHECK(hkan::output_layer_only(BafKind::Identity));
    CHECK_FALSE(hkan::output_layer_only(BafKind::Sigmoid));
    CHECK(hkan::output_layer_only(Placement::EquallySpaced));
    CHECK_FALSE(hkan::output_layer_only(Placement::DataDriven));
}
