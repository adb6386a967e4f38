#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "memchaos/error.hpp"
#include "memchaos/system.hpp"
#include "support.hpp"

using namespace memchaos;

TEST_CASE("canonical parameters print their defining ratios") {
    const SystemParams p = canonical_params();
    CHECK(p.alpha == 10.0);
    CHECK(p.beta == doctest::Approx(14.285714285714286).epsilon(1e-15));
    CHECK(p.beta == 100.0 / 7.0);
    CHECK(p.r == 0.1);
    CHECK(p.d == 9.0 / 7.0);
    CHECK(p.a == 1.0 / 7.0);
    CHECK(p.b == 2.0 / 7.0);
    const State7 s0 = canonical_initial_state();
    for (double x : s0) CHECK(x == 0.1);
}

TEST_CASE("parameter validation accepts canonical and rejects bad fields") {
    SystemParams p = canonical_params();
    CHECK_NOTHROW(validate(p));
    p.a = 0.0;
    CHECK_THROWS_AS(validate(p), DomainError);
    p = canonical_params();
    p.b = -1.0;
    CHECK_THROWS_AS(validate(p), DomainError);
    p = canonical_params();
    p.alpha = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(p), DomainError);
    p = canonical_params();
    p.r = std::nan("");
    CHECK_THROWS_AS(validate(p), DomainError);
    // Negative alpha/beta/r/d are allowed: only a and b carry sign
    // constraints.
    p = canonical_params();
    p.beta = -100.0;
    CHECK_NOTHROW(validate(p));
}

TEST_CASE("memristor charge and memristance match their cubic forms") {
    const double a = 1.0 / 7.0, b = 2.0 / 7.0;
    CHECK(memristor_charge(0.0, a, b) == 0.0);
    CHECK(memristor_charge(1.0, a, b) == doctest::Approx(a + b).epsilon(1e-15));
    CHECK(memristor_charge(-2.0, a, b) ==
          doctest::Approx(-2.0 * a - 8.0 * b).epsilon(1e-15));
    CHECK(memristance(0.0, a, b) == a);
    CHECK(memristance(2.0, a, b) == doctest::Approx(a + 12.0 * b).epsilon(1e-15));
    // Memristance is the derivative of the charge curve.
    const double h = 1e-6;
    for (double phi : {-1.7, -0.3, 0.0, 0.9, 2.4}) {
        const double fd =
            (memristor_charge(phi + h, a, b) - memristor_charge(phi - h, a, b)) /
            (2.0 * h);
        CHECK(testsupport::close_rel(fd, memristance(phi, a, b), 1e-8));
    }
    CHECK_THROWS_AS(memristor_charge(std::nan(""), a, b), DomainError);
    CHECK_THROWS_AS(memristance(1.0, 0.0, b), DomainError);
    CHECK_THROWS_AS(memristance(1.0, a, -0.1), DomainError);
}

TEST_CASE("vector field matches a hand-computed point") {
    const SystemParams p = canonical_params();
    const State7 s{0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1};
    const State7 f = vector_field(s, p);
    // W(0.1) = 1/7 + 3*(2/7)*0.01 = 1/7 + 0.06/7
    const double w = (1.0 + 0.06) / 7.0;
    CHECK(f[0] == doctest::Approx(10.0 * (0.1 - 0.1 + 0.9 / 7.0 * 1.0 - w * 0.1))
                      .epsilon(1e-14));
    CHECK(f[0] == f[1]);
    CHECK(f[2] == doctest::Approx(0.1).epsilon(1e-15));  // 0.1 - 0.1 + 0.1
    CHECK(f[2] == f[3]);
    CHECK(f[4] == doctest::Approx(0.1 * 0.1 - (100.0 / 7.0) * 0.1).epsilon(1e-14));
    CHECK(f[4] == f[5]);
    CHECK(f[6] == 0.1);
}

TEST_CASE("vector field rejects non-finite states") {
    const SystemParams p = canonical_params();
    State7 s = canonical_initial_state();
    s[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(vector_field(s, p), DomainError);
    s[3] = std::nan("");
    CHECK_THROWS_AS(jacobian(s, p), DomainError);
}

TEST_CASE("the equal-pairs subspace is exactly invariant under the flow") {
    // x1=x2, x3=x4, x5=x6 is algebraically preserved: both halves see
    // identical right-hand sides. This is why the canonical start state
    // keeps its mirror symmetry forever.
    const SystemParams p = canonical_params();
    const auto xs = testsupport::uniform_doubles(40, -3.0, 3.0, 99);
    for (std::size_t i = 0; i + 4 <= xs.size(); i += 4) {
        const State7 s{xs[i], xs[i], xs[i + 1], xs[i + 1], xs[i + 2], xs[i + 2],
                       xs[i + 3]};
        const State7 f = vector_field(s, p);
        CHECK(f[0] == f[1]);
        CHECK(f[2] == f[3]);
        CHECK(f[4] == f[5]);
    }
}

TEST_CASE("analytic Jacobian agrees with central differences at 100 random states") {
    const SystemParams p = canonical_params();
    const auto vals = testsupport::uniform_doubles(700, -5.0, 5.0, 2024);
    for (int trial = 0; trial < 100; ++trial) {
        State7 s;
        for (std::size_t k = 0; k < kDim; ++k) {
            s[k] = vals[static_cast<std::size_t>(trial) * 7 + k];
        }
        const Matrix7 analytic = jacobian(s, p);
        const Matrix7 fd = testsupport::fd_jacobian(s, p);
        for (std::size_t r = 0; r < kDim; ++r) {
            for (std::size_t c = 0; c < kDim; ++c) {
                CAPTURE(trial);
                CAPTURE(r);
                CAPTURE(c);
                CHECK(testsupport::close_rel(analytic[r][c], fd[r][c], 1e-4));
            }
        }
    }
}

TEST_CASE("Jacobian trace equals its closed form") {
    // trace = 2*alpha*(-1 + d - W(x7)) - 2 + 2r: the flow direction and
    // coupling rows contribute nothing to the diagonal.
    const SystemParams p = canonical_params();
    const auto vals = testsupport::uniform_doubles(70, -4.0, 4.0, 7);
    for (std::size_t t = 0; t < 10; ++t) {
        State7 s;
        for (std::size_t k = 0; k < kDim; ++k) s[k] = vals[t * 7 + k];
        const Matrix7 j = jacobian(s, p);
        double trace = 0.0;
        for (std::size_t k = 0; k < kDim; ++k) trace += j[k][k];
        const double w = memristance(s[6], p.a, p.b);
        const double expect = 2.0 * p.alpha * (-1.0 + p.d - w) - 2.0 + 2.0 * p.r;
        CHECK(testsupport::close_rel(trace, expect, 1e-12));
    }
}
