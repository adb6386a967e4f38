#include "memchaos/system.hpp"

#include <cmath>

#include "memchaos/error.hpp"

namespace memchaos {

SystemParams canonical_params() {
    return SystemParams{10.0, 100.0 / 7.0, 0.1, 9.0 / 7.0, 1.0 / 7.0, 2.0 / 7.0};
}

State7 canonical_initial_state() {
    return State7{0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1};
}

void validate(const SystemParams& p) {
    const double fields[] = {p.alpha, p.beta, p.r, p.d, p.a, p.b};
    for (double f : fields) {
        if (!std::isfinite(f)) {
            throw DomainError("system parameter is not finite");
        }
    }
    if (!(p.a > 0.0)) {
        throw DomainError("memristor coefficient a must be > 0");
    }
    if (!(p.b > 0.0)) {
        throw DomainError("memristor coefficient b must be > 0");
    }
}

double memristor_charge(double phi, double a, double b) {
    if (!std::isfinite(phi)) {
        throw DomainError("memristor flux must be finite");
    }
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("memristor coefficients must be > 0");
    }
    return a * phi + b * phi * phi * phi;
}

double memristance(double phi, double a, double b) {
    if (!std::isfinite(phi)) {
        throw DomainError("memristor flux must be finite");
    }
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("memristor coefficients must be > 0");
    }
    return a + 3.0 * b * phi * phi;
}

namespace detail {

State7 rhs(const State7& s, const SystemParams& p) noexcept {
    const double w = p.a + 3.0 * p.b * s[6] * s[6];
    State7 out;
    out[0] = p.alpha * (s[2] - s[0] + p.d * s[0] - w * s[0]);
    out[1] = p.alpha * (s[3] - s[1] + p.d * s[1] - w * s[1]);
    out[2] = s[0] - s[2] + s[4];
    out[3] = s[1] - s[3] + s[5];
    out[4] = p.r * s[4] - p.beta * s[2];
    out[5] = p.r * s[5] - p.beta * s[3];
    out[6] = s[0];
    return out;
}

Matrix7 jac(const State7& s, const SystemParams& p) noexcept {
    const double w = p.a + 3.0 * p.b * s[6] * s[6];
    Matrix7 j{};
    j[0][0] = p.alpha * (-1.0 + p.d - w);
    j[0][2] = p.alpha;
    j[0][6] = -p.alpha * 6.0 * p.b * s[6] * s[0];
    j[1][1] = p.alpha * (-1.0 + p.d - w);
    j[1][3] = p.alpha;
    j[1][6] = -p.alpha * 6.0 * p.b * s[6] * s[1];
    j[2][0] = 1.0;
    j[2][2] = -1.0;
    j[2][4] = 1.0;
    j[3][1] = 1.0;
    j[3][3] = -1.0;
    j[3][5] = 1.0;
    j[4][2] = -p.beta;
    j[4][4] = p.r;
    j[5][3] = -p.beta;
    j[5][5] = p.r;
    j[6][0] = 1.0;
    return j;
}

}  // namespace detail

State7 vector_field(const State7& s, const SystemParams& p) {
    validate(p);
    for (double x : s) {
        if (!std::isfinite(x)) {
            throw DomainError("state component is not finite");
        }
    }
    State7 out = detail::rhs(s, p);
    for (double x : out) {
        if (!std::isfinite(x)) {
            throw DomainError("vector field overflowed to non-finite");
        }
    }
    return out;
}

Matrix7 jacobian(const State7& s, const SystemParams& p) {
    validate(p);
    for (double x : s) {
        if (!std::isfinite(x)) {
            throw DomainError("state component is not finite");
        }
    }
    return detail::jac(s, p);
}

}  // namespace memchaos
