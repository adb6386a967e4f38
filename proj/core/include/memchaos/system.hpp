#pragma once

#include <array>
#include <cstddef>

namespace memchaos {

inline constexpr std::size_t kDim = 7;

using State7 = std::array<double, kDim>;
using Matrix7 = std::array<std::array<double, kDim>, kDim>;

// Parameters of the memristive oscillator:
//   dx1 = alpha*(x3 - x1 + d*x1 - W(x7)*x1)
//   dx2 = alpha*(x4 - x2 + d*x2 - W(x7)*x2)
//   dx3 = x1 - x3 + x5
//   dx4 = x2 - x4 + x6
//   dx5 = r*x5 - beta*x3
//   dx6 = r*x6 - beta*x4
//   dx7 = x1
// with memristance W(phi) = a + 3*b*phi^2. Only a and b must be strictly
// positive; the rest just have to be finite.
struct SystemParams {
    double alpha;
    double beta;
    double r;
    double d;
    double a;
    double b;
};

// alpha=10, beta=100/7, r=0.1, d=9/7, a=1/7, b=2/7.
SystemParams canonical_params();

// (0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1). Note: this state lies on the
// invariant subspace {x1=x2, x3=x4, x5=x6} and stays there exactly.
State7 canonical_initial_state();

// Throws DomainError on non-finite fields or a <= 0 or b <= 0.
void validate(const SystemParams& p);

// Memristor charge q(phi) = a*phi + b*phi^3; requires a, b > 0 and a
// finite phi.
double memristor_charge(double phi, double a, double b);

// Memristance W(phi) = dq/dphi = a + 3*b*phi^2; same domain as the charge.
double memristance(double phi, double a, double b);

// Right-hand side of the flow. Validates params and state finiteness and
// throws DomainError if any component of the result is non-finite.
State7 vector_field(const State7& s, const SystemParams& p);

// Analytic Jacobian; row i holds d(dx_i/dt)/dx_j. The only state-dependent
// entries are the two diagonal blocks through W(x7) and the (1,7)/(2,7)
// couplings -6*alpha*b*x7*x_i.
Matrix7 jacobian(const State7& s, const SystemParams& p);

namespace detail {
// Unchecked kernels for integrator hot loops; callers validate once.
State7 rhs(const State7& s, const SystemParams& p) noexcept;
Matrix7 jac(const State7& s, const SystemParams& p) noexcept;
}  // namespace detail

}  // namespace memchaos
