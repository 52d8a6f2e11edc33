#pragma once

#include <vector>

#include "sphrest/rational.hpp"

namespace sphrest {

// Gegenbauer index alpha = (d-2)/2, stored doubled so the exact paths can
// branch on integer vs half-integer without floating point tests.
struct GegenbauerParam {
    int twice_alpha;
    double alpha() const { return 0.5 * twice_alpha; }
};

// C^alpha_k(t) by the forward three-term recurrence
//   (k+1) C_{k+1} = (2k+2a) t C_k - (k+2a-1) C_{k-1},  C_0 = 1, C_1 = 2 a t.
// Coefficients are never expanded; the recurrence stays stable for k in the
// hundreds where expanded coefficients would have cancelled catastrophically.
double gegenbauer_eval(double alpha, long k, double t);
double gegenbauer_eval(GegenbauerParam alpha, long k, double t);

// Same recurrence in exact rational arithmetic (2 alpha integral, t rational).
Rational gegenbauer_eval_exact(GegenbauerParam alpha, long k, const Rational& t);

// C^alpha_k(1) = C(k + 2 alpha - 1, k), exact.
Integer gegenbauer_one(GegenbauerParam alpha, long k);

// P_k'(-1) = (-1)^{k+1} C(k+1, 2), exact.
Integer legendre_derivative_endpoint(long k);

// Gauss-Jacobi rule for the weight (1-t)^a (1+t)^b on [-1, 1]:
// n nodes, exact for polynomials of degree <= 2n-1.
struct JacobiRule {
    std::vector<double> nodes;    // strictly increasing, in (-1, 1)
    std::vector<double> weights;  // positive
    double a = 0.0, b = 0.0;

    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

// Nodes by Newton iteration with deflation from Chebyshev initial guesses;
// throws std::runtime_error with diagnostics if an iteration fails to settle.
JacobiRule gauss_jacobi(int n, double a, double b);

}  // namespace sphrest
