#include "sphrest/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sphrest/specialfn.hpp"

namespace sphrest {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Jacobi polynomial P_n^{(a,b)}(x) and derivative by the standard recurrence.
void jacobi_pd(int n, double a, double b, double x, double& p, double& dp) {
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    double pm1 = 1.0;
    double pc = 0.5 * (a - b + (a + b + 2.0) * x);
    for (int k = 2; k <= n; ++k) {
        double k2ab = 2.0 * k + a + b;
        double a1 = 2.0 * k * (k + a + b) * (k2ab - 2.0);
        double a2 = (k2ab - 1.0) * (a * a - b * b);
        double a3 = (k2ab - 2.0) * (k2ab - 1.0) * k2ab;
        double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * k2ab;
        double pn = ((a2 + a3 * x) * pc - a4 * pm1) / a1;
        pm1 = pc;
        pc = pn;
    }
    p = pc;
    // d/dx P_n^{(a,b)} via the lowered-degree identity
    double denom = (2.0 * n + a + b) * (1.0 - x * x);
    dp = (n * (a - b - (2.0 * n + a + b) * x) * pc + 2.0 * (n + a) * (n + b) * pm1) / denom;
}

}  // namespace

double gegenbauer_eval(double alpha, long k, double t) {
    if (k < 0) return 0.0;
    if (k == 0) return 1.0;
    double cm1 = 1.0;
    double c = 2.0 * alpha * t;
    for (long j = 1; j < k; ++j) {
        double cn = ((2.0 * j + 2.0 * alpha) * t * c - (j + 2.0 * alpha - 1.0) * cm1) / (j + 1.0);
        cm1 = c;
        c = cn;
    }
    return c;
}

double gegenbauer_eval(GegenbauerParam alpha, long k, double t) {
    return gegenbauer_eval(alpha.alpha(), k, t);
}

Rational gegenbauer_eval_exact(GegenbauerParam alpha, long k, const Rational& t) {
    if (k < 0) return Rational(0);
    if (k == 0) return Rational(1);
    Rational a = rational(alpha.twice_alpha, 2);
    Rational cm1(1);
    Rational c = 2 * a * t;
    for (long j = 1; j < k; ++j) {
        Rational cn = ((2 * j + 2 * a) * t * c - (j + 2 * a - 1) * cm1) / (j + 1);
        cn.canonicalize();
        cm1 = c;
        c = cn;
    }
    c.canonicalize();
    return c;
}

Integer gegenbauer_one(GegenbauerParam alpha, long k) {
    if (k < 0) return Integer(0);
    // C^alpha_k(1) = C(k + 2 alpha - 1, k); integral since 2 alpha is integral.
    return binomial(k + alpha.twice_alpha - 1, static_cast<unsigned long>(k));
}

Integer legendre_derivative_endpoint(long k) {
    if (k < 0) throw std::domain_error("legendre_derivative_endpoint: k must be nonnegative");
    Integer b = binomial(k + 1, 2);
    return (k % 2 == 0) ? Integer(-b) : b;
}

JacobiRule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw std::domain_error("gauss_jacobi: need at least one node");
    if (!(a > -1.0) || !(b > -1.0)) throw std::domain_error("gauss_jacobi: exponents must exceed -1");

    JacobiRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    // Newton with deflation against the roots already found, walking from the
    // node nearest t = -1 upward.  Chebyshev angles seed the first guess.
    double dth = kPi / (2.0 * n);
    double rlast = 0.0;
    for (int k = 0; k < n; ++k) {
        double r = -std::cos((2.0 * k + 1.0) * dth);
        if (k > 0) r = 0.5 * (r + rlast);
        bool settled = false;
        for (int it = 0; it < 80; ++it) {
            double p, dp;
            jacobi_pd(n, a, b, r, p, dp);
            double defl = 0.0;
            for (int i = 0; i < k; ++i) defl += 1.0 / (r - rule.nodes[i]);
            double delta = -p / (dp - defl * p);
            r += delta;
            if (std::abs(delta) < 1e-14) {
                settled = true;
                break;
            }
        }
        if (!settled) {
            throw std::runtime_error("gauss_jacobi: Newton iteration did not settle for node " +
                                     std::to_string(k) + " of n=" + std::to_string(n) +
                                     " a=" + std::to_string(a) + " b=" + std::to_string(b));
        }
        rule.nodes[k] = r;
        rlast = r;
    }

    double fac = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + n + 1.0) +
                          std::lgamma(b + n + 1.0) - std::lgamma(n + 1.0) -
                          std::lgamma(a + b + n + 1.0));
    for (int k = 0; k < n; ++k) {
        double p, dp;
        jacobi_pd(n, a, b, rule.nodes[k], p, dp);
        rule.weights[k] = fac / (dp * dp * (1.0 - rule.nodes[k] * rule.nodes[k]));
    }
    return rule;
}

}  // namespace sphrest
