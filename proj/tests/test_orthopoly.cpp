#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sphrest/orthopoly.hpp"
#include "sphrest/specialfn.hpp"

using namespace sphrest;

namespace {

// Independent oracle: expand the generating function (1 - 2rt + r^2)^{-alpha}
// as a power series in r via the binomial series in x = r(2t - r), and read
// off the coefficient of r^k.
double generating_series_coeff(double alpha, int k, double t) {
    std::vector<double> series(k + 1, 0.0);  // coefficients in r
    series[0] = 1.0;
    // accumulate sum_m binom(alpha+m-1, m) x^m with x = 2tr - r^2
    std::vector<double> xpow(k + 1, 0.0);
    xpow[0] = 1.0;
    double binom = 1.0;
    for (int m = 1; m <= k; ++m) {
        binom *= (alpha + m - 1.0) / m;
        // xpow <- xpow * (2t r - r^2), truncated at degree k
        std::vector<double> nx(k + 1, 0.0);
        for (int i = 0; i + 1 <= k; ++i) {
            if (xpow[i] == 0.0) continue;
            nx[i + 1] += xpow[i] * 2.0 * t;
            if (i + 2 <= k) nx[i + 2] -= xpow[i];
        }
        xpow = nx;
        for (int i = 0; i <= k; ++i) series[i] += binom * xpow[i];
    }
    return series[k];
}

// Exact moments of the Jacobi weight, M_m = int_{-1}^{1} t^m (1-t)^a (1+t)^b dt,
// via the integration-by-parts recurrence
//   (a+b+m+2) M_{m+1} = (b-a) M_m + m M_{m-1},
// seeded with the beta-integral value of M_0.
double jacobi_weight_moment(int m, double a, double b) {
    double m0 = std::pow(2.0, a + b + 1.0) * beta_fn(a + 1.0, b + 1.0);
    if (m == 0) return m0;
    double prev = m0;
    double cur = (b - a) / (a + b + 2.0) * m0;
    for (int j = 1; j < m; ++j) {
        double next = ((b - a) * cur + j * prev) / (a + b + j + 2.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double deriv5(double (*f)(double, long, double), double alpha, long k, double t) {
    // five-point central difference
    double h = 1e-3;
    return (-f(alpha, k, t + 2 * h) + 8 * f(alpha, k, t + h) - 8 * f(alpha, k, t - h) + f(alpha, k, t - 2 * h)) /
           (12 * h);
}

}  // namespace

TEST_CASE("gegenbauer endpoint values") {
    for (long k = 0; k <= 20; ++k) {
        double want = (k % 2 == 0) ? 1.0 : -1.0;  // P_k(-1) = (-1)^k
        CHECK(gegenbauer_eval(0.5, k, -1.0) == doctest::Approx(want).epsilon(1e-12));
        CHECK(gegenbauer_eval(1.0, k, 1.0) == doctest::Approx(double(k + 1)).epsilon(1e-13));
    }
    CHECK(gegenbauer_eval(0.5, 2, 0.0) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("gegenbauer_eval against the generating function expansion") {
    for (double alpha : {0.5, 1.0, 1.5, 2.0, 2.5}) {
        for (int k = 0; k <= 10; ++k) {
            for (double t : {-0.9, -0.3, 0.0, 0.4, 0.95}) {
                double want = generating_series_coeff(alpha, k, t);
                CHECK(gegenbauer_eval(alpha, k, t) == doctest::Approx(want).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("gegenbauer_one closed forms and recurrence consistency") {
    for (long k = 0; k <= 200; ++k) {
        CHECK(gegenbauer_one({1}, k) == Integer(1));
        CHECK(gegenbauer_one({2}, k) == Integer(k + 1));
        CHECK(gegenbauer_one({3}, k) == binomial(k + 2, 2));
        CHECK(gegenbauer_one({4}, k) == binomial(k + 3, 3));
        CHECK(gegenbauer_one({5}, k) == binomial(k + 4, 4));
    }
    // exact rational recurrence at t = 1 agrees with the binomial
    for (int ta = 1; ta <= 5; ++ta) {
        for (long k : {0L, 1L, 7L, 60L, 200L}) {
            Rational r = gegenbauer_eval_exact({ta}, k, Rational(1));
            CHECK(r == Rational(gegenbauer_one({ta}, k)));
        }
    }
    // float recurrence at t = 1 within 1e-10 relative
    for (int ta = 1; ta <= 5; ++ta) {
        for (long k : {1L, 25L, 100L, 200L}) {
            double want = gegenbauer_one({ta}, k).get_d();
            CHECK(std::abs(gegenbauer_eval(0.5 * ta, k, 1.0) - want) <= 1e-10 * want);
        }
    }
}

TEST_CASE("legendre derivative at -1") {
    CHECK(legendre_derivative_endpoint(0) == Integer(0));
    CHECK(legendre_derivative_endpoint(1) == Integer(1));
    CHECK(legendre_derivative_endpoint(3) == Integer(6));
    // cross-route: P_{k+1}'(t) = C^{3/2}_k(t), evaluated at t = -1
    for (long k = 0; k <= 15; ++k) {
        double via_gegen = gegenbauer_eval(1.5, k, -1.0);
        CHECK(legendre_derivative_endpoint(k + 1).get_d() == doctest::Approx(via_gegen).epsilon(1e-11));
    }
}

TEST_CASE("derivative ladders between gegenbauer families") {
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> dist(-0.9, 0.9);
    for (int i = 0; i < 50; ++i) {
        double t = dist(gen);
        long k = static_cast<long>(gen() % 31);
        // C^{3/2}_k = d/dt P_{k+1}
        CHECK(gegenbauer_eval(1.5, k, t) ==
              doctest::Approx(deriv5(&gegenbauer_eval, 0.5, k + 1, t)).epsilon(1e-6));
        // C^2_k = (1/2) d/dt C^1_{k+1}
        CHECK(gegenbauer_eval(2.0, k, t) ==
              doctest::Approx(0.5 * deriv5(&gegenbauer_eval, 1.0, k + 1, t)).epsilon(1e-6));
        // 3 C^{5/2}_k = d^2/dt^2 P_{k+2}: compare first derivatives of the ladder below
        CHECK(3.0 * gegenbauer_eval(2.5, k, t) ==
              doctest::Approx(deriv5(&gegenbauer_eval, 1.5, k + 1, t)).epsilon(1e-6));
    }
}

TEST_CASE("gauss_jacobi classical small rules") {
    auto r1 = gauss_jacobi(1, 0.0, 0.0);
    CHECK(r1.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-14));

    auto r2 = gauss_jacobi(2, 0.0, 0.0);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-14));

    auto r5 = gauss_jacobi(5, 0.5, 0.0);
    double wsum = 0.0;
    for (double w : r5.weights) wsum += w;
    CHECK(wsum == doctest::Approx(std::pow(2.0, 1.5) * 2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("gauss_jacobi weight sums match the analytic weight mass") {
    for (double a : {-0.5, 0.0, 0.5, 1.0, 2.5}) {
        for (double b : {-0.5, 0.0, 1.0, 4.0}) {
            for (int n : {1, 3, 8, 32, 64}) {
                auto r = gauss_jacobi(n, a, b);
                double wsum = 0.0;
                for (double w : r.weights) wsum += w;
                double want = std::pow(2.0, a + b + 1.0) * beta_fn(a + 1.0, b + 1.0);
                CHECK(std::abs(wsum - want) <= 1e-12 * want);
                for (int i = 1; i < n; ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
                for (double w : r.weights) CHECK(w > 0.0);
            }
        }
    }
}

TEST_CASE("gauss_jacobi integrates random polynomials of degree 2n-1 exactly") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int n : {2, 5, 9, 16}) {
        for (double a : {0.0, 0.5, 1.5}) {
            for (double b : {0.0, 1.0}) {
                auto rule = gauss_jacobi(n, a, b);
                std::vector<double> coef(2 * n);
                for (auto& c : coef) c = dist(gen);
                double got = rule.integrate([&](double t) {
                    double p = 0.0;
                    for (int i = (int)coef.size() - 1; i >= 0; --i) p = p * t + coef[i];
                    return p;
                });
                double want = 0.0;
                for (int m = 0; m < (int)coef.size(); ++m) want += coef[m] * jacobi_weight_moment(m, a, b);
                CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
            }
        }
    }
}

TEST_CASE("gegenbauer orthogonality under the matching jacobi weight") {
    for (int ta : {1, 2, 3, 4, 5}) {
        double alpha = 0.5 * ta;
        auto rule = gauss_jacobi(48, alpha - 0.5, alpha - 0.5);
        for (long j = 0; j <= 20; ++j) {
            for (long k = j + 1; k <= 20; ++k) {
                double v = rule.integrate(
                    [&](double t) { return gegenbauer_eval(alpha, j, t) * gegenbauer_eval(alpha, k, t); });
                CHECK(std::abs(v) <= 1e-10);
            }
        }
    }
}

TEST_CASE("gauss_jacobi invalid input") {
    CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(gauss_jacobi(4, -1.0, 0.0), std::domain_error);
}
