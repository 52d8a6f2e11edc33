// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion carries its numeric tolerance and a wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sphrest/eigencalc.hpp"
#include "sphrest/measures.hpp"
#include "sphrest/orthopoly.hpp"
#include "sphrest/specialfn.hpp"
#include "sphrest/spherequad.hpp"
#include "sphrest/verifier.hpp"

using namespace sphrest;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const double kInf = std::numeric_limits<double>::infinity();

int g_failures = 0;

void criterion(int num, const std::string& what, double limit_s,
               const std::function<bool(std::string&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limit_s) {
        ok = false;
        detail += " [over time budget]";
    }
    if (!ok) ++g_failures;
    std::printf("criterion %2d %s  %-34s (%6.2f s / %3.0f s)%s%s\n", num, ok ? "PASS" : "FAIL",
                what.c_str(), secs, limit_s, detail.empty() ? "" : "  -- ", detail.c_str());
    std::fflush(stdout);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");

    criterion(1, "eigenvalue ground truth 32 pi / 3", 1.0, [](std::string& detail) {
        double want = 32.0 * kPi / 3.0;
        double via_exact = lambda_exact(4, 0)[0].value();
        double via_closed = lambda_closed(4, 0).value();
        double via_quad = lambda_numeric(4, 0);
        detail = "exact " + std::to_string(via_exact) + ", closed " + std::to_string(via_closed) +
                 ", quadrature " + std::to_string(via_quad);
        return rel(via_exact, want) <= 1e-10 && rel(via_closed, want) <= 1e-10 &&
               rel(via_quad, want) <= 1e-10;
    });

    criterion(2, "exact tables equal closed forms", 10.0, [](std::string& detail) {
        long checked = 0;
        for (int d = 4; d <= 7; ++d) {
            auto exact = lambda_exact(d, 100);
            for (long k = 0; k <= 100; ++k) {
                ExactScaled closed = lambda_closed(d, k);
                if (exact[k].coeff != closed.coeff || exact[k].omega_index != closed.omega_index) {
                    detail = "mismatch at d=" + std::to_string(d) + " k=" + std::to_string(k);
                    return false;
                }
                ++checked;
            }
        }
        detail = std::to_string(checked) + " rational identities";
        return true;
    });

    criterion(3, "sign patterns through k = 100", 10.0, [](std::string& detail) {
        auto bad = [&](int d, long k, Sign got, Sign want) {
            detail = "d=" + std::to_string(d) + " k=" + std::to_string(k) + " sign " +
                     std::to_string((int)got) + " expected " + std::to_string((int)want);
            return false;
        };
        for (int d = 3; d <= 7; ++d) {
            auto rows = sign_report(d, 100);
            for (long k = 0; k <= 100; ++k) {
                Sign want;
                if (d == 3) {
                    want = (k == 0) ? Sign::plus : Sign::minus;
                } else if (d == 4) {
                    want = (k == 0) ? Sign::plus : (k % 2 == 1 ? Sign::zero : Sign::minus);
                } else {
                    want = (k <= 1) ? Sign::plus : Sign::minus;
                }
                if (rows[k].sign != want) return bad(d, k, rows[k].sign, want);
            }
        }
        double l28 = lambda_numeric(8, 2);
        detail = "lambda_2 at d=8 is " + sci(l28);
        return l28 > 0.0;
    });

    criterion(4, "sharp constant C(3,4,2) = 2 pi", 5.0, [](std::string& detail) {
        double bessel_route = sharp_constant(3, 2, 2.0).value;
        double closed_route = sharp_constant_d4_closed(3, 2.0);
        detail = "bessel " + std::to_string(bessel_route) + ", closed " + std::to_string(closed_route);
        return rel(bessel_route, 2.0 * kPi) <= 1e-8 && rel(closed_route, 2.0 * kPi) <= 1e-8 &&
               std::abs(bessel_route - closed_route) <= 1e-8 * closed_route;
    });

    criterion(5, "plancherel consistency", 60.0, [](std::string& detail) {
        struct Case { int d, k; };
        double worst = 0.0;
        for (auto [d, k] : {Case{3, 2}, Case{4, 2}, Case{5, 2}, Case{3, 3}}) {
            auto prof = conv_profile(d, 2 * k, 2048);
            double lhs = std::pow(2.0 * kPi, d) * prof(0.0);
            double rhs = std::pow(sigma_hat_norm(d, k), 2.0 * k);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
        detail = "worst relative gap " + sci(worst);
        return worst <= 1e-6;
    });

    criterion(6, "geometric identity at 1e-12", 30.0, [](std::string& detail) {
        double worst = 0.0;
        for (int d : {2, 3, 5, 7}) {
            worst = std::max(worst, geometric_identity_max_dev(d, 1000000, 7));
        }
        detail = "max deviation " + sci(worst);
        return worst <= 1e-12;
    });

    criterion(7, "extremizers attain the constant", 300.0, [](std::string& detail) {
        double worst = 0.0;
        for (int d = 3; d <= 7; ++d) {
            for (int k : {2, 3}) {
                for (double q : {2.0 * k, kInf}) {
                    double C = sharp_constant(d, k, q).value;
                    for (int which : {0, 1}) {
                        TrialFunction f = which == 0 ? TrialFunction::constant(1.0)
                                                     : TrialFunction::plane_wave(1.1);
                        double ratio = extension_norm(f, d, 2 * k) / zonal_lq_norm(f, d, q);
                        worst = std::max(worst, std::abs(ratio - C) / C);
                    }
                }
            }
        }
        detail = "worst relative gap " + sci(worst);
        return worst <= 1e-5;
    });

    criterion(8, "strict sub-extremality, eps^2 scaling", 300.0, [](std::string& detail) {
        double C4[8] = {0};
        for (int d = 3; d <= 7; ++d) C4[d] = sharp_constant(d, 2, 2.0).value;
        // margins at the two required perturbation sizes
        for (int d = 3; d <= 7; ++d) {
            for (double eps : {0.1, 0.5}) {
                auto f = TrialFunction::harmonic_perturbation(eps, 2);
                double ratio = extension_norm(f, d, 4) / zonal_lq_norm(f, d, 2.0);
                double deficit = C4[d] - ratio;
                if (deficit <= 10.0 * kNormRelErr * C4[d]) {
                    detail = "margin too small at d=" + std::to_string(d) + " eps=" + std::to_string(eps);
                    return false;
                }
            }
        }
        // log-log slope of the deficit over a dyadic ladder
        double worst_slope_dev = 0.0;
        for (int d = 3; d <= 7; ++d) {
            std::vector<double> eps = {0.02, 0.04, 0.08, 0.16};
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (double e : eps) {
                auto f = TrialFunction::harmonic_perturbation(e, 2);
                double ratio = extension_norm(f, d, 4) / zonal_lq_norm(f, d, 2.0);
                double x = std::log(e), y = std::log(C4[d] - ratio);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            double n = eps.size();
            double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            worst_slope_dev = std::max(worst_slope_dev, std::abs(slope - 2.0));
        }
        detail = "worst |slope - 2| = " + sci(worst_slope_dev);
        return worst_slope_dev <= 0.1;
    });

    criterion(9, "weighted bilinear bound, Monte Carlo", 300.0, [](std::string& detail) {
        for (int d : {3, 4}) {
            auto one = TrialFunction::constant(1.0);
            double lhs = extension_product_integral(d, {{&one, 2}, {&one, 2}});
            auto [rhs, err] = weighted_rhs_cor3(d, one, one, 1000000, 11);
            if (std::abs(lhs - rhs) > 3.0 * err) {
                detail = "constants violated 3 sigma at d=" + std::to_string(d);
                return false;
            }
        }
        int inconclusive = 0;
        for (int t = 0; t < 20; ++t) {
            int d = 3 + (t % 2);
            TrialFunction f1 = random_positive_zonal(derive_seed(555, 2 * t));
            TrialFunction f2 = random_positive_zonal(derive_seed(555, 2 * t + 1));
            double lhs = extension_product_integral(d, {{&f1, 2}, {&f2, 2}});
            auto [rhs, err] = weighted_rhs_cor3(d, f1, f2, 100000, derive_seed(99, t));
            Report r = make_report("pair", lhs, rhs, err, kNormRelErr * lhs);
            if (r.verdict == Verdict::fail) {
                detail = "pair " + std::to_string(t) + " failed";
                return false;
            }
            if (r.verdict == Verdict::inconclusive) ++inconclusive;
        }
        detail = std::to_string(inconclusive) + " of 20 pairs inconclusive, none failed";
        return true;
    });

    criterion(10, "property suites", 60.0, [](std::string& detail) {
        // gauss-jacobi exactness on a random polynomial of degree 2n-1
        std::mt19937_64 gen(5150);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (int n : {4, 9}) {
            for (double a : {0.0, 1.5}) {
                auto rule = gauss_jacobi(n, a, 0.5);
                std::vector<double> coef(2 * n);
                for (auto& c : coef) c = dist(gen);
                double got = rule.integrate([&](double t) {
                    double p = 0.0;
                    for (int i = (int)coef.size() - 1; i >= 0; --i) p = p * t + coef[i];
                    return p;
                });
                // stable moment recurrence as the oracle
                double m0 = std::pow(2.0, a + 1.5) * beta_fn(a + 1.0, 1.5);
                std::vector<double> mom = {m0, (0.5 - a) / (a + 2.5) * m0};
                for (int m = 1; m + 1 < (int)coef.size(); ++m) {
                    mom.push_back(((0.5 - a) * mom[m] + m * mom[m - 1]) / (a + m + 2.5));
                }
                double want = 0.0;
                for (int m = 0; m < (int)coef.size(); ++m) want += coef[m] * mom[m];
                if (std::abs(got - want) > 1e-12 * std::max(1.0, std::abs(want))) {
                    detail = "gauss-jacobi exactness";
                    return false;
                }
            }
        }
        // recurrence endpoints and a derivative ladder
        for (long k = 0; k <= 60; ++k) {
            if (std::abs(gegenbauer_eval(1.0, k, 1.0) - (k + 1.0)) > 1e-10 * (k + 1.0)) {
                detail = "endpoint value";
                return false;
            }
        }
        for (double t : {-0.5, 0.1, 0.8}) {
            double h = 1e-4;
            double dP = (gegenbauer_eval(0.5, 8, t + h) - gegenbauer_eval(0.5, 8, t - h)) / (2 * h);
            if (std::abs(gegenbauer_eval(1.5, 7, t) - dP) > 1e-5) {
                detail = "derivative ladder";
                return false;
            }
        }
        // radial profile support and mass invariants
        auto prof = conv_profile(3, 3, 256);
        if (prof(3.2) != 0.0) {
            detail = "support";
            return false;
        }
        double mass = radial_mass(prof);
        double want_mass = std::pow(sphere_area(2), 3);
        if (std::abs(mass - want_mass) > 1e-6 * want_mass) {
            detail = "mass telescoping";
            return false;
        }
        // verdict purity
        for (double lhs : {0.5, 1.0, 2.0}) {
            for (double stat : {0.0, 0.3}) {
                Report r = make_report("x", lhs, 1.0, stat, 0.1);
                if (r.verdict != evaluate_verdict(r.lhs, r.rhs, r.stat_error, r.tolerance)) {
                    detail = "verdict purity";
                    return false;
                }
            }
        }
        return true;
    });

    std::printf("%s\n", g_failures == 0 ? "all criteria passed" : "FAILURES PRESENT");
    return g_failures == 0 ? 0 : 1;
}
