#include "sphrest/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "sphrest/eigencalc.hpp"
#include "sphrest/measures.hpp"
#include "sphrest/orthopoly.hpp"
#include "sphrest/specialfn.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sphrest {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kQInf = std::numeric_limits<double>::infinity();
}  // namespace

Verdict evaluate_verdict(double lhs, double rhs, double stat_error, double tolerance) {
    if (lhs > rhs + std::max(tolerance, 3.0 * stat_error)) return Verdict::fail;
    if (stat_error > std::abs(rhs - lhs)) return Verdict::inconclusive;
    return Verdict::pass;
}

Report make_report(std::string name, double lhs, double rhs, double stat_error, double tolerance) {
    Report r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.stat_error = stat_error;
    r.tolerance = tolerance;
    r.verdict = evaluate_verdict(lhs, rhs, stat_error, tolerance);
    return r;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "inconclusive";
    }
}

// ---------------------------------------------------------------------------
// Geometric identity

namespace {

double quadruple_deviation(const double* q, int d) {
    auto pair_norm = [&](int a, int b) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) {
            double x = q[a * d + j] + q[b * d + j];
            s += x * x;
        }
        return std::sqrt(s);
    };
    double total = pair_norm(0, 1) * pair_norm(2, 3) + pair_norm(0, 2) * pair_norm(1, 3) +
                   pair_norm(0, 3) * pair_norm(1, 2);
    return std::abs(total - 4.0);
}

}  // namespace

double geometric_identity_max_dev(int d, long n, std::uint64_t seed) {
    long nchunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<double> partial(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long c = 0; c < nchunks; ++c) {
        SplitMix64 rng(derive_seed(seed, c));
        long hi = std::min(n, (c + 1) * kChunkSize);
        double q[64];
        double worst = 0.0;
        for (long row = c * kChunkSize; row < hi; ++row) {
            draw_quadruple(rng, d, q);
            worst = std::max(worst, quadruple_deviation(q, d));
        }
        partial[c] = worst;
    }
    double worst = 0.0;
    for (double w : partial) worst = std::max(worst, w);
    return worst;
}

double geometric_identity_max_dev_serial(int d, long n, std::uint64_t seed) {
    double worst = 0.0;
    long nchunks = (n + kChunkSize - 1) / kChunkSize;
    for (long c = 0; c < nchunks; ++c) {
        SplitMix64 rng(derive_seed(seed, c));
        long hi = std::min(n, (c + 1) * kChunkSize);
        double q[64];
        for (long row = c * kChunkSize; row < hi; ++row) {
            draw_quadruple(rng, d, q);
            worst = std::max(worst, quadruple_deviation(q, d));
        }
    }
    return worst;
}

Report geometric_identity(int d, long n, std::uint64_t seed) {
    if (d < 2) throw std::domain_error("geometric_identity: d must be at least 2");
    double dev = geometric_identity_max_dev(d, n, seed);
    return make_report("geometric-identity-d" + std::to_string(d), dev, 0.0, 0.0, 1e-12);
}

// ---------------------------------------------------------------------------
// H_d quadratic form

double hd_spectral(int d, const std::vector<std::pair<int, double>>& coeffs) {
    if (d < 3) throw std::domain_error("hd_spectral: d must be at least 3");
    long kmax = 0;
    for (const auto& [k, c] : coeffs) {
        if (k % 2 != 0) throw std::domain_error("hd_spectral: degrees must be even");
        if (k < 0) throw std::domain_error("hd_spectral: degrees must be nonnegative");
        kmax = std::max(kmax, static_cast<long>(k));
    }
    std::vector<double> lambda(kmax + 1, 0.0);
    if (d <= 7) {
        auto exact = lambda_exact(d, kmax);
        for (long k = 0; k <= kmax; ++k) lambda[k] = exact[k].value();
    } else {
        for (long k = 0; k <= kmax; ++k) lambda[k] = lambda_numeric(d, k);
    }
    double total = 0.0;
    for (const auto& [k, c] : coeffs) {
        total += lambda[k] * c * c * zonal_norm_sq(d, k);
    }
    return total;
}

namespace {

double hd_kernel(int d, double dist) {
    return dist * std::pow(std::max(0.0, 4.0 - dist * dist), 0.5 * (d - 3));
}

// one chunk of the direct double-integral Monte Carlo; returns (sum, sum of squares)
std::pair<double, double> hd_chunk(int d, const TrialFunction& g, long lo, long hi,
                                   std::uint64_t chunk_seed) {
    SplitMix64 rng(chunk_seed);
    double sum = 0.0, sumsq = 0.0;
    std::vector<double> z1(d), z2(d);
    auto draw_unit = [&](std::vector<double>& p) {
        double norm;
        do {
            norm = 0.0;
            for (int j = 0; j < d; ++j) {
                p[j] = rng.gaussian();
                norm += p[j] * p[j];
            }
            norm = std::sqrt(norm);
        } while (norm < 1e-8);
        for (int j = 0; j < d; ++j) p[j] /= norm;
    };
    for (long i = lo; i < hi; ++i) {
        draw_unit(z1);
        draw_unit(z2);
        double dot = 0.0;
        for (int j = 0; j < d; ++j) dot += z1[j] * z2[j];
        dot = std::clamp(dot, -1.0, 1.0);
        double dist = std::sqrt(std::max(0.0, 2.0 - 2.0 * dot));
        double x = g.value(d, z1[0]).real() * g.value(d, z2[0]).real() * hd_kernel(d, dist);
        sum += x;
        sumsq += x * x;
    }
    return {sum, sumsq};
}

}  // namespace

std::pair<double, double> hd_direct_mc(int d, const TrialFunction& g, long n, std::uint64_t seed,
                                       bool parallel) {
    if (d < 3) throw std::domain_error("hd_direct_mc: d must be at least 3");
    long nchunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<double> sums(nchunks, 0.0), sqs(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long c = 0; c < nchunks; ++c) {
        auto [s, q] = hd_chunk(d, g, c * kChunkSize, std::min(n, (c + 1) * kChunkSize),
                               derive_seed(seed, c));
        sums[c] = s;
        sqs[c] = q;
    }
    double sum = 0.0, sumsq = 0.0;
    for (long c = 0; c < nchunks; ++c) {
        sum += sums[c];
        sumsq += sqs[c];
    }
    double scale = sphere_area(d - 1) * sphere_area(d - 1);
    double mean = sum / n;
    double var = std::max(0.0, sumsq / n - mean * mean);
    return {scale * mean, scale * std::sqrt(var / n)};
}

double hd_direct_mc_sum_serial(int d, const TrialFunction& g, long n, std::uint64_t seed) {
    double sum = 0.0;
    long nchunks = (n + kChunkSize - 1) / kChunkSize;
    for (long c = 0; c < nchunks; ++c) {
        sum += hd_chunk(d, g, c * kChunkSize, std::min(n, (c + 1) * kChunkSize), derive_seed(seed, c))
                   .first;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Extremal ratios

namespace {

double extremal_ratio(int d, int k, double q, const TrialFunction& f) {
    double norm_q = zonal_lq_norm(f, d, q);
    double ext = (d >= 3) ? extension_norm(f, d, 2 * k) : sigma_hat_norm(d, k);  // d = 2: f must be constant
    return ext / norm_q;
}

}  // namespace

TrialFunction random_positive_zonal(std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::array<double, 6> c;
    for (auto& x : c) x = 2.0 * rng.uniform() - 1.0;
    double worst = 0.0;
    for (int i = 0; i <= 512; ++i) {
        double u = -1.0 + 2.0 * i / 512.0;
        double s = 0.0;
        for (int j = 0; j < 6; ++j) s += c[j] * gegenbauer_eval(0.5, j, u);
        worst = std::max(worst, std::abs(s));
    }
    double shift = worst + 0.1;
    return TrialFunction::tabulated([c, shift](double u) {
        double s = shift;
        for (int j = 0; j < 6; ++j) s += c[j] * gegenbauer_eval(0.5, j, u);
        return s;
    });
}

std::vector<Report> verify_thm1(int d, int k, double q, int trials, std::uint64_t seed) {
    SharpConstant sc = sharp_constant(d, k, q);  // validates the triple
    double C = sc.value;
    std::vector<Report> out;

    double ratio_one = extremal_ratio(d, k, q, TrialFunction::constant(1.0));
    out.push_back(make_report("thm1-equality-constant", std::abs(ratio_one - C) / C, 0.0, 0.0, 1e-5));

    if (d >= 3) {
        double ratio_pw = extremal_ratio(d, k, q, TrialFunction::plane_wave(1.1));
        out.push_back(make_report("thm1-equality-plane-wave", std::abs(ratio_pw - C) / C, 0.0, 0.0, 1e-5));

        for (int t = 0; t < trials; ++t) {
            TrialFunction f = (t % 3 == 2)
                                  ? TrialFunction::harmonic_perturbation(0.2 + 0.1 * (t % 5), 2 + 2 * (t % 2))
                                  : random_positive_zonal(derive_seed(seed, 1000 + t));
            double ratio = extremal_ratio(d, k, q, f);
            out.push_back(make_report("thm1-trial-" + std::to_string(t), ratio, C, 0.0, 1e-6 * C));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weighted bilinear bound

namespace {

std::pair<double, double> cor3_chunk(int d, const TrialFunction& f1, const TrialFunction& f2, long lo,
                                     long hi, std::uint64_t chunk_seed) {
    SplitMix64 rng(chunk_seed);
    double sum = 0.0, sumsq = 0.0;
    std::vector<double> z1(d), z2(d);
    auto draw_unit = [&](std::vector<double>& p) {
        double norm;
        do {
            norm = 0.0;
            for (int j = 0; j < d; ++j) {
                p[j] = rng.gaussian();
                norm += p[j] * p[j];
            }
            norm = std::sqrt(norm);
        } while (norm < 1e-8);
        for (int j = 0; j < d; ++j) p[j] /= norm;
    };
    for (long i = lo; i < hi; ++i) {
        draw_unit(z1);
        draw_unit(z2);
        double dot = 0.0;
        for (int j = 0; j < d; ++j) dot += z1[j] * z2[j];
        dot = std::clamp(dot, -1.0 + 1e-17, 1.0);
        double w = std::sqrt(std::pow(1.0 - dot, d - 3) / (1.0 + dot));
        double x = w * std::norm(f1.value(d, z1[0])) * std::norm(f2.value(d, z2[0]));
        sum += x;
        sumsq += x * x;
    }
    return {sum, sumsq};
}

}  // namespace

std::pair<double, double> weighted_rhs_cor3(int d, const TrialFunction& f1, const TrialFunction& f2,
                                            long n, std::uint64_t seed, bool parallel) {
    if (d < 3) throw std::domain_error("weighted_rhs_cor3: d must be at least 3");
    long nchunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<double> sums(nchunks, 0.0), sqs(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long c = 0; c < nchunks; ++c) {
        auto [s, q] = cor3_chunk(d, f1, f2, c * kChunkSize, std::min(n, (c + 1) * kChunkSize),
                                 derive_seed(seed, c));
        sums[c] = s;
        sqs[c] = q;
    }
    double sum = 0.0, sumsq = 0.0;
    for (long c = 0; c < nchunks; ++c) {
        sum += sums[c];
        sumsq += sqs[c];
    }
    double w2 = sphere_area(d - 1) * sphere_area(d - 1);
    double scale = std::pow(2.0 * kPi, d) * std::pow(2.0, 0.5 * (-d + 2)) * sphere_area(d - 2) * w2;
    double mean = sum / n;
    double var = std::max(0.0, sumsq / n - mean * mean);
    return {scale * mean, scale * std::sqrt(var / n)};
}

std::vector<Report> verify_cor3(int d, int pairs, long n, std::uint64_t seed) {
    if (d < 3) throw std::domain_error("verify_cor3: d must be at least 3");
    std::vector<Report> out;

    auto one = TrialFunction::constant(1.0);
    auto lhs_of = [&](const TrialFunction& a, const TrialFunction& b) {
        return extension_product_integral(d, {{&a, 2}, {&b, 2}});
    };

    {
        double lhs = lhs_of(one, one);
        auto [rhs, err] = weighted_rhs_cor3(d, one, one, n, seed);
        out.push_back(make_report("cor3-equality-constants", std::abs(lhs - rhs), 0.0, 0.0, 3.0 * err));
    }
    {
        auto pw = TrialFunction::plane_wave(0.9);
        double lhs = lhs_of(pw, pw);
        auto [rhs, err] = weighted_rhs_cor3(d, pw, pw, n, derive_seed(seed, 1));
        out.push_back(make_report("cor3-equality-plane-waves", std::abs(lhs - rhs), 0.0, 0.0, 3.0 * err));
    }
    {
        // the real members of the shared exponential family
        auto ex = TrialFunction::tabulated([](double u) { return std::exp(0.8 * u); });
        double lhs = lhs_of(ex, ex);
        auto [rhs, err] = weighted_rhs_cor3(d, ex, ex, n, derive_seed(seed, 2));
        out.push_back(make_report("cor3-equality-exponential", std::abs(lhs - rhs), 0.0, 0.0, 3.0 * err));
    }
    for (int t = 0; t < pairs; ++t) {
        TrialFunction f1 = random_positive_zonal(derive_seed(seed, 100 + 2 * t));
        TrialFunction f2 = random_positive_zonal(derive_seed(seed, 101 + 2 * t));
        double lhs = lhs_of(f1, f2);
        auto [rhs, err] = weighted_rhs_cor3(d, f1, f2, n, derive_seed(seed, 3 + t));
        out.push_back(make_report("cor3-pair-" + std::to_string(t), lhs, rhs, err, kNormRelErr * lhs));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Antipodal symmetrization

std::vector<Report> antipodal_check(const TrialFunction& f, int d) {
    if (d < 3) throw std::domain_error("antipodal_check: d must be at least 3");
    if (!f.is_real(d)) throw std::domain_error("antipodal_check: density must be real and nonnegative");
    for (int i = 0; i <= 64; ++i) {
        double u = -1.0 + 2.0 * i / 64.0;
        if (f.value(d, u).real() < 0.0) {
            throw std::domain_error("antipodal_check: density must be nonnegative");
        }
    }
    std::vector<Report> out;
    TrialFunction fs = f.symmetrized(d);

    double n0 = zonal_lq_norm(f, d, 2.0);
    double n1 = zonal_lq_norm(fs, d, 2.0);
    out.push_back(make_report("antipodal-norm-preserved", std::abs(n1 - n0) / n0, 0.0, 0.0, 1e-10));

    // quadrilinear comparison through the Plancherel route
    double q_f = std::pow(extension_norm(f, d, 4), 4) / std::pow(2.0 * kPi, d);
    double q_s = std::pow(extension_norm(fs, d, 4), 4) / std::pow(2.0 * kPi, d);
    out.push_back(make_report("antipodal-quadrilinear", q_f, q_s, 0.0, 10.0 * kNormRelErr * q_s));
    return out;
}

// ---------------------------------------------------------------------------
// Mean-value bound for H_d

namespace {

std::vector<std::pair<int, double>> even_zonal_coeff_pairs(const TrialFunction& g, int d) {
    auto a = zonal_coefficients(g, d);
    std::vector<std::pair<int, double>> pairs;
    double top = 0.0;
    for (const auto& c : a) top = std::max(top, std::abs(c));
    for (int k = 0; k < (int)a.size(); ++k) {
        if (std::abs(a[k]) <= 1e-11 * top) continue;
        if (k % 2 != 0) {
            throw std::domain_error("expected an even zonal profile");
        }
        pairs.emplace_back(k, a[k].real());
    }
    return pairs;
}

}  // namespace

std::vector<Report> verify_lem11(int d, int trials, std::uint64_t seed) {
    if (d < 3 || d > 7) throw std::domain_error("verify_lem11: d must be in 3..7");
    std::vector<Report> out;
    double h_one = hd_spectral(d, {{0, 1.0}});

    // constants attain equality
    out.push_back(make_report("lem11-equality-constant", std::abs(hd_spectral(d, {{0, 2.5}}) -
                                                                  2.5 * 2.5 * h_one),
                              0.0, 0.0, 1e-10 * h_one));

    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(seed, t));
        std::vector<std::pair<int, double>> coeffs = {{0, 2.0 * rng.uniform() - 1.0},
                                                      {2, 2.0 * rng.uniform() - 1.0},
                                                      {4, 2.0 * rng.uniform() - 1.0},
                                                      {6, 2.0 * rng.uniform() - 1.0}};
        double mu = coeffs[0].second;
        double h = hd_spectral(d, coeffs);
        double bound = mu * mu * h_one;
        double err = 1e-12 * (std::abs(h) + std::abs(bound));
        // strict unless the nonconstant part vanishes
        out.push_back(make_report("lem11-strict-" + std::to_string(t), h + 10.0 * err, bound, 0.0, 0.0));
    }

    // continuity: |H(g1) - H(g2)| <= 2^{d-2} (||g1||_1 + ||g2||_1) ||g1 - g2||_1
    for (int t = 0; t < 10; ++t) {
        SplitMix64 rng(derive_seed(seed, 500 + t));
        auto rnd = [&]() { return 2.0 * rng.uniform() - 1.0; };
        std::vector<std::pair<int, double>> c1 = {{0, rnd()}, {2, rnd()}, {4, rnd()}};
        std::vector<std::pair<int, double>> c2 = {{0, rnd()}, {2, rnd()}, {4, rnd()}};
        auto mk = [d](const std::vector<std::pair<int, double>>& cs) {
            return TrialFunction::tabulated([cs, d](double u) {
                double s = 0.0;
                for (auto& [k, c] : cs) {
                    s += c * gegenbauer_eval(0.5 * (d - 2), k, u) /
                         gegenbauer_one(GegenbauerParam{d - 2}, k).get_d();
                }
                return s;
            });
        };
        TrialFunction g1 = mk(c1), g2 = mk(c2);
        std::vector<std::pair<int, double>> cdiff;
        for (std::size_t i = 0; i < c1.size(); ++i) cdiff.emplace_back(c1[i].first, c1[i].second - c2[i].second);
        TrialFunction gdiff = mk(cdiff);
        double lhs = std::abs(hd_spectral(d, c1) - hd_spectral(d, c2));
        double rhs = std::pow(2.0, d - 2) *
                     (zonal_lq_norm(g1, d, 1.0) + zonal_lq_norm(g2, d, 1.0)) *
                     zonal_lq_norm(gdiff, d, 1.0);
        out.push_back(make_report("lem11-continuity-" + std::to_string(t), lhs, rhs, 0.0, 1e-6 * rhs));
    }
    return out;
}

// ---------------------------------------------------------------------------
// The inequality chain

ChainReport chain_report(int d, const TrialFunction& f) {
    if (d < 3 || d > 7) throw std::domain_error("chain_report: d must be in 3..7");
    ChainReport rep;
    rep.d = d;

    double ext4 = std::pow(extension_norm(f, d, 4), 4);
    TrialFunction fabs = f.abs(d);
    double q_star = std::pow(extension_norm(fabs, d, 4), 4);  // (2pi)^d Q(|f|,|f|*,|f|,|f|*)
    TrialFunction fsh = fabs.symmetrized(d);
    double q_sharp = std::pow(extension_norm(fsh, d, 4), 4);
    double hval = hd_spectral(d, even_zonal_coeff_pairs(fsh.squared(d), d));
    double stage4 = std::pow(2.0 * kPi, d) * std::pow(2.0, -d + 3) * sphere_area(d - 2) * 0.75 * hval;
    double c4 = std::pow(sharp_constant(d, 2, 2.0).value, 4);
    double l2 = zonal_lq_norm(f, d, 2.0);
    double final_bound = c4 * std::pow(l2, 4);

    rep.stages[0] = ext4;
    rep.stages[1] = q_star;
    rep.stages[2] = q_sharp;
    rep.stages[3] = stage4;
    rep.stages[4] = final_bound;

    const char* names[4] = {"chain-step-positivity", "chain-step-symmetrization",
                            "chain-step-cauchy-schwarz", "chain-step-mean-value"};
    for (int i = 0; i < 4; ++i) {
        double tol = 20.0 * kNormRelErr * std::abs(rep.stages[i + 1]);
        rep.checks.push_back(make_report(names[i], rep.stages[i], rep.stages[i + 1], 0.0, tol));
    }
    return rep;
}

}  // namespace sphrest
