#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sphrest/spherequad.hpp"

namespace sphrest {

enum class Verdict { pass, fail, inconclusive };

// Pass/fail record of one verification.  The verdict is a pure function of
// the four numeric fields:
//   fail          if lhs > rhs + max(tolerance, 3 stat_error)
//   inconclusive  otherwise, if stat_error > |rhs - lhs| (underpowered)
//   pass          otherwise.
// Deterministic checks carry stat_error = 0 and can never be inconclusive.
struct Report {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double stat_error = 0.0;
    double tolerance = 0.0;
    Verdict verdict = Verdict::pass;
};

Verdict evaluate_verdict(double lhs, double rhs, double stat_error, double tolerance);
Report make_report(std::string name, double lhs, double rhs, double stat_error, double tolerance);
const char* verdict_name(Verdict v);

// Values of the four-step inequality chain for the fourth-power problem:
//   ||ext(f)||_4^4
//     <= (2pi)^d Q(|f|, |f|*, |f|, |f|*)
//     <= (2pi)^d Q(f#, f#, f#, f#)
//     <= (2pi)^d 2^{-d+3} omega_{d-2} (3/4) H_d(f#^2)
//     <= C(d,4,2)^4 ||f||_2^4,
// each quadrilinear value evaluated through its Plancherel identity.
struct ChainReport {
    int d = 0;
    double stages[5] = {0, 0, 0, 0, 0};
    std::vector<Report> checks;
};

// Sharp-constant equality for f = 1 and a plane wave, and the extremal
// inequality for `trials` random zonal densities.
std::vector<Report> verify_thm1(int d, int k, double q, int trials, std::uint64_t seed);

// Monte Carlo estimate (value, standard error) of the weighted bilinear bound
//   (2pi)^d 2^{(-d+2)/2} omega_{d-2}
//     int int [ (1-z1.z2)^{d-3} / (1+z1.z2) ]^{1/2} |f1(z1)|^2 |f2(z2)|^2 dsigma dsigma.
std::pair<double, double> weighted_rhs_cor3(int d, const TrialFunction& f1, const TrialFunction& f2,
                                            long n, std::uint64_t seed, bool parallel = true);

// || ext(f1) ext(f2) ||_2^2 <= weighted bound: equality for constants and for
// the shared exponential family, inequality (pass or inconclusive) for
// `pairs` random zonal pairs.
std::vector<Report> verify_cor3(int d, int pairs, long n, std::uint64_t seed);

// Max deviation of |z1+z2||z3+z4| + |z1+z3||z2+z4| + |z1+z4||z2+z3| from 4
// over n constrained quadruples; passes at 1e-12.
Report geometric_identity(int d, long n, std::uint64_t seed);
double geometric_identity_max_dev(int d, long n, std::uint64_t seed);         // OpenMP kernel
double geometric_identity_max_dev_serial(int d, long n, std::uint64_t seed);  // reference

// Norm preservation and the quadrilinear comparison for the antipodal
// symmetrization of a real nonnegative zonal density.
std::vector<Report> antipodal_check(const TrialFunction& f, int d);

// H_d(g) = sum_k Lambda_k ||Y_k||^2 for zonal g with the given real
// (degree, coefficient) pairs; degrees must be even.
double hd_spectral(int d, const std::vector<std::pair<int, double>>& coeffs);

// Direct Monte Carlo of the defining double integral of H_d (value, stderr).
std::pair<double, double> hd_direct_mc(int d, const TrialFunction& g, long n, std::uint64_t seed,
                                       bool parallel = true);
double hd_direct_mc_sum_serial(int d, const TrialFunction& g, long n, std::uint64_t seed);  // reference

// Mean-value bound H_d(g) <= |mean|^2 H_d(1) for random even zonal g,
// equality for constants, and the L^1 continuity bound on random pairs.
std::vector<Report> verify_lem11(int d, int trials, std::uint64_t seed);

ChainReport chain_report(int d, const TrialFunction& f);

// Random strictly positive zonal profile: six Legendre coefficients uniform
// in [-1, 1], shifted above zero.
TrialFunction random_positive_zonal(std::uint64_t seed);

// Conservative relative error bound used when a margin must beat "10x the
// numerical error" of the quadrature-based norms.
inline constexpr double kNormRelErr = 1e-8;

}  // namespace sphrest
