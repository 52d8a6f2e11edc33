#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

namespace sphrest {

// Truncated expansion  sum_j sum_t c[j][t] r^{-t} e^{i j chi}  used to carry
// products and powers of large-argument Bessel expansions; j is the harmonic
// index in the common phase chi = r + phase0.
struct HarmonicPoly {
    int maxt = 0;
    std::map<int, std::vector<std::complex<double>>> terms;  // j -> coeffs in 1/r

    static HarmonicPoly one(int maxt);
    // a single harmonic e^{i j chi} carrying a coefficient series
    static HarmonicPoly harmonic(int j, std::vector<std::complex<double>> coeffs, int maxt);

    HarmonicPoly operator*(const HarmonicPoly& o) const;
    HarmonicPoly pow(int n) const;
    void add(const HarmonicPoly& o);
    void scale(const std::complex<double>& c);
};

// int_R^inf r^{-s} e^{i a r} dr for a != 0, by repeated integration by parts;
// accurate once |a| R comfortably exceeds s.
std::complex<double> exp_power_tail(double s, double a, double R);

// int_R^inf r^{-s} dr, s > 1.
double power_tail(double s, double R);

// int_R^inf r^{-s0} P(r) dr where P is a HarmonicPoly in chi = r + phase0:
// each (j, t) term contributes e^{i j phase0} * tail(s0 + t, j).
double harmonic_tail(const HarmonicPoly& poly, double s0, double phase0, double R);

// Fixed-node Gauss-Legendre panels of length `panel` covering [lo, hi].
double panel_integrate(const std::function<double(double)>& f, double lo, double hi, double panel,
                       int nodes_per_panel = 24);

}  // namespace sphrest
