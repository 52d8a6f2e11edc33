#pragma once

#include <complex>
#include <vector>

#include "sphrest/rational.hpp"

namespace sphrest {

// Argument n/2 of a gamma call, kept as an integer so the exact evaluation
// path can be chosen reliably.
struct HalfInteger {
    int twice_value;
    double value() const { return 0.5 * twice_value; }
};

// Bessel order v = (d-2)/2; the series definition needs v > -1.
struct BesselOrder {
    int twice_value;
    double value() const { return 0.5 * twice_value; }
};

// Gamma for positive real x.  Integer and half-integer arguments take an
// exact product path (Gamma(n) = (n-1)!, Gamma(1/2) = sqrt(pi)); everything
// else goes through the C library implementation.
double gamma_fn(double x);
double gamma_half_integer(HalfInteger x);

// Surface measure of the unit n-sphere, omega_n = 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double sphere_area(int n);

// Beta function B(w, z) = Gamma(w) Gamma(z) / Gamma(w + z), w, z > 0.
double beta_fn(double w, double z);

// Bessel function of the first kind J_v(x) for v > -1, x >= 0.
// Power series below the crossover radius, Hankel asymptotic expansion above.
double bessel_j(double v, double x);
double bessel_j(BesselOrder v, double x);

// J_{v}(x), J_{v+1}(x), ..., J_{v+kmax}(x).  Stable for all orders via
// backward (Miller) recurrence normalized against the directly computed base
// order, so it stays accurate where the scalar asymptotic expansion would not
// (orders comparable to the argument).
std::vector<double> bessel_j_seq(double v, int kmax, double x);

// Coefficients z_t = i^t a_t(v) of the large-argument expansion
//   J_v(r) = sqrt(2/(pi r)) Re[ (sum_t z_t r^{-t}) e^{i chi} ],
//   chi = r - (2v+1) pi/4,
// with a_t(v) = prod_{s<=t} (4v^2-(2s-1)^2) / (t! 8^t).
std::vector<std::complex<double>> hankel_z_series(double v, int nterms);

// dim of the space of spherical harmonics of degree k on S^{d-1}:
// C(d+k-1, d-1) - C(d+k-3, d-1), exact.
Integer harmonic_dim(int d, long k);

}  // namespace sphrest
