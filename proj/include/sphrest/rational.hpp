#pragma once

#include <gmpxx.h>

#include <string>

namespace sphrest {

// Exact arithmetic used by the eigenvalue recursions.  Numerators and
// denominators grow well beyond 64 bits (the seven-dimensional table has
// eleven-factor denominators), so everything runs on GMP.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

// C(n, k) with the convention C(n, k) = 0 for n < k or n < 0.
inline Integer binomial(long n, unsigned long k) {
    if (n < 0 || static_cast<unsigned long>(n) < k) return Integer(0);
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), k);
    return out;
}

double sphere_area(int n);  // defined in specialfn

// A value of the form coeff * omega_n, with coeff an exact rational and
// omega_n the surface measure of the unit n-sphere (omega_0 = 2, omega_1 = 2*pi, ...).
struct ExactScaled {
    Rational coeff;
    int omega_index = 0;

    double value() const { return to_double(coeff) * sphere_area(omega_index); }
    int sign() const { return sgn(coeff); }

    std::string str() const {
        return coeff.get_str() + " * omega_" + std::to_string(omega_index);
    }
};

}  // namespace sphrest
