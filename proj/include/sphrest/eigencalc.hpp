#pragma once

#include <optional>
#include <vector>

#include "sphrest/rational.hpp"

namespace sphrest {

// Base sequences of the eigenvalue recursions, all exact.
//   gamma_k = int (2-2t)^{1/2} P_k'(t) dt  = 2(-1)^{k+1} + 2/(2k+1)
//   delta_k = int (2-2t)^{3/2} P_k''(t) dt = 8(-1)^k C(k+1,2) + 3 gamma_k
//   tau_k   = int C^1_k(t) dt              = 2/(k+1) for even k, 0 for odd k
std::vector<Rational> gamma_seq(long kmax);
std::vector<Rational> delta_seq(long kmax);
std::vector<Rational> tau_seq(long kmax);

// Table of weighted moments m^{(j)}_k = int w(t) C^alpha_{k-offset}(t) t^j dt.
// Row j = 0 is the supplied base sequence; each higher row applies the
// three-term recurrence in the polynomial index, losing one index off the top:
//   with m = k - offset,
//   m^{(j+1)}_k = ((m+1) m^{(j)}_{k+1} + (m+2a-1) m^{(j)}_{k-1}) / (2m+2a),
// and entries below index 0 are zero.
struct MomentTable {
    Rational alpha;
    int offset = 0;
    std::vector<std::vector<Rational>> values;  // values[j][k], row j has base.size()-j entries

    const Rational& at(int j, long k) const { return values.at(j).at(k); }
};

MomentTable moment_lift(std::vector<Rational> base, const Rational& alpha, int offset, int jmax);

// Exact eigenvalues Lambda_k of the zonal kernel
//   phi_d(t) = 2^{(d-2)/2} (1-t)^{1/2} (1+t)^{(d-3)/2}
// acting on spherical harmonics of degree k on S^{d-1}, as coeff * omega_{d-2}.
// Supported for d in {3,...,7}; use lambda_numeric beyond.
std::vector<ExactScaled> lambda_exact(int d, long kmax);

// The per-dimension rational closed forms (d in {4,...,7}).
ExactScaled lambda_closed(int d, long k);

// Gauss-Jacobi evaluation of the defining integral, any d >= 3.  The rule is
// exact for the degree-k polynomial factor once nodes >= ceil(k/2) + 2, which
// is the default (nodes = 0).
double lambda_numeric(int d, long k, int nodes = 0);

enum class Sign { minus = -1, zero = 0, plus = 1 };

struct LambdaRow {
    int d = 0;
    long k = 0;
    std::optional<ExactScaled> exact;
    std::optional<ExactScaled> closed_form;
    double numeric = 0.0;
    Sign sign = Sign::zero;
};

// One row per k <= kmax; exact and closed-form columns populated for the
// dimensions that have them, sign taken from the exact value when available
// and otherwise from the numeric value with a zero band of 1e-12 * omega_{d-2}.
std::vector<LambdaRow> sign_report(int d, long kmax);

}  // namespace sphrest
