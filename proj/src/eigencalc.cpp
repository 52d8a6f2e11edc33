#include "sphrest/eigencalc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sphrest/orthopoly.hpp"
#include "sphrest/specialfn.hpp"

namespace sphrest {

namespace {

// The assembled eigenvalue identities consume the lifted moments up to row
// j = 5 and index k + 2, so build bases with this much headroom.
constexpr long kLiftHeadroom = 8;

std::vector<ExactScaled> lambda_exact_d3(long kmax);
std::vector<ExactScaled> lambda_exact_d4(long kmax);
std::vector<ExactScaled> lambda_exact_d5(long kmax);
std::vector<ExactScaled> lambda_exact_d6(long kmax);
std::vector<ExactScaled> lambda_exact_d7(long kmax);

}  // namespace

std::vector<Rational> gamma_seq(long kmax) {
    if (kmax < 0) throw std::domain_error("gamma_seq: kmax must be nonnegative");
    std::vector<Rational> out(kmax + 1);
    for (long k = 0; k <= kmax; ++k) {
        Rational v = rational((k % 2 == 0) ? -2 : 2) + rational(2, 2 * k + 1);
        v.canonicalize();
        out[k] = v;
    }
    return out;
}

std::vector<Rational> delta_seq(long kmax) {
    if (kmax < 0) throw std::domain_error("delta_seq: kmax must be nonnegative");
    std::vector<Rational> gam = gamma_seq(kmax);
    std::vector<Rational> out(kmax + 1);
    for (long k = 0; k <= kmax; ++k) {
        Integer lead = 8 * binomial(k + 1, 2);
        if (k % 2 == 1) lead = -lead;
        Rational v = Rational(lead) + 3 * gam[k];
        v.canonicalize();
        out[k] = v;
    }
    return out;
}

std::vector<Rational> tau_seq(long kmax) {
    if (kmax < 0) throw std::domain_error("tau_seq: kmax must be nonnegative");
    std::vector<Rational> out(kmax + 1);
    for (long k = 0; k <= kmax; ++k) {
        out[k] = (k % 2 == 0) ? rational(2, k + 1) : Rational(0);
    }
    return out;
}

MomentTable moment_lift(std::vector<Rational> base, const Rational& alpha, int offset, int jmax) {
    if (jmax < 0) throw std::domain_error("moment_lift: jmax must be nonnegative");
    if (static_cast<long>(base.size()) <= jmax) {
        throw std::out_of_range("moment_lift: base has " + std::to_string(base.size()) +
                                " entries but lifting to j=" + std::to_string(jmax) + " needs at least " +
                                std::to_string(jmax + 1));
    }
    MomentTable table;
    table.alpha = alpha;
    table.offset = offset;
    table.values.resize(jmax + 1);
    table.values[0] = std::move(base);
    for (int j = 0; j < jmax; ++j) {
        const auto& cur = table.values[j];
        long n = static_cast<long>(cur.size()) - 1;
        std::vector<Rational> next(n);
        for (long k = 0; k < n; ++k) {
            Rational m = k - offset;  // polynomial index behind entry k
            Rational lo = (k >= 1) ? cur[k - 1] : Rational(0);
            Rational v = ((m + 1) * cur[k + 1] + (m + 2 * alpha - 1) * lo) / (2 * m + 2 * alpha);
            v.canonicalize();
            next[k] = v;
        }
        table.values[j + 1] = std::move(next);
    }
    return table;
}

namespace {

// d = 3.  Lambda_k = omega_1 int (2-2t)^{1/2} P_k(t) dt; expand P_k through
// (2k+1) P_k = P'_{k+1} - P'_{k-1} so the gamma sequence covers it.
std::vector<ExactScaled> lambda_exact_d3(long kmax) {
    auto gam = gamma_seq(kmax + 1);
    std::vector<ExactScaled> out(kmax + 1);
    for (long k = 0; k <= kmax; ++k) {
        Rational lo = (k >= 1) ? gam[k - 1] : Rational(0);
        Rational c = (gam[k + 1] - lo) / (2 * k + 1);
        c.canonicalize();
        out[k] = ExactScaled{c, 1};
    }
    return out;
}

// d = 4.  2(k+1)/omega_2 Lambda_k = 2 tau_k - tau_{k-2} - tau_{k+2} for k >= 2;
// the first two values do not follow from that relation: Lambda_0 integrates
// directly to (8/3) omega_2 and Lambda_1 vanishes by odd symmetry.
std::vector<ExactScaled> lambda_exact_d4(long kmax) {
    auto tau = tau_seq(kmax + 2);
    std::vector<ExactScaled> out(kmax + 1);
    for (long k = 0; k <= kmax; ++k) {
        Rational c;
        if (k == 0) {
            c = rational(8, 3);
        } else if (k == 1) {
            c = Rational(0);
        } else {
            c = (2 * tau[k] - tau[k - 2] - tau[k + 2]) / (2 * (k + 1));
        }
        c.canonicalize();
        out[k] = ExactScaled{c, 2};
    }
    return out;
}

// d = 5.  C(k+2,2)/(2 omega_3) Lambda_k =
//   g^{(0)}_{k+1} + g^{(1)}_{k+1} - g^{(2)}_{k+1} - g^{(3)}_{k+1},
// g^{(j)}_k = int (2-2t)^{1/2} P_k'(t) t^j dt lifted from the gamma sequence
// with alpha = 3/2 and offset 1 (P_k' = C^{3/2}_{k-1}).
std::vector<ExactScaled> lambda_exact_d5(long kmax) {
    auto table = moment_lift(gamma_seq(kmax + kLiftHeadroom), rational(3, 2), 1, 3);
    std::vector<ExactScaled> out(kmax + 1);
    for (long k = 0; k <= kmax; ++k) {
        Rational s = table.at(0, k + 1) + table.at(1, k + 1) - table.at(2, k + 1) - table.at(3, k + 1);
        Rational c = 2 * s / Rational(binomial(k + 2, 2));
        c.canonicalize();
        out[k] = ExactScaled{c, 3};
    }
    return out;
}

// d = 6.  C(k+3,3)/(4 omega_4) Lambda_k =
//   e^{(0)}_k + e^{(1)}_k - 2 e^{(2)}_k - 2 e^{(3)}_k + e^{(4)}_k + e^{(5)}_k,
// e^{(j)}_k = int C^2_k(t) t^j dt with base e^{(0)}_{2l} = 2(l+1), odd zero.
std::vector<ExactScaled> lambda_exact_d6(long kmax) {
    std::vector<Rational> base(kmax + kLiftHeadroom + 1);
    for (long k = 0; k < static_cast<long>(base.size()); ++k) {
        base[k] = (k % 2 == 0) ? Rational(k + 2) : Rational(0);
    }
    auto table = moment_lift(std::move(base), Rational(2), 0, 5);
    std::vector<ExactScaled> out(kmax + 1);
    for (long k = 0; k <= kmax; ++k) {
        Rational s = table.at(0, k) + table.at(1, k) - 2 * table.at(2, k) - 2 * table.at(3, k) +
                     table.at(4, k) + table.at(5, k);
        Rational c = 4 * s / Rational(binomial(k + 3, 3));
        c.canonicalize();
        out[k] = ExactScaled{c, 4};
    }
    return out;
}

// d = 7.  3 C(k+4,4)/(2 omega_5) Lambda_k =
//   d^{(0)}_{k+2} + 3 d^{(1)}_{k+2} + 2 d^{(2)}_{k+2} - 2 d^{(3)}_{k+2}
//   - 3 d^{(4)}_{k+2} - d^{(5)}_{k+2},
// d^{(j)}_k = int (2-2t)^{3/2} P_k''(t) t^j dt lifted from the delta sequence
// with alpha = 5/2 and offset 2 (P_k'' = 3 C^{5/2}_{k-2}).
std::vector<ExactScaled> lambda_exact_d7(long kmax) {
    auto table = moment_lift(delta_seq(kmax + kLiftHeadroom + 2), rational(5, 2), 2, 5);
    std::vector<ExactScaled> out(kmax + 1);
    for (long k = 0; k <= kmax; ++k) {
        Rational s = table.at(0, k + 2) + 3 * table.at(1, k + 2) + 2 * table.at(2, k + 2) -
                     2 * table.at(3, k + 2) - 3 * table.at(4, k + 2) - table.at(5, k + 2);
        Rational c = 2 * s / (3 * Rational(binomial(k + 4, 4)));
        c.canonicalize();
        out[k] = ExactScaled{c, 5};
    }
    return out;
}

}  // namespace

std::vector<ExactScaled> lambda_exact(int d, long kmax) {
    if (kmax < 0) throw std::domain_error("lambda_exact: kmax must be nonnegative");
    switch (d) {
        case 3: return lambda_exact_d3(kmax);
        case 4: return lambda_exact_d4(kmax);
        case 5: return lambda_exact_d5(kmax);
        case 6: return lambda_exact_d6(kmax);
        case 7: return lambda_exact_d7(kmax);
        default:
            throw std::domain_error("lambda_exact: exact tables cover d in {3,...,7}; use lambda_numeric");
    }
}

ExactScaled lambda_closed(int d, long k) {
    if (k < 0) throw std::domain_error("lambda_closed: k must be nonnegative");
    Rational c;
    switch (d) {
        case 4: {
            if (k == 0) {
                c = rational(8, 3);
            } else if (k % 2 == 1) {
                c = Rational(0);
            } else {
                long j = k / 2;
                c = (rational(4, 2 * j + 1) - rational(2, 2 * j - 1) - rational(2, 2 * j + 3)) /
                    (2 * (2 * j + 1));
            }
            c.canonicalize();
            return ExactScaled{c, 2};
        }
        case 5: {
            Rational num = Rational(768) * (k + 1) * (k + 2) * Rational(3 - 3 * k - k * k);
            Rational den(1);
            for (long f = 2 * k - 3; f <= 2 * k + 9; f += 2) den *= f;
            c = 2 * num / (den * Rational(binomial(k + 2, 2)));
            c.canonicalize();
            return ExactScaled{c, 3};
        }
        case 6: {
            Rational frac;
            if (k % 2 == 0) {
                frac = Rational(-8 * (k + 2)) /
                       Rational((k - 1) * (k + 1) * (k + 3) * (k + 5));
            } else {
                frac = Rational(-8 * (k + 1) * (k + 3)) /
                       Rational(k * (k - 2) * (k + 2) * (k + 4) * (k + 6));
            }
            c = 4 * frac / Rational(binomial(k + 3, 3));
            c.canonicalize();
            return ExactScaled{c, 4};
        }
        case 7: {
            Rational num = Rational(245760) * (k + 1) * (k + 2) * (k + 3) * (k + 4) *
                           Rational(15 - 5 * k - k * k) * Rational(-3 + 5 * k + k * k);
            Rational den(1);
            for (long f = 2 * k - 5; f <= 2 * k + 15; f += 2) den *= f;
            c = 2 * num / (3 * den * Rational(binomial(k + 4, 4)));
            c.canonicalize();
            return ExactScaled{c, 5};
        }
        default:
            throw std::domain_error("lambda_closed: closed forms cover d in {4,...,7}");
    }
}

double lambda_numeric(int d, long k, int nodes) {
    if (d < 3) throw std::domain_error("lambda_numeric: d must be at least 3");
    if (k < 0) throw std::domain_error("lambda_numeric: k must be nonnegative");
    // Full weight of the integrand: phi_d(t) (1-t^2)^{(d-3)/2}
    //   = 2^{(d-2)/2} (1-t)^{(d-2)/2} (1+t)^{d-3},
    // so a Gauss-Jacobi rule with these exponents integrates the remaining
    // degree-k polynomial factor exactly.
    double alpha = 0.5 * (d - 2);
    int n = nodes > 0 ? nodes : static_cast<int>((k + 1) / 2 + 2);
    auto rule = gauss_jacobi(n, alpha, static_cast<double>(d - 3));
    double ck1 = gegenbauer_one(GegenbauerParam{d - 2}, k).get_d();
    double integral = rule.integrate([&](double t) { return gegenbauer_eval(alpha, k, t) / ck1; });
    return sphere_area(d - 2) * std::pow(2.0, alpha) * integral;
}

std::vector<LambdaRow> sign_report(int d, long kmax) {
    if (d < 3) throw std::domain_error("sign_report: d must be at least 3");
    if (kmax < 2) throw std::domain_error("sign_report: kmax must be at least 2");
    std::vector<LambdaRow> rows(kmax + 1);
    std::vector<ExactScaled> exact;
    if (d <= 7) exact = lambda_exact(d, kmax);
    double zero_band = 1e-12 * sphere_area(d - 2);
    for (long k = 0; k <= kmax; ++k) {
        LambdaRow& row = rows[k];
        row.d = d;
        row.k = k;
        row.numeric = lambda_numeric(d, k);
        if (d <= 7) {
            row.exact = exact[k];
            if (d >= 4) row.closed_form = lambda_closed(d, k);
            int s = exact[k].sign();
            row.sign = s > 0 ? Sign::plus : (s < 0 ? Sign::minus : Sign::zero);
        } else {
            row.sign = (std::abs(row.numeric) <= zero_band)
                           ? Sign::zero
                           : (row.numeric > 0 ? Sign::plus : Sign::minus);
        }
    }
    return rows;
}

}  // namespace sphrest
