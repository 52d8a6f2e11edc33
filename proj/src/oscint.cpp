#include "sphrest/oscint.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "sphrest/orthopoly.hpp"

namespace sphrest {

HarmonicPoly HarmonicPoly::one(int maxt) {
    HarmonicPoly p;
    p.maxt = maxt;
    p.terms[0] = std::vector<std::complex<double>>(maxt, 0.0);
    p.terms[0][0] = 1.0;
    return p;
}

HarmonicPoly HarmonicPoly::harmonic(int j, std::vector<std::complex<double>> coeffs, int maxt) {
    HarmonicPoly p;
    p.maxt = maxt;
    coeffs.resize(maxt, 0.0);
    p.terms[j] = std::move(coeffs);
    return p;
}

HarmonicPoly HarmonicPoly::operator*(const HarmonicPoly& o) const {
    HarmonicPoly out;
    out.maxt = maxt;
    for (const auto& [j1, c1] : terms) {
        for (const auto& [j2, c2] : o.terms) {
            auto& dst = out.terms[j1 + j2];
            if (dst.empty()) dst.assign(maxt, 0.0);
            for (int t1 = 0; t1 < maxt; ++t1) {
                if (c1[t1] == std::complex<double>(0.0)) continue;
                for (int t2 = 0; t1 + t2 < maxt && t2 < (int)c2.size(); ++t2) {
                    dst[t1 + t2] += c1[t1] * c2[t2];
                }
            }
        }
    }
    return out;
}

HarmonicPoly HarmonicPoly::pow(int n) const {
    HarmonicPoly out = one(maxt);
    HarmonicPoly base = *this;
    while (n > 0) {
        if (n & 1) out = out * base;
        base = base * base;
        n >>= 1;
    }
    return out;
}

void HarmonicPoly::add(const HarmonicPoly& o) {
    for (const auto& [j, c] : o.terms) {
        auto& dst = terms[j];
        if (dst.empty()) dst.assign(maxt, 0.0);
        for (int t = 0; t < maxt && t < (int)c.size(); ++t) dst[t] += c[t];
    }
}

void HarmonicPoly::scale(const std::complex<double>& c) {
    for (auto& [j, v] : terms) {
        for (auto& x : v) x *= c;
    }
}

std::complex<double> exp_power_tail(double s, double a, double R) {
    if (a == 0.0) throw std::domain_error("exp_power_tail: zero frequency");
    const std::complex<double> inv_ia = std::complex<double>(0.0, -1.0 / a);  // 1/(i a)
    std::complex<double> boundary = std::exp(std::complex<double>(0.0, a * R));
    std::complex<double> acc(0.0, 0.0);
    double rs = std::pow(R, -s);
    std::complex<double> factor(1.0, 0.0);  // prod (s+u)/(i a), accumulated
    double prev = 1e300;
    for (int t = 0; t < 64; ++t) {
        // term_t = [prod_{u<t} (s+u)/(ia)] * (i/a) * R^{-s-t} * e^{iaR}
        std::complex<double> term = factor * (-inv_ia) * boundary * rs;
        acc += term;
        double mag = std::abs(term);
        if (mag < 1e-18 * (std::abs(acc) + 1e-300)) break;
        if (mag > prev) break;  // asymptotic divergence; stop at the smallest term
        prev = mag;
        factor *= (s + t) * inv_ia;
        rs /= R;
    }
    return acc;
}

double power_tail(double s, double R) {
    if (s <= 1.0) throw std::domain_error("power_tail: divergent, s must exceed 1");
    return std::pow(R, 1.0 - s) / (s - 1.0);
}

double harmonic_tail(const HarmonicPoly& poly, double s0, double phase0, double R) {
    std::complex<double> total(0.0, 0.0);
    for (const auto& [j, coeffs] : poly.terms) {
        std::complex<double> phase = std::exp(std::complex<double>(0.0, j * phase0));
        for (int t = 0; t < (int)coeffs.size(); ++t) {
            if (coeffs[t] == std::complex<double>(0.0)) continue;
            double s = s0 + t;
            std::complex<double> integral =
                (j == 0) ? std::complex<double>(power_tail(s, R), 0.0) : exp_power_tail(s, j, R);
            total += coeffs[t] * phase * integral;
        }
    }
    return total.real();
}

double panel_integrate(const std::function<double(double)>& f, double lo, double hi, double panel,
                       int nodes_per_panel) {
    static thread_local std::map<int, JacobiRule> cache;
    auto it = cache.find(nodes_per_panel);
    if (it == cache.end()) it = cache.emplace(nodes_per_panel, gauss_jacobi(nodes_per_panel, 0.0, 0.0)).first;
    const JacobiRule& rule = it->second;

    double sum = 0.0;
    double x = lo;
    while (x < hi) {
        double x1 = std::min(hi, x + panel);
        double mid = 0.5 * (x + x1);
        double half = 0.5 * (x1 - x);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            sum += half * rule.weights[i] * f(mid + half * rule.nodes[i]);
        }
        x = x1;
    }
    return sum;
}

}  // namespace sphrest
