#include "sphrest/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

#include "sphrest/orthopoly.hpp"
#include "sphrest/oscint.hpp"
#include "sphrest/specialfn.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sphrest {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Adaptive integration of f(w) * (w - wlo)^e * (whi - w)^e over [x0, x1],
// absorbing an endpoint factor into the Gauss-Jacobi weight whenever the
// segment touches that endpoint of the full interval.  An extra exponent
// `elo_extra` rides on the lower endpoint for the w^{-1/2} of the two-fold
// density when the interval starts at w = 0.
class SegmentIntegrator {
  public:
    SegmentIntegrator(std::function<double(double)> f, double wlo, double whi, double e,
                      double elo_extra)
        : f_(std::move(f)), wlo_(wlo), whi_(whi), e_(e), elo_extra_(elo_extra) {}

    double integrate(double x0, double x1, double rel_tol) const {
        double coarse = eval(x0, x1, 16);
        return refine(x0, x1, coarse, rel_tol, 0);
    }

  private:
    double refine(double x0, double x1, double coarse, double rel_tol, int depth) const {
        double fine = eval(x0, x1, 32);
        double err = std::abs(fine - coarse);
        if (err <= std::max(1e-14, rel_tol * std::abs(fine)) || depth >= 40) return fine;
        double mid = 0.5 * (x0 + x1);
        double l = eval(x0, mid, 16);
        double r = eval(mid, x1, 16);
        return refine(x0, mid, l, rel_tol, depth + 1) + refine(mid, x1, r, rel_tol, depth + 1);
    }

    double eval(double x0, double x1, int n) const {
        bool lo_abs = (x0 == wlo_) && (e_ + elo_extra_ != 0.0);
        bool hi_abs = (x1 == whi_) && (e_ != 0.0);
        double a = hi_abs ? e_ : 0.0;                 // (1-t) side maps to x1
        double b = lo_abs ? e_ + elo_extra_ : 0.0;    // (1+t) side maps to x0
        const JacobiRule& rule = cached_rule(n, a, b);
        double half = 0.5 * (x1 - x0);
        double mid = 0.5 * (x0 + x1);
        double scale = std::pow(half, a + b) * half;  // absorbed factors plus jacobian
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            double w = mid + half * rule.nodes[i];
            double g = f_(w);
            if (!lo_abs) g *= std::pow(w - wlo_, e_ + elo_extra_);
            if (!hi_abs) g *= std::pow(whi_ - w, e_);
            sum += rule.weights[i] * g;
        }
        return scale * sum;
    }

    static const JacobiRule& cached_rule(int n, double a, double b) {
        static thread_local std::map<std::tuple<int, double, double>, JacobiRule> cache;
        auto key = std::make_tuple(n, a, b);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, gauss_jacobi(n, a, b)).first;
        return it->second;
    }

    std::function<double(double)> f_;
    double wlo_, whi_, e_, elo_extra_;
};

// One radial convolution step: given the density `prev` of sigma^{(L-1)}
// supported on [0, L-1], the density of sigma^{(L)} at radius r is
//   omega_{d-2} / (2r)^{d-2} *
//     int_{(r-1)^2}^{min((r+1)^2, (L-1)^2)} prev(sqrt(w))
//         [(w - (r-1)^2)((r+1)^2 - w)]^{(d-3)/2} dw
// (substituting w = |r e - nu|^2 in the sphere integral).
double conv_step(int d, const std::function<double(double)>& prev, int prev_fold, double r,
                 bool prev_is_conv2) {
    if (r < 1e-12) {
        // sigma^{(L)}(0) = int sigma^{(L-1)}(|nu|) dsigma(nu)
        return sphere_area(d - 1) * prev(1.0);
    }
    double wlo = (r - 1.0) * (r - 1.0);
    double whi = (r + 1.0) * (r + 1.0);
    double support_sq = static_cast<double>(prev_fold) * prev_fold;
    double wtop = std::min(whi, support_sq);
    if (wlo >= wtop) return 0.0;

    double e = 0.5 * (d - 3);
    double elo_extra = 0.0;
    std::function<double(double)> f;
    if (prev_is_conv2) {
        // substitute the closed form; pull its w^{-1/2} into the endpoint
        // weight when the interval starts exactly at w = 0
        double c = std::pow(2.0, -d + 3) * sphere_area(d - 2);
        if (wlo == 0.0) {
            elo_extra = -0.5;
            f = [c, d](double w) { return c * std::pow(std::max(0.0, 4.0 - w), 0.5 * (d - 3)); };
        } else {
            f = [c, d](double w) {
                return c * std::pow(std::max(0.0, 4.0 - w), 0.5 * (d - 3)) / std::sqrt(w);
            };
        }
    } else {
        f = [&prev](double w) { return prev(std::sqrt(w)); };
    }

    SegmentIntegrator seg(f, wlo, whi, e, elo_extra);
    // split where the previous density has breaks: at the images w = m^2 of
    // its integer kink radii (m = prev_fold covers its support edge)
    std::vector<double> knots = {wlo, wtop};
    for (int m = 1; m <= prev_fold; ++m) {
        double w = static_cast<double>(m) * m;
        if (w > wlo && w < wtop) knots.push_back(w);
    }
    std::sort(knots.begin(), knots.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        total += seg.integrate(knots[i], knots[i + 1], 1e-10);
    }
    return sphere_area(d - 2) / std::pow(2.0 * r, d - 2) * total;
}

}  // namespace

double sigma_hat(int d, double r) {
    if (d < 2) throw std::domain_error("sigma_hat: d must be at least 2");
    if (r < 0.0) throw std::domain_error("sigma_hat: radius must be nonnegative");
    // leading series term; avoids the 0 * inf of the closed form as r -> 0
    if (r < 1e-6) return sphere_area(d - 1) * (1.0 - r * r / (2.0 * d));
    double v = 0.5 * (d - 2);
    return std::pow(2.0 * kPi, 0.5 * d) * std::pow(r, -v) * bessel_j(v, r);
}

double conv2(int d, double r) {
    if (d < 2) throw std::domain_error("conv2: d must be at least 2");
    if (r < 0.0) throw std::domain_error("conv2: radius must be nonnegative");
    if (r > 2.0) return 0.0;
    if (r == 0.0) return kInf;
    double body = 4.0 - r * r;
    double e = 0.5 * (d - 3);
    double pw;
    if (body > 0.0) {
        pw = std::pow(body, e);
    } else {
        pw = e > 0.0 ? 0.0 : (e == 0.0 ? 1.0 : kInf);
    }
    return std::pow(2.0, -d + 3) * sphere_area(d - 2) * pw / r;
}

RadialProfile::RadialProfile(int dim, int fold, std::vector<double> radii, std::vector<double> values,
                             std::vector<double> breakpoints)
    : dim_(dim), fold_(fold), radii_(std::move(radii)), values_(std::move(values)) {
    if (radii_.size() != values_.size() || radii_.size() < 4) {
        throw std::invalid_argument("RadialProfile: need matching radius/value arrays");
    }
    std::size_t n = radii_.size();
    slope_lo_.assign(n - 1, 0.0);
    slope_hi_.assign(n - 1, 0.0);
    if (fold_ == 2) return;  // queries use the closed form

    std::vector<double> h(n - 1), s(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = radii_[i + 1] - radii_[i];
        s[i] = (values_[i + 1] - values_[i]) / h[i];
    }
    auto is_break = [&](std::size_t i) {
        for (double b : breakpoints) {
            if (radii_[i] == b) return true;
        }
        return false;
    };
    // Steffen's monotone slope at an interior smooth node.
    auto centered = [&](std::size_t i) {
        double p = (s[i - 1] * h[i] + s[i] * h[i - 1]) / (h[i - 1] + h[i]);
        double lim = 2.0 * std::min(std::abs(s[i - 1]), std::abs(s[i]));
        if (s[i - 1] * s[i] <= 0.0) return 0.0;
        if (std::abs(p) > lim) return std::copysign(lim, s[i]);
        return p;
    };
    // Second-order one-sided slopes for segment ends (array ends and break nodes).
    auto right_sided = [&](std::size_t i) {  // uses cells i, i+1
        if (i + 1 >= s.size()) return s[i];
        return ((2.0 * h[i] + h[i + 1]) * s[i] - h[i] * s[i + 1]) / (h[i] + h[i + 1]);
    };
    auto left_sided = [&](std::size_t i) {  // slope at node i+1 from cells i, i-1
        if (i == 0) return s[0];
        return ((2.0 * h[i] + h[i - 1]) * s[i] - h[i] * s[i - 1]) / (h[i] + h[i - 1]);
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        slope_lo_[i] = (i == 0 || is_break(i)) ? right_sided(i) : centered(i);
        slope_hi_[i] = (i + 2 == n || is_break(i + 1)) ? left_sided(i) : centered(i + 1);
    }
}

double RadialProfile::operator()(double r) const {
    if (r < 0.0) throw std::domain_error("RadialProfile: radius must be nonnegative");
    if (r > fold_) return 0.0;
    if (fold_ == 2) return conv2(dim_, r);
    auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
    std::size_t i = (it == radii_.begin()) ? 0 : (it - radii_.begin()) - 1;
    if (i + 1 >= radii_.size()) return values_.back();
    double h = radii_[i + 1] - radii_[i];
    double x = (r - radii_[i]) / h;
    double y0 = values_[i], y1 = values_[i + 1];
    double m0 = slope_lo_[i] * h, m1 = slope_hi_[i] * h;
    double x2 = x * x, x3 = x2 * x;
    double herm = (2 * x3 - 3 * x2 + 1) * y0 + (x3 - 2 * x2 + x) * m0 + (-2 * x3 + 3 * x2) * y1 +
                  (x3 - x2) * m1;
    // the one-sided end slopes can undershoot by a few ulp of the local scale
    // where the density vanishes; a density is never negative
    return std::max(0.0, herm);
}

RadialProfile conv_profile(int d, int fold, int grid_size, bool parallel) {
    if (d == 2) {
        throw std::domain_error(
            "conv_profile: the d = 2 recursion is unsupported (endpoint singularities); "
            "only conv2 is available there");
    }
    if (d < 3) throw std::domain_error("conv_profile: d must be at least 3");
    if (fold < 2) throw std::domain_error("conv_profile: fold must be at least 2");
    if (grid_size < 64) throw std::domain_error("conv_profile: grid must have at least 64 nodes");

    // Cosine-clustered nodes over [0, fold], with the interior integer radii
    // (where the density has derivative breaks) inserted exactly along with a
    // geometric cluster around each.
    auto make_grid = [&](int f) {
        std::vector<double> r;
        r.reserve(grid_size + 10 * f);
        for (int i = 0; i < grid_size; ++i) {
            r.push_back(0.5 * f * (1.0 - std::cos(kPi * i / (grid_size - 1.0))));
        }
        for (int m = 1; m < f; ++m) {
            r.push_back(static_cast<double>(m));
            for (double off : {1e-5, 1e-4, 1e-3, 1e-2}) {
                r.push_back(m - off);
                r.push_back(m + off);
            }
        }
        std::sort(r.begin(), r.end());
        std::vector<double> out;
        out.reserve(r.size());
        for (double x : r) {
            if (out.empty() || x - out.back() > 1e-7) out.push_back(x);
        }
        // keep the exact endpoints
        out.front() = 0.0;
        out.back() = static_cast<double>(f);
        return out;
    };
    auto break_list = [](int f) {
        std::vector<double> b;
        for (int m = 1; m < f; ++m) b.push_back(static_cast<double>(m));
        return b;
    };

    if (fold == 2) {
        auto radii = make_grid(2);
        std::vector<double> values(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i) values[i] = conv2(d, radii[i]);
        return RadialProfile(d, 2, std::move(radii), std::move(values));
    }

    std::vector<RadialProfile> levels;
    for (int level = 3; level <= fold; ++level) {
        bool base = (level == 3);
        const RadialProfile* prev = base ? nullptr : &levels.back();
        std::function<double(double)> prev_fn;
        if (base) {
            prev_fn = [d](double s) { return conv2(d, s); };
        } else {
            prev_fn = [prev](double s) { return (*prev)(s); };
        }
        auto radii = make_grid(level);
        std::vector<double> values(radii.size());
        long n = static_cast<long>(radii.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
        for (long i = 0; i < n; ++i) {
            values[i] = std::max(0.0, conv_step(d, prev_fn, level - 1, radii[i], base));
        }
        levels.emplace_back(d, level, std::move(radii), std::move(values), break_list(level));
    }
    return std::move(levels.back());
}

double radial_mass(const RadialProfile& profile) {
    int d = profile.dim();
    double total;
    if (profile.fold() == 2) {
        // integrable 1/r singularity at the origin: absorb r^{d-2} analytically
        SegmentIntegrator seg(
            [&](double r) { return conv2(d, r) * std::pow(r, d - 1); }, 0.0, 2.0, 0.0, 0.0);
        total = seg.integrate(1e-12, 2.0, 1e-10);
        // [0, 1e-12] contributes ~ r^{d-1} * 1/r: below 1e-24 for d >= 3
    } else {
        SegmentIntegrator seg(
            [&](double r) { return profile(r) * std::pow(r, d - 1); }, 0.0, profile.fold(), 0.0, 0.0);
        total = seg.integrate(0.0, profile.fold(), 1e-9);
    }
    return sphere_area(d - 1) * total;
}

double sigma_hat_norm(int d, int k) { return sigma_hat_norm_at(d, k, 64.0 * kPi, 24); }

double sigma_hat_norm_at(int d, int k, double radius, int nodes_per_panel) {
    if (d < 2) throw std::domain_error("sigma_hat_norm: d must be at least 2");
    if (k < 2) throw std::domain_error("sigma_hat_norm: k must be at least 2");
    if (d == 2 && k == 2) {
        throw std::domain_error(
            "sigma_hat_norm: (d, k) = (2, 2) diverges (the integrand decays like 1/r)");
    }
    double v = 0.5 * (d - 2);
    int p = 2 * k;
    double m = (2.0 - d) * k + d - 1.0;  // |sigma_hat|^{2k} r^{d-1} = (2pi)^{dk} J^{2k} r^m

    double R = kPi * std::ceil(radius / kPi);
    double head = panel_integrate(
        [&](double r) { return std::pow(bessel_j(v, r), p) * std::pow(r, m); }, 0.0, R, kPi,
        nodes_per_panel);

    // J^{2k} via the Hankel expansion: harmonics of chi = r - (2v+1) pi/4
    constexpr int kTerms = 12;
    auto z = hankel_z_series(v, kTerms);
    std::vector<std::complex<double>> zc(kTerms);
    for (int t = 0; t < kTerms; ++t) zc[t] = std::conj(z[t]);
    HarmonicPoly re_z = HarmonicPoly::harmonic(1, z, kTerms);
    re_z.add(HarmonicPoly::harmonic(-1, zc, kTerms));
    re_z.scale(0.5);
    HarmonicPoly pw = re_z.pow(p);
    double s0 = k - m;  // (2/(pi r))^k r^m => r^{-(k-m)} prefactor
    double phase0 = -(2.0 * v + 1.0) * kPi / 4.0;
    double tail = std::pow(2.0 / kPi, k) * harmonic_tail(pw, s0, phase0, R);

    double total = std::pow(2.0 * kPi, static_cast<double>(d) * k) * (head + tail);
    return std::pow(sphere_area(d - 1) * total, 1.0 / p);
}

namespace {

const double kQInf = std::numeric_limits<double>::infinity();

void check_constant_triple(int d, int k, double q) {
    if (k == 2) {
        if (d >= 3 && d <= 7) {
            if (!(q >= 2.0))
                throw std::domain_error("sharp_constant: clause (a) requires q >= 2 for k = 2, 3 <= d <= 7");
            return;
        }
        if (d >= 8) {
            if (!(q >= 4.0))
                throw std::domain_error("sharp_constant: clause (b) requires q >= 4 for k = 2, d >= 8");
            return;
        }
        throw std::domain_error("sharp_constant: k = 2 requires d >= 3 (clauses (a)/(b))");
    }
    if (k >= 3) {
        if (d < 2) throw std::domain_error("sharp_constant: clause (c) requires d >= 2");
        if (!(q >= 2.0 * k))
            throw std::domain_error("sharp_constant: clause (c) requires q >= 2k for k >= 3");
        return;
    }
    throw std::domain_error("sharp_constant: k must be at least 2 (p = 2k >= 4)");
}

}  // namespace

SharpConstant sharp_constant(int d, int k, double q) {
    check_constant_triple(d, k, q);
    double inv_q = (q == kQInf) ? 0.0 : 1.0 / q;
    SharpConstant c;
    c.d = d;
    c.k = k;
    c.q = q;
    c.value = std::pow(sphere_area(d - 1), -inv_q) * sigma_hat_norm(d, k);
    c.method = "plancherel-bessel";
    return c;
}

double sharp_constant_d4_closed(int d, double q) {
    if (d < 3) throw std::domain_error("sharp_constant_d4_closed: d must be at least 3");
    double inv_q = (q == kQInf) ? 0.0 : 1.0 / q;
    double bracket = gamma_fn(static_cast<double>(d - 2)) * gamma_fn(0.5 * (d - 2)) /
                     gamma_fn(1.5 * (d - 2));
    return std::pow(sphere_area(d - 1), -inv_q + 0.25) * std::sqrt(sphere_area(d - 2)) *
           std::pow(2.0 * kPi, 0.25 * d) * std::pow(2.0, 0.25 * (d - 3)) * std::pow(bracket, 0.25);
}

}  // namespace sphrest
