#include "sphrest/spherequad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sphrest/measures.hpp"
#include "sphrest/orthopoly.hpp"
#include "sphrest/oscint.hpp"
#include "sphrest/specialfn.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sphrest {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kQInf = std::numeric_limits<double>::infinity();
}  // namespace

double SplitMix64::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * kPi * u2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t chunk) {
    SplitMix64 mix(seed ^ (0xd1342543de82ef95ULL * (chunk + 1)));
    return mix.next();
}

std::vector<SpherePoint> sample_sphere(int d, long n, std::uint64_t seed, bool parallel) {
    if (d < 2) throw std::domain_error("sample_sphere: d must be at least 2");
    if (n < 0) throw std::domain_error("sample_sphere: n must be nonnegative");
    std::vector<SpherePoint> out(n);
    long nchunks = (n + kChunkSize - 1) / kChunkSize;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long c = 0; c < nchunks; ++c) {
        SplitMix64 rng(derive_seed(seed, c));
        long hi = std::min(n, (c + 1) * kChunkSize);
        for (long i = c * kChunkSize; i < hi; ++i) {
            auto& p = out[i].coords;
            p.resize(d);
            double norm = 0.0;
            do {
                norm = 0.0;
                for (int j = 0; j < d; ++j) {
                    p[j] = rng.gaussian();
                    norm += p[j] * p[j];
                }
                norm = std::sqrt(norm);
            } while (norm < 1e-8);
            for (int j = 0; j < d; ++j) p[j] /= norm;
        }
    }
    return out;
}

double zonal_integral(int d, const std::function<double(double)>& g, int nodes) {
    if (d < 2) throw std::domain_error("zonal_integral: d must be at least 2");
    auto rule = gauss_jacobi(nodes, 0.5 * (d - 3), 0.5 * (d - 3));
    return sphere_area(d - 2) * rule.integrate(g);
}

// ---------------------------------------------------------------------------
// TrialFunction

TrialFunction TrialFunction::constant(std::complex<double> c) {
    TrialFunction f;
    f.kind_ = Kind::constant;
    f.c_ = c;
    return f;
}

TrialFunction TrialFunction::plane_wave(double xi_norm, std::complex<double> scale) {
    TrialFunction f;
    f.kind_ = Kind::plane_wave;
    f.xi_norm_ = xi_norm;
    f.c_ = scale;
    return f;
}

TrialFunction TrialFunction::harmonic_perturbation(double eps, int degree) {
    if (degree < 1) throw std::domain_error("harmonic_perturbation: degree must be positive");
    TrialFunction f;
    f.kind_ = Kind::harmonic_perturbation;
    f.eps_ = eps;
    f.degree_ = degree;
    return f;
}

TrialFunction TrialFunction::tabulated(std::function<double(double)> profile) {
    TrialFunction f;
    f.kind_ = Kind::tabulated;
    f.profile_ = std::move(profile);
    return f;
}

std::complex<double> TrialFunction::value(int d, double u) const {
    switch (kind_) {
        case Kind::constant: return c_;
        case Kind::plane_wave: return c_ * std::exp(std::complex<double>(0.0, xi_norm_ * u));
        case Kind::harmonic_perturbation: {
            double chat = gegenbauer_eval(0.5 * (d - 2), degree_, u) /
                          gegenbauer_one(GegenbauerParam{d - 2}, degree_).get_d();
            return 1.0 + eps_ * chat;
        }
        case Kind::tabulated: return profile_(u);
    }
    return 0.0;
}

bool TrialFunction::is_real(int d) const {
    switch (kind_) {
        case Kind::constant: return c_.imag() == 0.0;
        case Kind::plane_wave: return xi_norm_ == 0.0 && c_.imag() == 0.0;
        default: return true;
    }
    (void)d;
}

TrialFunction TrialFunction::abs(int d) const {
    if (kind_ == Kind::plane_wave) return constant(std::abs(c_));
    if (kind_ == Kind::constant) return constant(std::abs(c_));
    TrialFunction self = *this;
    return tabulated([self, d](double u) { return std::abs(self.value(d, u)); });
}

TrialFunction TrialFunction::symmetrized(int d) const {
    if (!is_real(d)) throw std::domain_error("symmetrized: profile must be real");
    TrialFunction self = *this;
    return tabulated([self, d](double u) {
        double a = self.value(d, u).real();
        double b = self.value(d, -u).real();
        return std::sqrt(0.5 * (a * a + b * b));
    });
}

TrialFunction TrialFunction::squared(int d) const {
    if (!is_real(d)) throw std::domain_error("squared: profile must be real");
    TrialFunction self = *this;
    return tabulated([self, d](double u) {
        double a = self.value(d, u).real();
        return a * a;
    });
}

// ---------------------------------------------------------------------------
// Zonal expansions

namespace {

// Chat_k(c) = C^{(d-2)/2}_k(c) / C^{(d-2)/2}_k(1) for k = 0..kmax
std::vector<double> chat_values(int d, int kmax, double c) {
    std::vector<double> out(kmax + 1);
    double alpha = 0.5 * (d - 2);
    double cm1 = 0.0, cur = 1.0;
    for (int k = 0; k <= kmax; ++k) {
        out[k] = cur / gegenbauer_one(GegenbauerParam{d - 2}, k).get_d();
        double next = (k == 0) ? 2.0 * alpha * c
                               : ((2.0 * k + 2.0 * alpha) * c * cur - (k + 2.0 * alpha - 1.0) * cm1) /
                                     (k + 1.0);
        cm1 = cur;
        cur = next;
    }
    return out;
}

std::vector<std::complex<double>> project_zonal(const TrialFunction& f, int d, int kmax) {
    double e = 0.5 * (d - 3);
    auto rule = gauss_jacobi(kmax + 48, e, e);
    std::size_t n = rule.nodes.size();
    std::vector<std::vector<double>> chat(n);
    for (std::size_t i = 0; i < n; ++i) chat[i] = chat_values(d, kmax, rule.nodes[i]);
    std::vector<std::complex<double>> num(kmax + 1, 0.0);
    std::vector<double> den(kmax + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> g = f.value(d, rule.nodes[i]);
        for (int k = 0; k <= kmax; ++k) {
            num[k] += rule.weights[i] * g * chat[i][k];
            den[k] += rule.weights[i] * chat[i][k] * chat[i][k];
        }
    }
    for (int k = 0; k <= kmax; ++k) num[k] /= den[k];
    return num;
}

}  // namespace

std::vector<std::complex<double>> zonal_coefficients(const TrialFunction& f, int d) {
    if (d < 3) throw std::domain_error("zonal_coefficients: d must be at least 3");
    switch (f.kind()) {
        case TrialFunction::Kind::constant:
            return {f.value(d, 0.0)};
        case TrialFunction::Kind::harmonic_perturbation: {
            std::vector<std::complex<double>> a(f.degree() + 1, 0.0);
            a[0] = 1.0;
            a[f.degree()] = f.eps();
            return a;
        }
        case TrialFunction::Kind::plane_wave: {
            int kmax = 12 + static_cast<int>(std::ceil(2.0 * f.xi_norm()));
            for (;;) {
                auto a = project_zonal(f, d, kmax);
                double top = 0.0, tail = 0.0;
                for (const auto& c : a) top = std::max(top, std::abs(c));
                for (int k = kmax - 2; k <= kmax; ++k) tail = std::max(tail, std::abs(a[k]));
                if (tail <= 1e-13 * top || kmax >= 96) return a;
                kmax += 12;
            }
        }
        case TrialFunction::Kind::tabulated: {
            int kmax = 24;
            for (;;) {
                auto a = project_zonal(f, d, kmax);
                double top = 0.0, tail = 0.0;
                for (const auto& c : a) top = std::max(top, std::abs(c));
                for (int k = kmax - 3; k <= kmax; ++k) tail = std::max(tail, std::abs(a[k]));
                if (tail <= 1e-12 * top) return a;
                if (kmax >= 120) {
                    if (tail <= 1e-9 * top) return a;
                    throw std::runtime_error(
                        "zonal_coefficients: expansion of the tabulated profile has not "
                        "converged by degree 120 (profile too rough?)");
                }
                kmax *= 2;
            }
        }
    }
    throw std::logic_error("zonal_coefficients: unreachable");
}

double zonal_norm_sq(int d, int k) {
    auto rule = gauss_jacobi(k + 8, 0.5 * (d - 3), 0.5 * (d - 3));
    double alpha = 0.5 * (d - 2);
    double one = gegenbauer_one(GegenbauerParam{d - 2}, k).get_d();
    double integral = rule.integrate([&](double t) {
        double v = gegenbauer_eval(alpha, k, t) / one;
        return v * v;
    });
    return sphere_area(d - 2) * integral;
}

double zonal_lq_norm(const TrialFunction& f, int d, double q) {
    if (q == kQInf) {
        double best = 0.0;
        for (int i = 0; i <= 8192; ++i) {
            double u = -1.0 + 2.0 * i / 8192.0;
            best = std::max(best, std::abs(f.value(d, u)));
        }
        return best;
    }
    if (!(q > 0.0)) throw std::domain_error("zonal_lq_norm: q must be positive");
    double integral = zonal_integral(
        d, [&](double u) { return std::pow(std::abs(f.value(d, u)), q); }, 512);
    return std::pow(integral, 1.0 / q);
}

// ---------------------------------------------------------------------------
// Extension transform and norms

std::complex<double> extension_transform(const TrialFunction& f, int d, double r, double theta) {
    if (d < 3) throw std::domain_error("extension_transform: d must be at least 3");
    double rc = r * std::cos(theta);
    double rs = std::abs(r * std::sin(theta));
    double e = 0.5 * (d - 3);
    std::complex<double> prev(0.0, 0.0);
    for (int n = 64 + static_cast<int>(r); n <= 4096; n *= 2) {
        auto rule = gauss_jacobi(n, e, e);
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            double u = rule.nodes[i];
            std::complex<double> ph = std::exp(std::complex<double>(0.0, -rc * u));
            acc += rule.weights[i] * f.value(d, u) * ph *
                   sigma_hat(d - 1, rs * std::sqrt(std::max(0.0, 1.0 - u * u)));
        }
        if (std::abs(acc - prev) < 1e-9 && n > 64 + static_cast<int>(r)) return acc;
        prev = acc;
    }
    return prev;
}

namespace {

// Synthesized transform: F(r, c) = (2 pi)^{d/2} r^{(2-d)/2} G(r, c) with
//   G = sum_k a_k (-i)^k J_{v+k}(r) Chat_k(c).
struct ZonalSpectral {
    int d = 0;
    double v = 0.0;
    std::vector<std::complex<double>> a;

    int kmax() const { return static_cast<int>(a.size()) - 1; }

    std::complex<double> reduced(const std::vector<double>& J, const std::vector<double>& chat) const {
        std::complex<double> s(0.0, 0.0);
        for (int k = 0; k <= kmax(); ++k) {
            std::complex<double> term = a[k] * J[k] * chat[k];
            switch (k & 3) {
                case 0: s += term; break;
                case 1: s += std::complex<double>(term.imag(), -term.real()); break;  // * -i
                case 2: s -= term; break;
                default: s += std::complex<double>(-term.imag(), term.real()); break;  // * i
            }
        }
        return s;
    }

    // Large-r expansion G ~ sqrt(2/(pi r)) (1/2) (e^{i chi_v} A + e^{-i chi_v} B)
    // with A = sum_k a_k Chat_k (-1)^k Z_{v+k},  B = sum_k a_k Chat_k conj(Z_{v+k}).
    void asym(const std::vector<double>& chat, int nterms, std::vector<std::complex<double>>& A,
              std::vector<std::complex<double>>& B) const {
        A.assign(nterms, 0.0);
        B.assign(nterms, 0.0);
        for (int k = 0; k <= kmax(); ++k) {
            auto z = hankel_z_series(v + k, nterms);
            std::complex<double> ca = a[k] * chat[k] * ((k % 2 == 0) ? 1.0 : -1.0);
            std::complex<double> cb = a[k] * chat[k];
            for (int t = 0; t < nterms; ++t) {
                A[t] += ca * z[t];
                B[t] += cb * std::conj(z[t]);
            }
        }
    }
};

}  // namespace

std::complex<double> extension_transform_spectral(const TrialFunction& f, int d, double r,
                                                  double theta) {
    if (d < 3) throw std::domain_error("extension_transform_spectral: d must be at least 3");
    ZonalSpectral zs;
    zs.d = d;
    zs.v = 0.5 * (d - 2);
    zs.a = zonal_coefficients(f, d);
    if (r == 0.0) return zs.a[0] * sphere_area(d - 1);  // transform at the origin is the mean
    auto J = bessel_j_seq(zs.v, zs.kmax(), r);
    auto chat = chat_values(d, zs.kmax(), std::cos(theta));
    return std::pow(2.0 * kPi, 0.5 * d) * std::pow(r, -zs.v) * zs.reduced(J, chat);
}

double extension_product_integral(int d,
                                  const std::vector<std::pair<const TrialFunction*, int>>& factors) {
    if (d < 3) throw std::domain_error("extension_product_integral: d must be at least 3");
    if (factors.empty()) throw std::domain_error("extension_product_integral: no factors");
    double v = 0.5 * (d - 2);
    int P = 0;
    std::vector<ZonalSpectral> fs;
    int kmax_all = 0;
    for (auto& [f, p] : factors) {
        if (p < 2 || p % 2 != 0)
            throw std::domain_error("extension_product_integral: powers must be even and >= 2");
        ZonalSpectral zs;
        zs.d = d;
        zs.v = v;
        zs.a = zonal_coefficients(*f, d);
        kmax_all = std::max(kmax_all, zs.kmax());
        fs.push_back(std::move(zs));
        P += p;
    }
    double mu_max = v + kmax_all;
    double R = kPi * std::ceil(std::max(64.0 * kPi, 1.25 * mu_max * mu_max + 40.0) / kPi);

    // theta quadrature: 64 Gauss-Jacobi nodes in c = cos(theta)
    const int kThetaNodes = 64;
    auto theta_rule = gauss_jacobi(kThetaNodes, 0.5 * (d - 3), 0.5 * (d - 3));
    std::vector<std::vector<double>> chat(kThetaNodes);
    for (int i = 0; i < kThetaNodes; ++i) chat[i] = chat_values(d, kmax_all, theta_rule.nodes[i]);

    double rad_exp = 0.5 * (2.0 - d) * P + (d - 1.0);

    // radial head: Gauss panels; one Bessel sequence per radius serves all angles
    int nodes_per_panel = 16 + 4 * P;
    auto panel_rule = gauss_jacobi(nodes_per_panel, 0.0, 0.0);
    long npanels = static_cast<long>(std::llround(R / kPi));
    std::vector<double> panel_sums(npanels, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long pn = 0; pn < npanels; ++pn) {
        double lo = pn * kPi;
        double sum = 0.0;
        for (int g = 0; g < nodes_per_panel; ++g) {
            double r = lo + 0.5 * kPi * (1.0 + panel_rule.nodes[g]);
            auto J = bessel_j_seq(v, kmax_all, r);
            // truncate each factor's sequence view implicitly via kmax()
            double inner = 0.0;
            for (int i = 0; i < kThetaNodes; ++i) {
                double prod = 1.0;
                for (std::size_t fi = 0; fi < fs.size(); ++fi) {
                    std::complex<double> G = fs[fi].reduced(J, chat[i]);
                    double g2 = std::norm(G);
                    int half = factors[fi].second / 2;
                    double acc = 1.0;
                    for (int t = 0; t < half; ++t) acc *= g2;
                    prod *= acc;
                }
                inner += theta_rule.weights[i] * prod;
            }
            sum += 0.5 * kPi * panel_rule.weights[g] * std::pow(r, rad_exp) * inner;
        }
        panel_sums[pn] = sum;
    }
    double head = 0.0;
    for (double s : panel_sums) head += s;

    // radial tail: per angle, expand the product of transforms in harmonics of
    // chi = r - (2v+1) pi/4 and integrate each power/frequency term exactly
    constexpr int kTerms = 12;
    double s0 = (d - 1.0) * (0.5 * P - 1.0);
    double phase0 = -(2.0 * v + 1.0) * kPi / 4.0;
    double tail = 0.0;
    for (int i = 0; i < kThetaNodes; ++i) {
        HarmonicPoly total = HarmonicPoly::one(kTerms);
        for (std::size_t fi = 0; fi < fs.size(); ++fi) {
            std::vector<std::complex<double>> A, B;
            fs[fi].asym(chat[i], kTerms, A, B);
            std::vector<std::complex<double>> Ac(kTerms), Bc(kTerms);
            for (int t = 0; t < kTerms; ++t) {
                Ac[t] = std::conj(A[t]);
                Bc[t] = std::conj(B[t]);
            }
            HarmonicPoly g = HarmonicPoly::harmonic(1, A, kTerms);
            g.add(HarmonicPoly::harmonic(-1, B, kTerms));
            g.scale(0.5);
            HarmonicPoly gc = HarmonicPoly::harmonic(-1, Ac, kTerms);
            gc.add(HarmonicPoly::harmonic(1, Bc, kTerms));
            gc.scale(0.5);
            total = total * (g * gc).pow(factors[fi].second / 2);
        }
        tail += theta_rule.weights[i] * harmonic_tail(total, s0, phase0, R);
    }
    tail *= std::pow(2.0 / kPi, 0.5 * P);

    return sphere_area(d - 2) * std::pow(2.0 * kPi, 0.5 * d * P) * (head + tail);
}

double extension_norm(const TrialFunction& f, int d, int p) {
    if (p < 4 || p % 2 != 0) {
        throw std::domain_error("extension_norm: p must be an even integer >= 4");
    }
    double integral = extension_product_integral(d, {{&f, p}});
    return std::pow(integral, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Constrained quadruples

void draw_quadruple(SplitMix64& rng, int d, double* out) {
    double z1[16], z2[16], w[16], vsum[16];
    auto draw_unit = [&](double* p) {
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
    double nv;
    for (;;) {
        draw_unit(z1);
        draw_unit(z2);
        nv = 0.0;
        for (int j = 0; j < d; ++j) {
            vsum[j] = -(z1[j] + z2[j]);
            nv += vsum[j] * vsum[j];
        }
        nv = std::sqrt(nv);
        if (nv > 1e-12 && nv < 2.0 - 1e-12) break;
    }
    // unit w orthogonal to the closing vector
    double wn;
    do {
        for (int j = 0; j < d; ++j) w[j] = rng.gaussian();
        double proj = 0.0;
        for (int j = 0; j < d; ++j) proj += w[j] * vsum[j];
        proj /= nv * nv;
        wn = 0.0;
        for (int j = 0; j < d; ++j) {
            w[j] -= proj * vsum[j];
            wn += w[j] * w[j];
        }
        wn = std::sqrt(wn);
    } while (wn < 1e-8);
    double h = std::sqrt(std::max(0.0, 1.0 - 0.25 * nv * nv));
    for (int j = 0; j < d; ++j) {
        out[j] = z1[j];
        out[d + j] = z2[j];
        out[2 * d + j] = 0.5 * vsum[j] + h * w[j] / wn;
        out[3 * d + j] = vsum[j] - out[2 * d + j];
    }
}

QuadrupleBatch quadruple_sampler(int d, long n, std::uint64_t seed, bool parallel) {
    if (d < 2) throw std::domain_error("quadruple_sampler: d must be at least 2");
    if (d > 16) throw std::domain_error("quadruple_sampler: d above 16 is not supported");
    if (n < 0) throw std::domain_error("quadruple_sampler: n must be nonnegative");
    QuadrupleBatch batch;
    batch.d = d;
    batch.n = n;
    batch.pts.resize(static_cast<std::size_t>(n) * 4 * d);
    long nchunks = (n + kChunkSize - 1) / kChunkSize;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long c = 0; c < nchunks; ++c) {
        SplitMix64 rng(derive_seed(seed, c));
        long hi = std::min(n, (c + 1) * kChunkSize);
        for (long row = c * kChunkSize; row < hi; ++row) {
            draw_quadruple(rng, d, batch.pts.data() + ((row * 4) * d));
        }
    }
    return batch;
}

}  // namespace sphrest
