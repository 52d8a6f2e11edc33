#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "sphrest/rng.hpp"

namespace sphrest {

struct SpherePoint {
    std::vector<double> coords;

    double dot(const SpherePoint& o) const {
        double s = 0.0;
        for (std::size_t i = 0; i < coords.size(); ++i) s += coords[i] * o.coords[i];
        return s;
    }
};

// n i.i.d. uniform points on S^{d-1} (normalized Gaussians), deterministic
// from the seed and independent of the worker count.
std::vector<SpherePoint> sample_sphere(int d, long n, std::uint64_t seed, bool parallel = true);

// Zonal reduction of a sphere integral:
//   int_{S^{d-1}} g(zeta . e) dsigma = omega_{d-2} int_{-1}^{1} g(u) (1-u^2)^{(d-3)/2} du,
// by Gauss-Jacobi; exact for polynomial g of degree <= 2 nodes - 1.
double zonal_integral(int d, const std::function<double(double)>& g, int nodes);

// Zonal trial densities on S^{d-1}, all about a fixed axis e:
//   constant c; plane wave e^{i xi . zeta} with xi = xi_norm * e;
//   1 + eps * normalized degree-k zonal harmonic; or a tabulated profile g(u).
class TrialFunction {
  public:
    enum class Kind { constant, plane_wave, harmonic_perturbation, tabulated };

    static TrialFunction constant(std::complex<double> c);
    static TrialFunction plane_wave(double xi_norm, std::complex<double> scale = 1.0);
    static TrialFunction harmonic_perturbation(double eps, int degree);
    static TrialFunction tabulated(std::function<double(double)> profile);

    Kind kind() const { return kind_; }
    double xi_norm() const { return xi_norm_; }
    double eps() const { return eps_; }
    int degree() const { return degree_; }

    // profile value g(u) at u = zeta . e (the harmonic kind depends on d
    // through the normalization of the zonal harmonic)
    std::complex<double> value(int d, double u) const;
    bool is_real(int d) const;

    // pointwise |f|, as a trial function
    TrialFunction abs(int d) const;
    // antipodal symmetrization sqrt((g(u)^2 + g(-u)^2)/2) of a real profile
    TrialFunction symmetrized(int d) const;
    // pointwise square of a real profile
    TrialFunction squared(int d) const;

  private:
    Kind kind_ = Kind::constant;
    std::complex<double> c_ = 1.0;
    double xi_norm_ = 0.0;
    double eps_ = 0.0;
    int degree_ = 0;
    std::function<double(double)> profile_;
};

// Coefficients a_k of the zonal-harmonic expansion
//   g(u) = sum_k a_k C^{(d-2)/2}_k(u) / C^{(d-2)/2}_k(1),
// truncated when the tail is negligible.
std::vector<std::complex<double>> zonal_coefficients(const TrialFunction& f, int d);

// || Y_k ||^2_{L^2(S^{d-1})} of the normalized zonal harmonic of degree k.
double zonal_norm_sq(int d, int k);

// L^q(S^{d-1}) norm of a zonal trial function; q may be infinity.
double zonal_lq_norm(const TrialFunction& f, int d, double q);

// Extension (adjoint restriction) transform of a zonal f at
// xi = r (cos(theta) e + sin(theta) e_perp), computed from the
// one-dimensional reduction against sigma_hat of the equatorial sphere.
std::complex<double> extension_transform(const TrialFunction& f, int d, double r, double theta);

// Same transform through the zonal-harmonic Bessel representation; fast and
// usable at large radii where the direct reduction oscillates.
std::complex<double> extension_transform_spectral(const TrialFunction& f, int d, double r,
                                                  double theta);

// || \hat{f sigma} ||_{L^p(R^d)} for zonal f and even p >= 4.  The transform
// is synthesized from the zonal-harmonic Bessel representation
//   \hat{f sigma}(xi) = (2 pi)^{d/2} r^{(2-d)/2}
//        sum_k a_k (-i)^k J_{(d-2)/2+k}(r) Chat_k(cos theta),
// integrated by Gauss rules in angle and radius with the radial tail summed
// from the Hankel expansion.
double extension_norm(const TrialFunction& f, int d, int p);

// int_{R^d} |F_1|^{p_1} |F_2|^{p_2} ... dx for extension transforms of zonal
// functions sharing the axis; powers must be even.
double extension_product_integral(int d,
                                  const std::vector<std::pair<const TrialFunction*, int>>& factors);

struct QuadrupleBatch {
    int d = 0;
    long n = 0;
    std::vector<double> pts;  // n * 4 * d, row-major

    const double* point(long row, int slot) const { return pts.data() + ((row * 4 + slot) * d); }
};

// n quadruples on (S^{d-1})^4 with zeta_1 + zeta_2 + zeta_3 + zeta_4 = 0:
// draw the first two uniformly, close the sum with a uniformly rotated pair.
// Degenerate draws (|zeta_1 + zeta_2| within 1e-12 of 0 or 2) are rejected.
QuadrupleBatch quadruple_sampler(int d, long n, std::uint64_t seed, bool parallel = true);

// One constrained quadruple into out[0..4d), shared by the batch sampler and
// the streaming identity kernel.
void draw_quadruple(SplitMix64& rng, int d, double* out);

}  // namespace sphrest
