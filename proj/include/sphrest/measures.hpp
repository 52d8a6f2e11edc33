#pragma once

#include <string>
#include <vector>

namespace sphrest {

// Fourier transform of the surface measure on S^{d-1}:
//   sigma_hat(d, r) = (2 pi)^{d/2} r^{(2-d)/2} J_{(d-2)/2}(r),
// with value omega_{d-1} at r = 0.
double sigma_hat(int d, double r);

// Radial density of sigma * sigma:
//   2^{-d+3} omega_{d-2} (1/r) (4 - r^2)_+^{(d-3)/2}.
// +infinity at r = 0 (and at r = 2 when d = 2); zero outside the support.
double conv2(int d, double r);

// Sampled radial density of a k-fold convolution, supported on [0, fold].
// Queries interpolate monotone-cubically between the stored nodes, except
// fold = 2 which evaluates the closed form directly (its density is unbounded
// at r = 0, which no interpolant represents).
// Densities of higher folds are smooth except for derivative breaks at the
// integer radii (images of the support edges of the lower folds); those radii
// are kept as exact nodes and interpolation uses one-sided slopes across them.
class RadialProfile {
  public:
    RadialProfile(int dim, int fold, std::vector<double> radii, std::vector<double> values,
                  std::vector<double> breakpoints = {});

    int dim() const { return dim_; }
    int fold() const { return fold_; }
    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& values() const { return values_; }

    double operator()(double r) const;

  private:
    int dim_;
    int fold_;
    std::vector<double> radii_;
    std::vector<double> values_;
    std::vector<double> slope_lo_;  // Hermite slope at the left node of each cell
    std::vector<double> slope_hi_;  // Hermite slope at the right node of each cell
};

// Builds sigma^{(fold)} on a cosine-clustered grid of `grid_size` nodes over
// [0, fold] by repeated radial convolution with the surface measure.
// d >= 3 (the d = 2 recursion is numerically unusable past fold 2) and
// grid_size >= 64.
RadialProfile conv_profile(int d, int fold, int grid_size, bool parallel = true);

// Total mass of the profile as a measure on R^d, i.e.
// omega_{d-1} int rho(r) r^{d-1} dr; convolution preserves mass, so this
// should be omega_{d-1}^fold.
double radial_mass(const RadialProfile& profile);

// || sigma_hat ||_{L^{2k}(R^d)}: head of the radial integral by Gauss panels,
// tail evaluated from the Hankel expansion term by term.  (d, k) = (2, 2)
// diverges logarithmically and is rejected.
double sigma_hat_norm(int d, int k);

// Same integral at an explicit truncation radius and panel resolution, for
// consistency checks against the default.
double sigma_hat_norm_at(int d, int k, double radius, int nodes_per_panel);

struct SharpConstant {
    int d = 0;
    int k = 0;
    double q = 0.0;  // infinity() for the sup norm
    double value = 0.0;
    std::string method;
};

// Sharp adjoint restriction constant C(d, 2k, q) = omega_{d-1}^{-1/q} ||sigma_hat||_{2k},
// defined on the triples
//   (a) k = 2, q >= 2,  3 <= d <= 7
//   (b) k = 2, q >= 4,  d >= 8
//   (c) k >= 3, q >= 2k, d >= 2
// and rejected elsewhere with the violated clause named.
SharpConstant sharp_constant(int d, int k, double q);

// The explicit k = 2 evaluation through gamma factors, any d >= 3:
// omega_{d-1}^{-1/q+1/4} omega_{d-2}^{1/2} (2 pi)^{d/4} 2^{(d-3)/4}
//   * [Gamma(d-2) Gamma((d-2)/2) / Gamma(3(d-2)/2)]^{1/4}.
double sharp_constant_d4_closed(int d, double q);

}  // namespace sphrest
