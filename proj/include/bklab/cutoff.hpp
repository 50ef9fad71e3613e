#pragma once

#include <cmath>
#include <functional>

#include "bklab/types.hpp"

namespace bklab {

/// Radial C^inf bump: value 1 for r <= inner, 0 for r >= outer, with the
/// standard exp(-1/t) transition in between.  First and second radial
/// derivatives are available in closed form (the weight Hessian needs them).
class CutoffProfile {
 public:
  CutoffProfile() : inner_(0.5), outer_(1.0) {}
  CutoffProfile(double inner, double outer) : inner_(inner), outer_(outer) {
    if (!(0.0 < inner && inner < outer))
      throw domain_error("CutoffProfile: need 0 < inner < outer");
  }

  /// chi = 1 on B_{1/2}, supp chi in B_1 -- the profile used for chi_k and theta_k.
  static CutoffProfile standard() { return CutoffProfile(0.5, 1.0); }

  double inner() const { return inner_; }
  double outer() const { return outer_; }

  double value(double r) const;
  double d1(double r) const;
  double d2(double r) const;

 private:
  double inner_, outer_;
};

/// chi_k(z) = chi(scale_factor * k^{1/2-eps} * z) as a radial function of z.
/// value 1 for |z| <= inner/(scale_factor k^{1/2-eps}), 0 beyond
/// outer/(scale_factor k^{1/2-eps}).
std::function<double(const Point&)> make_cutoff(const CutoffProfile& profile, int k,
                                                double epsilon, double scale_factor = 8.0);

/// Scale applied to |z| inside make_cutoff: scale_factor * k^{1/2-eps}.
double cutoff_scale(int k, double epsilon, double scale_factor = 8.0);

/// Near-diagonal partition eta(z,w) = zeta(|z-w|): identically 1 for
/// |z-w| <= r0, 0 for |z-w| >= 2 r0, symmetric, values in [0,1].
class PartitionSpec {
 public:
  explicit PartitionSpec(double near_diagonal_radius)
      : r0_(near_diagonal_radius), zeta_(near_diagonal_radius, 2.0 * near_diagonal_radius) {
    if (near_diagonal_radius <= 0.0) throw domain_error("PartitionSpec: r0 must be > 0");
  }

  double r0() const { return r0_; }
  double eta(const Point& z, const Point& w) const { return zeta_.value((z - w).norm()); }

 private:
  double r0_;
  CutoffProfile zeta_;
};

}  // namespace bklab
