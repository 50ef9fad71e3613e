#pragma once

#include <vector>

#include "bklab/cutoff.hpp"
#include "bklab/poly.hpp"
#include "bklab/types.hpp"

namespace bklab {

/// Local weight in normal form plus a compactly supported perturbation:
///   phi0(z)   = sum_i lambda_i |z^i|^2
///   phi1(z;k) = theta_k(z) p(z, zbar),   theta_k(z) = theta(k^{1/2-eps} z)
///   phi_hat   = phi0 + phi1
/// where p is a real polynomial with every term of total degree >= 3.
class WeightSpec {
 public:
  WeightSpec(RVec lambda, ZPoly perturbation, double epsilon,
             CutoffProfile cutoff = CutoffProfile::standard());

  int n() const { return static_cast<int>(lambda_.size()); }
  const RVec& lambda() const { return lambda_; }
  double epsilon() const { return epsilon_; }
  const ZPoly& perturbation() const { return perturbation_; }
  const CutoffProfile& cutoff() const { return cutoff_; }
  bool has_perturbation() const { return !perturbation_.empty(); }

  double phi0(const Point& z) const;
  double theta_k(const Point& z, int k) const;
  double phi1(const Point& z, int k) const;
  /// phi_hat(z) = phi0 + theta_k * p; equals phi0 outside the scaled support.
  double weight(const Point& z, int k) const;

  /// d phi_hat / d zbar^i (Wirtinger), including the cutoff's radial derivative.
  Complex dzbar(const Point& z, int k, int i) const;
  /// Mixed complex Hessian d^2 phi_hat / dz^i dzbar^j.
  CMat mixed_hessian(const Point& z, int k) const;
  /// Smallest eigenvalue of the mixed Hessian over a radial/angular sample;
  /// negative values mean the perturbed weight left the strictly
  /// plurisubharmonic regime at this k.
  double min_hessian_eigenvalue(int k, int radial = 48, int angular = 24) const;

 private:
  RVec lambda_;
  ZPoly perturbation_;
  double epsilon_;
  CutoffProfile cutoff_;
  std::vector<ZPoly> dp_dz_, dp_dzbar_;  // cached Wirtinger derivatives of p
  std::vector<std::vector<ZPoly>> d2p_;  // d2p_[i][j] = d^2 p / dz^i dzbar^j
};

/// eval_weight(w, k, z) = phi_hat(z); spec-level free function.
double eval_weight(const WeightSpec& w, int k, const Point& z);

/// Volume density rho(z) = 1 + bump(|z|) q(z, zbar), with rho == 1 for
/// |z| > support_radius and rho >= rho_min > 0 everywhere.
class MetricSpec {
 public:
  /// Trivial density rho == 1.
  explicit MetricSpec(int n);
  MetricSpec(int n, ZPoly q, double support_radius, double bump_inner_fraction = 0.5);

  int n() const { return n_; }
  double support_radius() const { return support_radius_; }
  bool is_trivial() const { return q_.empty(); }

  double rho(const Point& z) const;
  double rho_min() const { return rho_min_; }

 private:
  int n_ = 1;
  ZPoly q_;
  double support_radius_ = 1.0;
  CutoffProfile bump_;
  double rho_min_ = 1.0;
};

/// Semiclassical sweep parameters: the ascending k list and eps in (0, 1/6).
struct SemiclassParams {
  std::vector<int> k_values;
  double epsilon = 0.1;

  SemiclassParams() = default;
  SemiclassParams(std::vector<int> ks, double eps);
};

}  // namespace bklab
