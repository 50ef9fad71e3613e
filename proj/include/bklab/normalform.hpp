#pragma once

#include "bklab/poly.hpp"
#include "bklab/types.hpp"

namespace bklab {

/// Taylor data of a real weight germ at the origin:
///   phi(z) = constant + 2 Re sum_i lin_i z^i + Re sum_{ij} quad_hol_ij z^i z^j
///            + sum_{ij} quad_mixed_ij z^i conj(z^j) + higher(z, zbar),
/// with quad_hol symmetric, quad_mixed Hermitian, and higher of total
/// degree >= 3.
struct TaylorWeight {
  double constant = 0.0;
  CVec lin;        // coefficients of z^i
  CMat quad_hol;   // symmetric, coefficients of z^i z^j
  CMat quad_mixed; // Hermitian, coefficients of z^i conj(z^j)
  ZPoly higher;    // total degree >= 3

  explicit TaylorWeight(int n)
      : lin(CVec::Zero(n)), quad_hol(CMat::Zero(n, n)), quad_mixed(CMat::Zero(n, n)),
        higher(n) {}

  int n() const { return static_cast<int>(lin.size()); }
  /// The full polynomial in (z, zbar) this data represents.
  ZPoly to_poly() const;
  double eval(const Point& z) const { return to_poly().eval(z).real(); }
};

/// Output of the reduction to normal form: after the frame change
/// z = S U_bar w (S from the metric, U the stored unitary) and removal of the
/// holomorphic gauge 2 Re G, the weight reads sum_i lambda_i |w^i|^2 + residual(w).
struct NormalForm {
  CMat unitary;        // U, diagonalizes the metric-normalized mixed Hessian
  ZPoly gauge;         // holomorphic G(w) of degree <= 2, in the new frame
  RVec eigenvalues;    // lambda, sorted descending
  ZPoly residual;      // all terms of total degree >= 3

  /// 4 lambda_i are the curvature-operator eigenvalues at the point.
  RVec curvature_eigenvalues() const { return 4.0 * eigenvalues; }
  /// Full frame change z = total_transform() * w.
  CMat total_transform;
};

/// Reduce (tw, metric at 0) to normal form.  Requires quad_mixed positive
/// definite ("not in X(0)" otherwise) and a well-conditioned metric.
/// Deterministic: eigenvalues descending, eigenvector phases fixed by making
/// the largest-modulus entry of each column real positive.
NormalForm normalize_weight(const TaylorWeight& tw, const CMat& metric_at_origin,
                            int max_degree = 6);

/// Invert the frame/gauge change: rebuild the original Taylor data from a
/// normal form and the metric that produced it.
TaylorWeight reconstruct_weight(const NormalForm& nf, const CMat& metric_at_origin);

/// Max abs difference between the coefficient data of two Taylor weights.
double taylor_distance(const TaylorWeight& a, const TaylorWeight& b);

}  // namespace bklab
