#pragma once

#include <vector>

#include "bklab/kernelgrid.hpp"
#include "bklab/modelkernel.hpp"
#include "bklab/multiindex.hpp"
#include "bklab/quadrature.hpp"
#include "bklab/weight.hpp"

namespace bklab {

/// Orthonormalized monomial basis for the weighted Bergman space of
/// (phi_hat, rho) at level k.  Monomials are pre-normalized against the pure
/// model norms, so the assembled Gram is the identity plus the perturbation
/// correction; `transform` maps normalized monomials to an orthonormal
/// family, T G T^* = I.
struct OracleBasis {
  RVec lambda;
  int k = 1;
  int n = 1;
  int max_degree = 0;                // A
  std::vector<MultiIndex> alphas;    // |alpha| <= A, graded order
  CMat gram;                         // normalized Gram, Hermitian
  CMat transform;                    // T, lower-triangular-after-pivot factor inverse
  double condition = 1.0;            // pivoted-Cholesky diagnostic

  int size() const { return static_cast<int>(alphas.size()); }
};

/// Values of the model-normalized monomials z^alpha / ||z^alpha||_{k phi0}
/// at z, in the basis order of `alphas` (stable two-term recursion).
CVec normalized_monomials(const RVec& lambda, int k, int A, const Point& z);

/// Assemble and factor the Gram matrix by quadrature over the supplied
/// Gaussian-weighted grid.  Requires grid exactness >= 2A and a strictly
/// plurisubharmonic perturbed weight (Hessian check).
OracleBasis build_basis(const WeightSpec& w, const MetricSpec& met, int k, int A,
                        const QuadratureGrid& grid);

/// Spec default basis degree: max(12, ceil(6 k^eps)).
int default_basis_degree(int k, double epsilon);

/// Grow the basis degree (steps of `step`) until K(0,0) moves by less than
/// rel_tol, then return the last basis.
OracleBasis build_basis_adaptive(const WeightSpec& w, const MetricSpec& met, int k,
                                 int A_start, int quad_points, double rel_tol = 1e-8,
                                 int step = 6, int max_rounds = 4);

/// K(z,y) = sum_j Psi_j(z) conj(Psi_j(y)) e^{-k phi_hat(z) - k phi_hat(y)},
/// the weighted projection kernel in the localized gauge.
Complex oracle_kernel(const OracleBasis& basis, const WeightSpec& w, const Point& z,
                      const Point& y);

/// Sample the oracle kernel on a product grid.
KernelGrid oracle_kernel_grid(const OracleBasis& basis, const WeightSpec& w,
                              const std::vector<Point>& zs, const std::vector<Point>& ws);

/// Off-diagonal negligibility statistic: sup of |K(z,w)| k^N over the pair
/// region {|w| <= inner_scaled k^{eps-1/2}} x {|z| >= outer_scaled k^{eps-1/2}},
/// taken over the kernel grid's nodes.  Errors when either side is empty.
double offdiag_decay(const KernelGrid& kernel, int N, int k, double epsilon,
                     double inner_scaled = 0.5, double outer_scaled = 5.5);

}  // namespace bklab
