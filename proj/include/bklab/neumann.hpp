#pragma once

#include <map>
#include <vector>

#include "bklab/kernelgrid.hpp"
#include "bklab/symbols.hpp"
#include "bklab/weight.hpp"

namespace bklab {

/// Gauge-conjugated model kernel
///   Phat(z,y) = e^{-k phi1(z)} P_{k phi0}(z,y) e^{+k phi1(y)};
/// equals the model kernel when phi1 == 0, and the gauge factors cancel on
/// the diagonal.  Exponents are combined in log-space.
Complex hat_kernel(const WeightSpec& w, int k, const Point& z, const Point& y);

/// Gauge remainder
///   R(z,y) = P_{k phi0}(z,y) (rho(z)^{-1} rho(y) e^{k(phi1(z)-phi1(y))}
///                              - e^{k(phi1(y)-phi1(z))});
/// identically zero on the diagonal and when phi1 == 0, rho == 1.
Complex remainder_kernel(const WeightSpec& w, const MetricSpec& met, int k, const Point& z,
                         const Point& y);

/// View the two kernels as symbol families over R^{2n}.
SymbolFamily hat_symbol(const WeightSpec& w);
SymbolFamily remainder_symbol(const WeightSpec& w, const MetricSpec& met);

/// R^{#j}: the j-fold composition of the remainder with itself over `grid`;
/// declared order n - j/2.
SymbolFamily remainder_power(const WeightSpec& w, const MetricSpec& met, int k, int j,
                             const QuadratureGrid& grid);

struct PartialSumOptions {
  int t_points_per_axis = 56;  // composition grid resolution (per real axis)
  double t_pad_sigmas = 6.5;   // half-width beyond the region, in Gaussian widths
};

/// Partial sum Phat + Phat#R + ... + Phat#R_{M-1} sampled on zs x ws
/// (M terms; M = 1 is Phat alone).  Compositions are evaluated by matrix
/// products over a shared Gauss--Legendre t-grid.
KernelGrid neumann_partial_sum(const WeightSpec& w, const MetricSpec& met, int k, int M,
                               const std::vector<Point>& zs, const std::vector<Point>& ws,
                               const PartialSumOptions& opts = {});

/// All partial sums M = 1..M_max in one sweep (shares the t-grid work).
std::vector<KernelGrid> neumann_partial_sums(const WeightSpec& w, const MetricSpec& met,
                                             int k, int M_max, const std::vector<Point>& zs,
                                             const std::vector<Point>& ws,
                                             const PartialSumOptions& opts = {});

/// Closed-form leading coefficient
///   a0(z,w) = (2^n prod lambda / pi^n) e^{sum lambda_j (2 z^j conj(w^j) - |z^j|^2 - |w^j|^2)}.
std::function<Complex(const Point&, const Point&)> leading_coefficient(const RVec& lambda);

/// Least-squares extraction of the rescaled-coefficient ladder: given kernel
/// samples K_k(u/sqrt(k), v/sqrt(k)) for each k, fit
///   K ~ sum_{j<=J} k^{n - j/2} c_j(u,v).
struct ExpansionFit {
  std::vector<CMat> coefficients;  // J+1 matrices over the probe product grid
  RVec residual_rms;               // per k, after removing the fitted ladder
  double condition = 1.0;          // scaled design-matrix condition estimate
};

ExpansionFit fit_expansion(const std::vector<int>& ks, const std::vector<CMat>& samples,
                           int n, int J);

/// Expansion diagnostics produced by the experiment driver: partial sums per
/// M, their errors against a reference, and fitted decay slopes.
struct ExpansionResult {
  std::map<int, KernelGrid> partial_sums;
  std::vector<int> ks;
  std::map<int, RVec> sup_error;     // M -> per-k sup error vs reference
  std::map<int, double> fitted_slope;

  std::string errors_csv() const;
};

/// Coefficient rows (u, v, j, re, im) for extracted ladder coefficients at
/// the scaled probes.
std::string coefficients_csv(const std::vector<Point>& us, const std::vector<Point>& vs,
                             const ExpansionFit& fit);

}  // namespace bklab
