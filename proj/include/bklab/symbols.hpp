#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bklab/cutoff.hpp"
#include "bklab/quadrature.hpp"
#include "bklab/weight.hpp"

namespace bklab {

/// Two-point symbol family a(x, y, k) on R^d x R^d with a declared order m:
/// the class bound is
///   |d_x^alpha d_y^beta a| <= C k^{m + (|a|+|b|)/2}
///                             (1 + sqrt(k)|x| + sqrt(k)|y|)^l / (1 + sqrt(k)|x-y|)^N.
/// Derivatives fall back to 4th-order central differences with step
/// h = 1e-3 (1+|x|) / sqrt(k) when no analytic evaluator is attached.
struct SymbolFamily {
  int dim = 1;     // d: real dimension of each slot
  double order = 0.0;
  std::function<Complex(const RVec&, const RVec&, int)> eval;
  // Optional analytic derivative: (alpha, beta, x, y, k) -> value.
  std::function<Complex(const std::vector<int>&, const std::vector<int>&, const RVec&,
                        const RVec&, int)>
      deriv;

  Complex operator()(const RVec& x, const RVec& y, int k) const { return eval(x, y, k); }
  /// d_x^alpha d_y^beta a at (x, y, k); analytic if available, else FD.
  Complex derivative(const std::vector<int>& alpha, const std::vector<int>& beta,
                     const RVec& x, const RVec& y, int k) const;
};

/// a*(x,y,k) = conj(a(y,x,k)); same declared order.
SymbolFamily adjoint(const SymbolFamily& a);

/// Pointwise product; order m + m'.
SymbolFamily product(const SymbolFamily& a, const SymbolFamily& b);

/// d_{x_i} a as a family of order m + 1/2 (finite differences).
SymbolFamily x_derivative(const SymbolFamily& a, int i);

/// (a#b)(x,y,k) = int a(x,t,k) b(t,y,k) dm(t) over the supplied grid;
/// declared order m + m' - d/2.  Each evaluation monitors the outermost node
/// layer of the grid; if that layer carries more than tail_tol of the
/// integrand's L1 mass the grid cannot contain the integrand and the
/// evaluation refuses with "grid too small".
SymbolFamily compose(const SymbolFamily& a, const SymbolFamily& b, const QuadratureGrid& grid,
                     double tail_tol = 1e-6);

/// Op_k(a) u on the grid nodes: (Op u)(x_i) = sum_j w_j a(x_i, y_j, k) u_j.
/// Same tail guard as compose.
CVec quantize(const SymbolFamily& a, const CVec& u, const QuadratureGrid& grid, int k,
              double tail_tol = 1e-6);

/// Probe pairs in scaled coordinates u = sqrt(k) x; evaluation maps them to
/// x = u / sqrt(k) per k so that class-sharp families give k-flat ratios.
using ProbePairs = std::vector<std::pair<RVec, RVec>>;
ProbePairs make_scaled_probe_pairs(int d, double radius, int per_axis);

struct MembershipRow {
  std::vector<int> alpha, beta;
  int N = 0;
  int l = -1;                    // fitted minimal exponent, -1 if none worked
  std::vector<double> sup_ratio; // one entry per k, at the fitted l
  bool pass = false;
};

struct MembershipReport {
  double order = 0.0;
  std::vector<int> k_values;
  std::vector<MembershipRow> rows;
  bool pass = false;

  std::string to_csv() const;
};

/// Sample the class bound over the probe pairs and the k list.  For each
/// (alpha, beta, N), the minimal integer l <= l_cap making the sup-ratio
/// non-increasing in k within a 10% tolerance is reported; pass requires
/// such an l to exist.
MembershipReport estimate_membership(
    const SymbolFamily& a, double m,
    const std::vector<std::pair<std::vector<int>, std::vector<int>>>& deriv_orders,
    const std::vector<int>& N_list, const SemiclassParams& params, const ProbePairs& probes,
    int l_cap = 12, double growth_tol = 0.10);

/// Truncation schedule for the Borel-style asymptotic sum: descending orders
/// m_j, ascending activation thresholds mu_j (term j participates once
/// mu_j <= k), and shrinking cutoff exponents eps_j decreasing toward 0.
struct BorelSchedule {
  std::vector<double> orders;      // m_j strictly decreasing
  std::vector<double> thresholds;  // mu_j strictly increasing
  std::vector<double> shrink;      // eps_j > 0, non-increasing

  BorelSchedule(std::vector<double> m, std::vector<double> mu, std::vector<double> eps);
  /// Default eps_j = eps0 / (j+1).
  static BorelSchedule standard(std::vector<double> m, std::vector<double> mu, double eps0);
};

/// Finite Borel sum: a(x,y,k) = sum_j a_j(x,y,k) zeta(k^{1/2-eps_j}|x|)
/// zeta(k^{1/2-eps_j}|y|) [mu_j <= k], with zeta the 1-on-[0,inner],
/// 0-beyond-outer window.  Declared order = orders[0].
SymbolFamily borel_sum(const std::vector<SymbolFamily>& terms, const BorelSchedule& schedule,
                       const CutoffProfile& window = CutoffProfile(1.0, 2.0));

}  // namespace bklab
