#include "bklab/oracle.hpp"

#include <cmath>

#include <Eigen/Cholesky>

namespace bklab {

CVec normalized_monomials(const RVec& lambda, int k, int A, const Point& z) {
  const int n = static_cast<int>(lambda.size());
  // Per-dimension ladders b^{(i)}_a(z_i), b_{a+1} = b_a z_i sqrt(2 k lambda_i/(a+1)),
  // starting from b_0 = sqrt(2 k lambda_i / pi); then tensorize.
  std::vector<CVec> ladder(n);
  for (int i = 0; i < n; ++i) {
    ladder[i] = CVec(A + 1);
    ladder[i](0) = std::sqrt(2.0 * double(k) * lambda(i) / kPi);
    for (int a = 0; a < A; ++a)
      ladder[i](a + 1) =
          ladder[i](a) * z(i) * std::sqrt(2.0 * double(k) * lambda(i) / double(a + 1));
  }
  const auto alphas = MultiIndex::all_up_to(n, A);
  CVec out(alphas.size());
  for (size_t j = 0; j < alphas.size(); ++j) {
    Complex v(1.0, 0.0);
    for (int i = 0; i < n; ++i) v *= ladder[i](alphas[j][i]);
    out(j) = v;
  }
  return out;
}

int default_basis_degree(int k, double epsilon) {
  return std::max(12, int(std::ceil(6.0 * std::pow(double(k), epsilon))));
}

OracleBasis build_basis(const WeightSpec& w, const MetricSpec& met, int k, int A,
                        const QuadratureGrid& grid) {
  if (A < 0) throw domain_error("build_basis: A must be >= 0");
  if (k < 1) throw domain_error("build_basis: k must be >= 1");
  if (met.n() != w.n()) throw domain_error("build_basis: weight/metric dimension mismatch");
  if (grid.measure() != Measure::GaussianWeighted || grid.real_dim() != 2 * w.n())
    throw domain_error("build_basis: needs a Gaussian-weighted grid over C^n");
  if (grid.exact_degree() < 2 * A)
    throw domain_error("build_basis: grid not exact for degree 2A polynomials");
  if (w.has_perturbation() && w.min_hessian_eigenvalue(k) <= 0.0)
    throw domain_error(
        "build_basis: perturbed weight is not strictly plurisubharmonic at this k");

  OracleBasis basis;
  basis.lambda = w.lambda();
  basis.k = k;
  basis.n = w.n();
  basis.max_degree = A;
  basis.alphas = MultiIndex::all_up_to(w.n(), A);
  const int d = basis.size();

  // G_{ab} = int b_a conj(b_b) e^{-2 k phi_hat} rho dm; the grid weight
  // already carries e^{-2 k phi0}, leaving the bounded factor
  // e^{-2 k phi1} rho on the nodes.
  CMat G = CMat::Zero(d, d);
  const bool pert = w.has_perturbation();
  const bool dens = !met.is_trivial();
  for (int node = 0; node < grid.size(); ++node) {
    const Point z = grid.cnode(node);
    double f = grid.weights()(node);
    if (pert) f *= std::exp(-2.0 * double(k) * w.phi1(z, k));
    if (dens) f *= met.rho(z);
    const CVec b = normalized_monomials(basis.lambda, k, A, z);
    G.selfadjointView<Eigen::Lower>().rankUpdate(b, f);
  }
  // exact Hermitian symmetrization from the lower triangle (the accumulated
  // diagonal picks up imaginary roundoff dust)
  for (int a = 0; a < d; ++a) G(a, a) = Complex(G(a, a).real(), 0.0);
  basis.gram = CMat(G.selfadjointView<Eigen::Lower>());

  Eigen::LDLT<CMat> ldlt(basis.gram);
  if (ldlt.info() != Eigen::Success)
    throw conditioning_error("build_basis: Gram factorization failed");
  const RVec D = ldlt.vectorD().real();
  if (D.minCoeff() <= 0.0)
    throw conditioning_error(
        "build_basis: Gram not numerically positive definite (min pivot " +
        std::to_string(D.minCoeff()) + "); refine the grid or lower A");
  basis.condition = D.maxCoeff() / D.minCoeff();

  // G = P^T L D L^* P  =>  M = P^T L D^{1/2},  T = M^{-1},  T G T^* = I.
  CMat L = ldlt.matrixL();
  CMat M = ldlt.transpositionsP().transpose() * (L * D.cwiseSqrt().asDiagonal()).eval();
  basis.transform = M.inverse();
  return basis;
}

OracleBasis build_basis_adaptive(const WeightSpec& w, const MetricSpec& met, int k,
                                 int A_start, int quad_points, double rel_tol, int step,
                                 int max_rounds) {
  int A = A_start;
  auto grid = QuadratureGrid::gaussian_weighted(w.n(), k, w.lambda(),
                                                std::max(quad_points, A + 1));
  OracleBasis basis = build_basis(w, met, k, A, grid);
  Point origin = Point::Zero(w.n());
  double diag = oracle_kernel(basis, w, origin, origin).real();
  for (int round = 0; round < max_rounds; ++round) {
    const int A2 = A + step;
    auto grid2 = QuadratureGrid::gaussian_weighted(w.n(), k, w.lambda(),
                                                   std::max(quad_points, A2 + 1));
    OracleBasis next = build_basis(w, met, k, A2, grid2);
    const double diag2 = oracle_kernel(next, w, origin, origin).real();
    const bool settled = std::abs(diag2 - diag) <= rel_tol * std::abs(diag2);
    basis = std::move(next);
    A = A2;
    diag = diag2;
    if (settled) break;
  }
  return basis;
}

Complex oracle_kernel(const OracleBasis& basis, const WeightSpec& w, const Point& z,
                      const Point& y) {
  const CVec bz = normalized_monomials(basis.lambda, basis.k, basis.max_degree, z);
  const CVec by = normalized_monomials(basis.lambda, basis.k, basis.max_degree, y);
  const CVec pz = basis.transform * bz;
  const CVec py = basis.transform * by;
  Complex s(0.0, 0.0);
  for (int j = 0; j < basis.size(); ++j) s += pz(j) * std::conj(py(j));
  const double gauge =
      std::exp(-double(basis.k) * (w.weight(z, basis.k) + w.weight(y, basis.k)));
  return s * gauge;
}

KernelGrid oracle_kernel_grid(const OracleBasis& basis, const WeightSpec& w,
                              const std::vector<Point>& zs, const std::vector<Point>& ws) {
  KernelGrid g;
  g.zs = zs;
  g.ws = ws;
  g.k = basis.k;
  const int d = basis.size();
  CMat pz(d, zs.size()), pw(d, ws.size());
  RVec gz(zs.size()), gw(ws.size());
  for (size_t i = 0; i < zs.size(); ++i) {
    pz.col(i) = basis.transform *
                normalized_monomials(basis.lambda, basis.k, basis.max_degree, zs[i]);
    gz(i) = std::exp(-double(basis.k) * w.weight(zs[i], basis.k));
  }
  for (size_t j = 0; j < ws.size(); ++j) {
    pw.col(j) = basis.transform *
                normalized_monomials(basis.lambda, basis.k, basis.max_degree, ws[j]);
    gw(j) = std::exp(-double(basis.k) * w.weight(ws[j], basis.k));
  }
  g.values = (pz.adjoint() * pw).conjugate();
  for (size_t i = 0; i < zs.size(); ++i)
    for (size_t j = 0; j < ws.size(); ++j) g.values(i, j) *= gz(i) * gw(j);
  return g;
}

double offdiag_decay(const KernelGrid& kernel, int N, int k, double epsilon,
                     double inner_scaled, double outer_scaled) {
  if (N < 0) throw domain_error("offdiag_decay: N must be >= 0");
  const double unit = std::pow(double(k), epsilon - 0.5);
  const double r_in = inner_scaled * unit;
  const double r_out = outer_scaled * unit;
  double sup = -1.0;
  for (int i = 0; i < kernel.rows(); ++i) {
    if (kernel.zs[i].norm() < r_out) continue;
    for (int j = 0; j < kernel.cols(); ++j) {
      if (kernel.ws[j].norm() > r_in) continue;
      sup = std::max(sup, std::abs(kernel.values(i, j)));
    }
  }
  if (sup < 0.0)
    throw domain_error("offdiag_decay: empty region pair on this kernel grid");
  return sup * std::pow(double(k), N);
}

}  // namespace bklab
