#include "bklab/dbar.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/SparseLU>

namespace bklab {
namespace {

using SpMat = Eigen::SparseMatrix<Complex>;

SpMat hermitize(const SpMat& P) {
  SpMat out = 0.5 * (P + SpMat(P.adjoint()));
  out.makeCompressed();
  return out;
}

SpMat product_laplacian(const SparseOperator& A) {
  return hermitize((A.mat * SpMat(A.mat.adjoint())).pruned());
}

}  // namespace

Grid2D Grid2D::standard(const WeightSpec& w, int k) {
  const double L = 8.0 / std::sqrt(double(k) * w.lambda().minCoeff());
  const double h_max = 0.2 / std::sqrt(double(k) * w.lambda().maxCoeff());
  const int N = std::max(16, int(std::ceil(2.0 * L / h_max)) + 1);
  return Grid2D(L, N);
}

DeformedDbar build_deformed_dbar(const Grid2D& grid, const WeightSpec& w, int k) {
  if (w.n() != 1) throw domain_error("build_deformed_dbar: n = 1 only");
  if (k < 1) throw domain_error("build_deformed_dbar: k must be >= 1");
  const double h = grid.spacing();
  const double h_max = 0.2 / std::sqrt(double(k) * w.lambda().maxCoeff());
  if (h > h_max) {
    const int suggested = int(std::ceil(2.0 * grid.half_width / h_max)) + 1;
    throw domain_error(
        "build_deformed_dbar: grid does not resolve the Gaussian scale; need "
        "points_per_side >= " +
        std::to_string(suggested));
  }

  const int N = grid.points_per_side;
  const int Nc = grid.centers_per_side();
  const double L = grid.half_width;

  // 1-D staggered stencils on node offsets (-3/2,-1/2,+1/2,+3/2) around a
  // cell center, i.e. node indices ic-1 .. ic+2.
  const double D[4] = {1.0 / (24 * h), -27.0 / (24 * h), 27.0 / (24 * h), -1.0 / (24 * h)};
  const double M[4] = {-1.0 / 16, 9.0 / 16, 9.0 / 16, -1.0 / 16};
  const double S[4] = {-1.0, 3.0, -3.0, 1.0};
  const double nu = std::sqrt(2.0 * double(k) * w.lambda().maxCoeff()) / 64.0;

  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(static_cast<size_t>(Nc) * Nc * 16);
  const Complex half(0.5, 0.0), ihalf(0.0, 0.5);
  for (int ic = 1; ic <= N - 3; ++ic)
    for (int jc = 1; jc <= N - 3; ++jc) {
      const int row = (ic - 1) * Nc + (jc - 1);
      Point zc(1);
      zc(0) = Complex(-L + (ic + 0.5) * h, -L + (jc + 0.5) * h);
      const Complex pot = double(k) * w.dzbar(zc, k, 0);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const Complex v = half * D[a] * M[b] + ihalf * M[a] * D[b] +
                            pot * M[a] * M[b] + Complex(nu * S[a] * S[b], 0.0);
          trip.emplace_back(row, (ic - 1 + a) * N + (jc - 1 + b), v);
        }
    }

  DeformedDbar op;
  op.k = k;
  op.A.mat = SpMat(Nc * Nc, N * N);
  op.A.mat.setFromTriplets(trip.begin(), trip.end());
  op.A.mat.makeCompressed();
  op.curvature = RVec(N * N);
  for (int p = 0; p < grid.nodes(); ++p) {
    Point z(1);
    z(0) = grid.node(p);
    op.curvature(p) = 2.0 * double(k) * w.mixed_hessian(z, k)(0, 0).real();
  }
  return op;
}

SparseOperator laplacian(const DeformedDbar& op, int q) {
  if (q != 0 && q != 1) throw domain_error("laplacian: q must be 0 or 1");
  SpMat P = hermitize((SpMat(op.A.mat.adjoint()) * op.A.mat).pruned());
  if (q == 1) {
    std::vector<Eigen::Triplet<Complex>> trip;
    for (int i = 0; i < op.curvature.size(); ++i)
      trip.emplace_back(i, i, Complex(op.curvature(i), 0.0));
    SpMat C(op.curvature.size(), op.curvature.size());
    C.setFromTriplets(trip.begin(), trip.end());
    P = hermitize(P + C);
  }
  SparseOperator out;
  out.mat = std::move(P);
  return out;
}

double min_eigenvalue(const SparseOperator& op, double tol, int max_iters) {
  const int n = op.rows();
  if (n < 1 || op.rows() != op.cols())
    throw domain_error("min_eigenvalue: needs a square operator");
  Eigen::SparseLU<SpMat> lu(op.mat);
  if (lu.info() != Eigen::Success)
    throw conditioning_error("min_eigenvalue: factorization failed");
  // operator scale for the absolute part of the stopping test; eigenvalues
  // at numerical zero (q = 0 kernel modes) never settle in relative terms
  double scale = 0.0;
  for (int c = 0; c < op.mat.outerSize(); ++c)
    for (SpMat::InnerIterator it(op.mat, c); it; ++it)
      if (it.row() == it.col()) scale = std::max(scale, std::abs(it.value()));
  CVec v = CVec::Ones(n);
  v /= v.norm();
  double lam_prev = 0.0;
  int settled = 0;
  for (int it = 0; it < max_iters; ++it) {
    CVec y = lu.solve(v);
    y /= y.norm();
    const double lam = (y.adjoint() * (op.mat * y))(0).real();
    const double delta = std::abs(lam - lam_prev);
    if (it > 2 && delta <= tol * std::abs(lam) + 1e-14 * scale) return lam;
    // near-degenerate clusters rotate slowly; the residual certifies the
    // Rayleigh quotient to within the cluster spread, which is all the
    // accuracy the eigenvalue can carry
    settled = (it > 2 && delta <= 1e-9 * std::abs(lam) + 1e-14 * scale) ? settled + 1 : 0;
    if (settled >= 3) return lam;
    if (it > 8 && it % 8 == 0) {
      const double r = (op.mat * y - lam * y).norm();
      if (r <= 1e-4 * std::abs(lam) + 1e-12 * scale) return lam;
    }
    lam_prev = lam;
    v = y;
  }
  const double resid = (op.mat * v - lam_prev * v).norm();
  throw conditioning_error("min_eigenvalue: no convergence, residual " +
                           std::to_string(resid));
}

double grid_norm(const Grid2D& grid, const CVec& u) { return grid.spacing() * u.norm(); }

DbarSolution solve_dbar(const CVec& alpha, const WeightSpec& w, int k, const Grid2D& grid) {
  if (alpha.size() != grid.centers())
    throw domain_error("solve_dbar: alpha must be sampled at the cell centers");
  const DeformedDbar op = build_deformed_dbar(grid, w, k);
  SparseOperator prod;
  prod.mat = product_laplacian(op.A);
  Eigen::SparseLU<SpMat> lu(prod.mat);
  if (lu.info() != Eigen::Success)
    throw conditioning_error("solve_dbar: singular discretized system");

  DbarSolution sol;
  sol.measured_gap = min_eigenvalue(laplacian(op, 1));
  const double an = alpha.norm();
  if (an == 0.0) {
    sol.u = CVec::Zero(grid.nodes());
    return sol;
  }
  const CVec beta = lu.solve(alpha);
  sol.u = op.A.mat.adjoint() * beta;
  sol.residual_rel = (op.A.mat * sol.u - alpha).norm() / an;
  sol.norm_ratio = sol.u.norm() / (an / std::sqrt(sol.measured_gap));
  return sol;
}

CVec hodge_project(const CVec& u, const WeightSpec& w, int k, const Grid2D& grid) {
  if (u.size() != grid.nodes())
    throw domain_error("hodge_project: u must be sampled at the nodes");
  const DeformedDbar op = build_deformed_dbar(grid, w, k);
  SpMat prod = product_laplacian(op.A);
  Eigen::SparseLU<SpMat> lu(prod);
  if (lu.info() != Eigen::Success)
    throw conditioning_error("hodge_project: singular discretized system");
  const CVec au = op.A.mat * u;
  return u - CVec(op.A.mat.adjoint() * lu.solve(au));
}

std::string GapReport::csv_header() { return "k,L,points_per_side,min_eig,ratio_min_eig_over_k"; }

std::string GapReport::csv_row() const {
  std::ostringstream os;
  os.precision(17);
  os << k << "," << half_width << "," << points_per_side << "," << min_eig << ","
     << ratio_over_k;
  return os.str();
}

GapReport measure_gap(const WeightSpec& w, int k, const Grid2D& grid, double tol) {
  const DeformedDbar op = build_deformed_dbar(grid, w, k);
  GapReport rep;
  rep.k = k;
  rep.half_width = grid.half_width;
  rep.points_per_side = grid.points_per_side;
  rep.min_eig = min_eigenvalue(laplacian(op, 1), tol);
  rep.ratio_over_k = rep.min_eig / double(k);
  return rep;
}

}  // namespace bklab
