#include "bklab/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace bklab {
namespace {

// Golub--Welsch: nodes are eigenvalues of the Jacobi matrix, weights come
// from the first components of the eigenvectors.
Rule1D golub_welsch(const RVec& diag, const RVec& offdiag, double mu0) {
  const int m = static_cast<int>(diag.size());
  RMat J = RMat::Zero(m, m);
  for (int i = 0; i < m; ++i) J(i, i) = diag(i);
  for (int i = 0; i + 1 < m; ++i) {
    J(i, i + 1) = offdiag(i);
    J(i + 1, i) = offdiag(i);
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(J);
  Rule1D rule;
  rule.nodes = es.eigenvalues();
  rule.weights = RVec(m);
  for (int i = 0; i < m; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    rule.weights(i) = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace

namespace {

// Orthonormal Hermite values h_0..h_m at t (weight e^{-t^2}); returns h_m and
// fills sum_sq with sum_{j<m} h_j^2 (the inverse Christoffel function).
double hermite_orthonormal(int m, double t, double* sum_sq, double* h_prev_out) {
  double hm1 = 0.0;                       // h_{-1}
  double h = std::pow(kPi, -0.25);        // h_0
  double s = 0.0;
  for (int j = 0; j < m; ++j) {
    s += h * h;
    const double hnext =
        t * std::sqrt(2.0 / double(j + 1)) * h - std::sqrt(double(j) / double(j + 1)) * hm1;
    hm1 = h;
    h = hnext;
  }
  if (sum_sq) *sum_sq = s;
  if (h_prev_out) *h_prev_out = hm1;
  return h;
}

}  // namespace

Rule1D hermite_rule(int m) {
  if (m < 1) throw domain_error("hermite_rule: m must be >= 1");
  if (m > 300) throw domain_error("hermite_rule: m too large for double precision");
  RVec diag = RVec::Zero(m), off(m - 1 > 0 ? m - 1 : 0);
  for (int i = 0; i + 1 < m; ++i) off(i) = std::sqrt(0.5 * (i + 1));
  Rule1D rule = golub_welsch(diag, off, std::sqrt(kPi));
  // Golub--Welsch weights via eigenvector components bottom out near eps^2;
  // recompute through the Christoffel function (with Newton-polished nodes)
  // for full relative accuracy at the outer nodes, where high-degree Gram
  // integrands would otherwise amplify the garbage.
  for (int i = 0; i < m; ++i) {
    double t = rule.nodes(i);
    for (int it = 0; it < 3; ++it) {
      double hprev = 0.0;
      const double hm = hermite_orthonormal(m, t, nullptr, &hprev);
      const double dh = std::sqrt(2.0 * m) * hprev;
      if (dh == 0.0) break;
      const double step = hm / dh;
      t -= step;
      if (std::abs(step) < 1e-16 * (1.0 + std::abs(t))) break;
    }
    rule.nodes(i) = t;
    double sum_sq = 0.0;
    hermite_orthonormal(m, t, &sum_sq, nullptr);
    rule.weights(i) = 1.0 / sum_sq;
  }
  return rule;
}

Rule1D legendre_rule(int m) {
  if (m < 1) throw domain_error("legendre_rule: m must be >= 1");
  RVec diag = RVec::Zero(m), off(m - 1 > 0 ? m - 1 : 0);
  for (int i = 0; i + 1 < m; ++i) {
    const double j = i + 1;
    off(i) = j / std::sqrt(4.0 * j * j - 1.0);
  }
  return golub_welsch(diag, off, 2.0);
}

Point QuadratureGrid::cnode(int i) const {
  const int d = real_dim();
  if (d % 2 != 0) throw domain_error("QuadratureGrid::cnode: odd real dimension");
  Point z(d / 2);
  for (int j = 0; j < d / 2; ++j) z(j) = Complex(nodes_(i, 2 * j), nodes_(i, 2 * j + 1));
  return z;
}

Complex QuadratureGrid::integrate(const std::function<Complex(const Point&)>& f) const {
  Complex acc(0.0, 0.0);
  for (int i = 0; i < size(); ++i) {
    const Complex v = f(cnode(i));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw domain_error("integrate: non-finite sample at node " + std::to_string(i));
    acc += weights_(i) * v;
  }
  return acc;
}

Complex QuadratureGrid::integrate_real_nodes(
    const std::function<Complex(const RVec&)>& f) const {
  Complex acc(0.0, 0.0);
  for (int i = 0; i < size(); ++i) {
    const Complex v = f(rnode(i));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw domain_error("integrate: non-finite sample at node " + std::to_string(i));
    acc += weights_(i) * v;
  }
  return acc;
}

QuadratureGrid QuadratureGrid::gaussian_weighted(int n, int k, const RVec& lambda, int m) {
  if (n < 1 || k < 1 || m < 1) throw domain_error("gaussian_weighted: bad parameters");
  if (lambda.size() != n || (lambda.array() <= 0.0).any())
    throw domain_error("gaussian_weighted: lambda must be n positive reals");
  const Rule1D h = hermite_rule(m);
  const int d = 2 * n;
  // int f(z) e^{-2k lambda_i ((Re z^i)^2 + (Im z^i)^2)} dm: substitute each
  // real axis t = sqrt(2 k lambda_i) x, picking up 1/sqrt(2 k lambda_i).
  QuadratureGrid g;
  const long total = static_cast<long>(std::pow(double(m), d));
  if (total > 100'000'000L) throw domain_error("gaussian_weighted: grid too large");
  g.nodes_ = RMat(total, d);
  g.weights_ = RVec(total);
  std::vector<int> idx(d, 0);
  for (long r = 0; r < total; ++r) {
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      const double s = std::sqrt(2.0 * double(k) * lambda(a / 2));
      g.nodes_(r, a) = h.nodes(idx[a]) / s;
      w *= h.weights(idx[a]) / s;
    }
    g.weights_(r) = w;
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < m) break;
      idx[a] = 0;
    }
  }
  g.measure_ = Measure::GaussianWeighted;
  g.exact_degree_ = 2 * m - 1;
  g.k_ = k;
  g.lambda_ = lambda;
  return g;
}

QuadratureGrid QuadratureGrid::lebesgue_hermite(int n, int k, const RVec& lambda, int m) {
  QuadratureGrid g = gaussian_weighted(n, k, lambda, m);
  // fold exp(+2k sum lambda_i |z^i|^2) into the weights, exponent-combined
  for (int i = 0; i < g.size(); ++i) {
    double phi0 = 0.0;
    for (int a = 0; a < g.real_dim(); ++a)
      phi0 += lambda(a / 2) * g.nodes_(i, a) * g.nodes_(i, a);
    g.weights_(i) = std::exp(std::log(g.weights_(i)) + 2.0 * double(k) * phi0);
  }
  g.measure_ = Measure::LebesgueBox;
  return g;
}

QuadratureGrid QuadratureGrid::lebesgue_box(int d_real, double half_width, int m) {
  if (d_real < 1 || half_width <= 0.0 || m < 1)
    throw domain_error("lebesgue_box: bad parameters");
  const Rule1D l = legendre_rule(m);
  QuadratureGrid g;
  const long total = static_cast<long>(std::pow(double(m), d_real));
  if (total > 100'000'000L) throw domain_error("lebesgue_box: grid too large");
  g.nodes_ = RMat(total, d_real);
  g.weights_ = RVec(total);
  std::vector<int> idx(d_real, 0);
  for (long r = 0; r < total; ++r) {
    double w = 1.0;
    for (int a = 0; a < d_real; ++a) {
      g.nodes_(r, a) = half_width * l.nodes(idx[a]);
      w *= half_width * l.weights(idx[a]);
    }
    g.weights_(r) = w;
    for (int a = d_real - 1; a >= 0; --a) {
      if (++idx[a] < m) break;
      idx[a] = 0;
    }
  }
  g.measure_ = Measure::LebesgueBox;
  g.exact_degree_ = 2 * m - 1;
  g.half_width_ = half_width;
  return g;
}

}  // namespace bklab
