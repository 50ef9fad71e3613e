#include "bklab/normalform.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace bklab {
namespace {

std::vector<int> unit_index(int n, int i) {
  std::vector<int> v(n, 0);
  v[i] = 1;
  return v;
}

ZPoly quadratic_part(const TaylorWeight& tw) {
  const int n = tw.n();
  ZPoly p = ZPoly::constant(n, tw.constant);
  const std::vector<int> zero(n, 0);
  for (int i = 0; i < n; ++i) {
    p.add_term(unit_index(n, i), zero, tw.lin(i));
    p.add_term(zero, unit_index(n, i), std::conj(tw.lin(i)));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> a(n, 0);
      a[i] += 1;
      a[j] += 1;
      p.add_term(a, zero, 0.5 * tw.quad_hol(i, j));
      p.add_term(zero, a, 0.5 * std::conj(tw.quad_hol(i, j)));
      p.add_term(unit_index(n, i), unit_index(n, j), tw.quad_mixed(i, j));
    }
  return p;
}

/// Split a polynomial with terms of degree <= 2 back into Taylor fields.
TaylorWeight split_fields(const ZPoly& p, int n) {
  TaylorWeight tw(n);
  for (const auto& [key, c] : p.terms()) {
    int da = 0, db = 0;
    for (int i = 0; i < n; ++i) {
      da += key.a[i];
      db += key.b[i];
    }
    const int deg = da + db;
    if (deg == 0) {
      tw.constant = c.real();
    } else if (deg == 1 && da == 1) {
      for (int i = 0; i < n; ++i)
        if (key.a[i] == 1) tw.lin(i) = c;
    } else if (deg == 1) {
      // conjugate partner of the linear term; implied by realness
    } else if (deg == 2 && da == 2) {
      int i = -1, j = -1;
      for (int t = 0; t < n; ++t) {
        if (key.a[t] == 2) i = j = t;
        if (key.a[t] == 1) (i < 0 ? i : j) = t;
      }
      if (i == j) {
        tw.quad_hol(i, i) += 2.0 * c;
      } else {
        tw.quad_hol(i, j) += c;
        tw.quad_hol(j, i) += c;
      }
    } else if (deg == 2 && da == 1 && db == 1) {
      int i = -1, j = -1;
      for (int t = 0; t < n; ++t) {
        if (key.a[t] == 1) i = t;
        if (key.b[t] == 1) j = t;
      }
      tw.quad_mixed(i, j) = c;
    } else if (deg == 2) {
      // antiholomorphic partner, implied
    } else {
      tw.higher.add_term(key.a, key.b, c);
    }
  }
  return tw;
}

/// Deterministic phase convention: scale each column so its largest-modulus
/// entry is real positive.
void fix_phases(CMat& U) {
  for (int c = 0; c < U.cols(); ++c) {
    int imax = 0;
    for (int r = 1; r < U.rows(); ++r)
      if (std::abs(U(r, c)) > std::abs(U(imax, c))) imax = r;
    const Complex v = U(imax, c);
    if (std::abs(v) > 0.0) U.col(c) *= std::conj(v) / std::abs(v);
  }
}

}  // namespace

ZPoly TaylorWeight::to_poly() const {
  ZPoly p = quadratic_part(*this);
  p += higher;
  return p;
}

NormalForm normalize_weight(const TaylorWeight& tw, const CMat& metric_at_origin,
                            int max_degree) {
  const int n = tw.n();
  if (metric_at_origin.rows() != n || metric_at_origin.cols() != n)
    throw domain_error("normalize_weight: metric size mismatch");
  if ((tw.quad_mixed - tw.quad_mixed.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw domain_error("normalize_weight: quad_mixed must be Hermitian");
  if (!tw.higher.empty() && tw.higher.min_total_degree() < 3)
    throw domain_error("normalize_weight: 'higher' has terms of degree <= 2");
  if (tw.higher.max_total_degree() > max_degree)
    throw domain_error("normalize_weight: degree exceeds supported maximum");

  Eigen::SelfAdjointEigenSolver<CMat> mes(metric_at_origin);
  if (mes.eigenvalues().minCoeff() <= 0.0)
    throw conditioning_error("normalize_weight: metric not positive definite");
  if (mes.eigenvalues().maxCoeff() / mes.eigenvalues().minCoeff() > 1e12)
    throw conditioning_error("normalize_weight: metric too ill-conditioned");

  // Metric normalization: with the convention q(z) = sum M_ij z^i conj(z^j),
  // a substitution z = S v maps M to S^T M conj(S).  S = (L^T)^{-1} for
  // M = L L^* gives the identity.
  Eigen::LLT<CMat> llt(metric_at_origin);
  const CMat L = llt.matrixL();
  const CMat S = L.transpose().inverse();

  const CMat Hw = S.transpose() * tw.quad_mixed * S.conjugate();
  Eigen::SelfAdjointEigenSolver<CMat> es((0.5 * (Hw + Hw.adjoint())).eval());
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw domain_error("normalize_weight: not in X(0) (mixed Hessian not positive definite)");

  // SelfAdjointEigenSolver sorts ascending; we want descending.
  CMat U(n, n);
  RVec lam(n);
  for (int i = 0; i < n; ++i) {
    U.col(i) = es.eigenvectors().col(n - 1 - i);
    lam(i) = es.eigenvalues()(n - 1 - i);
  }
  fix_phases(U);

  NormalForm nf;
  nf.unitary = U;
  nf.eigenvalues = lam;
  nf.total_transform = S * U.conjugate();

  // Transform the full polynomial into the new frame z = T w and remove the
  // holomorphic gauge.
  const CMat& T = nf.total_transform;
  const ZPoly phiT = tw.to_poly().substitute_linear(T);

  // G(w) = c' + 2 sum lin'_i w^i + sum quad_hol'_ij w^i w^j with the
  // transformed coefficients; in poly form Re G removes every
  // constant/holomorphic piece.
  const CVec lin_t = T.transpose() * tw.lin;
  const CMat quad_t = T.transpose() * tw.quad_hol * T;
  ZPoly G = ZPoly::constant(n, tw.constant);
  const std::vector<int> zero(n, 0);
  for (int i = 0; i < n; ++i) G.add_term(unit_index(n, i), zero, 2.0 * lin_t(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> a(n, 0);
      a[i] += 1;
      a[j] += 1;
      G.add_term(a, zero, quad_t(i, j));
    }
  nf.gauge = G;

  ZPoly res = phiT - (G + G.conj()) * Complex(0.5, 0.0);
  for (int i = 0; i < n; ++i) {
    std::vector<int> a(n, 0);
    a[i] = 1;
    res -= ZPoly::monomial(a, a, Complex(lam(i), 0.0));
  }
  // Everything of degree <= 2 cancels up to roundoff; keep the exact
  // difference so the invariant is checkable, but drop pure dust.
  ZPoly cleaned(n);
  for (const auto& [key, c] : res.terms())
    if (std::abs(c) > 1e-14) cleaned.add_term(key.a, key.b, c);
  nf.residual = cleaned;
  return nf;
}

TaylorWeight reconstruct_weight(const NormalForm& nf, const CMat& metric_at_origin) {
  const int n = static_cast<int>(nf.eigenvalues.size());
  (void)metric_at_origin;
  // phi(z) = Re G(w) + sum lambda_i |w^i|^2 + residual(w), w = T^{-1} z.
  ZPoly in_w = (nf.gauge + nf.gauge.conj()) * Complex(0.5, 0.0);
  for (int i = 0; i < n; ++i) {
    std::vector<int> a(n, 0);
    a[i] = 1;
    in_w += ZPoly::monomial(a, a, Complex(nf.eigenvalues(i), 0.0));
  }
  in_w += nf.residual;
  const CMat Tinv = nf.total_transform.inverse();
  const ZPoly back = in_w.substitute_linear(Tinv);
  return split_fields(back, n);
}

double taylor_distance(const TaylorWeight& a, const TaylorWeight& b) {
  double d = std::abs(a.constant - b.constant);
  d = std::max(d, (a.lin - b.lin).cwiseAbs().maxCoeff());
  d = std::max(d, (a.quad_hol - b.quad_hol).cwiseAbs().maxCoeff());
  d = std::max(d, (a.quad_mixed - b.quad_mixed).cwiseAbs().maxCoeff());
  const ZPoly diff = a.higher - b.higher;
  for (const auto& [key, c] : diff.terms()) {
    (void)key;
    d = std::max(d, std::abs(c));
  }
  return d;
}

}  // namespace bklab
