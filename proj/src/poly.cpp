#include "bklab/poly.hpp"

#include <algorithm>

namespace bklab {

ZPoly& ZPoly::operator+=(const ZPoly& o) {
  if (n_ == 0 && terms_.empty()) n_ = o.n_;
  if (o.n_ != n_ && !o.terms_.empty())
    throw domain_error("ZPoly: mixing polynomials in different variable counts");
  for (const auto& [k, c] : o.terms_) add_term(k.a, k.b, c);
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
  if (n_ == 0 && terms_.empty()) n_ = o.n_;
  if (o.n_ != n_ && !o.terms_.empty())
    throw domain_error("ZPoly: mixing polynomials in different variable counts");
  for (const auto& [k, c] : o.terms_) add_term(k.a, k.b, -c);
  return *this;
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
  ZPoly r(n_);
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) {
      std::vector<int> a(n_), b(n_);
      for (int i = 0; i < n_; ++i) {
        a[i] = k1.a[i] + k2.a[i];
        b[i] = k1.b[i] + k2.b[i];
      }
      r.add_term(a, b, c1 * c2);
    }
  return r;
}

ZPoly ZPoly::operator*(Complex s) const {
  ZPoly r(n_);
  if (s == Complex(0.0, 0.0)) return r;
  for (const auto& [k, c] : terms_) r.add_term(k.a, k.b, c * s);
  return r;
}

Complex ZPoly::eval(const Point& z) const {
  Complex acc(0.0, 0.0);
  for (const auto& [k, c] : terms_) {
    Complex t = c;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < k.a[i]; ++j) t *= z(i);
      for (int j = 0; j < k.b[i]; ++j) t *= std::conj(z(i));
    }
    acc += t;
  }
  return acc;
}

ZPoly ZPoly::conj() const {
  ZPoly r(n_);
  for (const auto& [k, c] : terms_) r.add_term(k.b, k.a, std::conj(c));
  return r;
}

ZPoly ZPoly::dz(int i) const {
  ZPoly r(n_);
  for (const auto& [k, c] : terms_) {
    if (k.a[i] == 0) continue;
    auto a = k.a;
    a[i] -= 1;
    r.add_term(a, k.b, c * double(k.a[i]));
  }
  return r;
}

ZPoly ZPoly::dzbar(int i) const {
  ZPoly r(n_);
  for (const auto& [k, c] : terms_) {
    if (k.b[i] == 0) continue;
    auto b = k.b;
    b[i] -= 1;
    r.add_term(k.a, b, c * double(k.b[i]));
  }
  return r;
}

ZPoly ZPoly::substitute_linear(const CMat& T) const {
  if (T.rows() != n_ || T.cols() != n_)
    throw domain_error("ZPoly::substitute_linear: matrix size mismatch");
  // Precompute the n linear forms L_i(w) = sum_j T(i,j) w_j as ZPoly,
  // then expand each monomial by repeated multiplication.
  std::vector<ZPoly> lin(n_, ZPoly(n_)), lin_bar(n_, ZPoly(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      std::vector<int> a(n_, 0), b(n_, 0);
      a[j] = 1;
      lin[i].add_term(a, std::vector<int>(n_, 0), T(i, j));
      b[j] = 1;
      lin_bar[i].add_term(std::vector<int>(n_, 0), b, std::conj(T(i, j)));
    }
  ZPoly out(n_);
  for (const auto& [k, c] : terms_) {
    ZPoly t = ZPoly::constant(n_, c);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < k.a[i]; ++j) t = t * lin[i];
      for (int j = 0; j < k.b[i]; ++j) t = t * lin_bar[i];
    }
    out += t;
  }
  return out;
}

int ZPoly::min_total_degree() const {
  int m = -1;
  for (const auto& [k, c] : terms_) {
    (void)c;
    int d = 0;
    for (int i = 0; i < n_; ++i) d += k.a[i] + k.b[i];
    if (m < 0 || d < m) m = d;
  }
  return m;
}

int ZPoly::max_total_degree() const {
  int m = -1;
  for (const auto& [k, c] : terms_) {
    (void)c;
    int d = 0;
    for (int i = 0; i < n_; ++i) d += k.a[i] + k.b[i];
    m = std::max(m, d);
  }
  return m;
}

double ZPoly::max_abs_coeff_below(int deg) const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) {
    int d = 0;
    for (int i = 0; i < n_; ++i) d += k.a[i] + k.b[i];
    if (d <= deg) m = std::max(m, std::abs(c));
  }
  return m;
}

ZPoly ZPoly::truncate_above_degree_only(int deg) const {
  ZPoly r(n_);
  for (const auto& [k, c] : terms_) {
    int d = 0;
    for (int i = 0; i < n_; ++i) d += k.a[i] + k.b[i];
    if (d > deg) r.add_term(k.a, k.b, c);
  }
  return r;
}

bool ZPoly::is_real(double tol) const {
  for (const auto& [k, c] : terms_) {
    auto it = terms_.find(Key{k.b, k.a});
    Complex mirror = (it == terms_.end()) ? Complex(0, 0) : it->second;
    if (std::abs(c - std::conj(mirror)) > tol) return false;
  }
  return true;
}

}  // namespace bklab
