#pragma once

#include <map>
#include <vector>

#include "bklab/multiindex.hpp"
#include "bklab/types.hpp"

namespace bklab {

/// Polynomial in (z, zbar) over C^n with complex coefficients:
///   p(z) = sum_{a,b} c_{a,b} z^a zbar^b.
/// The function it represents is real iff c_{a,b} = conj(c_{b,a}).
/// Coefficient arithmetic is exact up to floating point, so degree
/// bookkeeping (e.g. "no terms of total degree <= 2") is exact.
class ZPoly {
 public:
  struct Key {
    std::vector<int> a, b;
    bool operator<(const Key& o) const {
      if (a != o.a) return a < o.a;
      return b < o.b;
    }
  };

  ZPoly() : n_(0) {}
  explicit ZPoly(int n) : n_(n) {}

  int vars() const { return n_; }
  bool empty() const { return terms_.empty(); }
  const std::map<Key, Complex>& terms() const { return terms_; }

  static ZPoly constant(int n, Complex c) {
    ZPoly p(n);
    p.add_term(std::vector<int>(n, 0), std::vector<int>(n, 0), c);
    return p;
  }
  /// Monomial z^a zbar^b with coefficient c.
  static ZPoly monomial(const std::vector<int>& a, const std::vector<int>& b, Complex c) {
    ZPoly p(static_cast<int>(a.size()));
    p.add_term(a, b, c);
    return p;
  }

  void add_term(const std::vector<int>& a, const std::vector<int>& b, Complex c) {
    if (static_cast<int>(a.size()) != n_ || static_cast<int>(b.size()) != n_)
      throw domain_error("ZPoly: index size mismatch");
    if (c == Complex(0.0, 0.0)) return;
    auto& slot = terms_[Key{a, b}];
    slot += c;
    if (slot == Complex(0.0, 0.0)) terms_.erase(Key{a, b});
  }

  ZPoly& operator+=(const ZPoly& o);
  ZPoly& operator-=(const ZPoly& o);
  ZPoly operator+(const ZPoly& o) const { ZPoly r = *this; r += o; return r; }
  ZPoly operator-(const ZPoly& o) const { ZPoly r = *this; r -= o; return r; }
  ZPoly operator*(const ZPoly& o) const;
  ZPoly operator*(Complex s) const;

  Complex eval(const Point& z) const;

  /// Complex conjugate of the represented function (swaps a <-> b).
  ZPoly conj() const;
  /// (p + conj(p)) -- twice the real part, still a ZPoly.
  ZPoly plus_conj() const { return *this + conj(); }

  /// Wirtinger derivatives.
  ZPoly dz(int i) const;
  ZPoly dzbar(int i) const;

  /// Substitute z -> T w (and zbar -> conj(T) wbar); linear change of frame.
  ZPoly substitute_linear(const CMat& T) const;

  int min_total_degree() const;  // -1 for the zero polynomial
  int max_total_degree() const;

  /// Largest |coefficient| among terms of total degree <= deg.
  double max_abs_coeff_below(int deg) const;
  /// Drop all terms of total degree <= deg.
  ZPoly truncate_above_degree_only(int deg) const;

  bool is_real(double tol) const;

 private:
  int n_;
  std::map<Key, Complex> terms_;
};

inline ZPoly operator*(Complex s, const ZPoly& p) { return p * s; }

}  // namespace bklab
