#include "doctest.h"

#include <cmath>

#include "bklab/cutoff.hpp"
#include "bklab/multiindex.hpp"
#include "bklab/poly.hpp"
#include "bklab/quadrature.hpp"
#include "bklab/weight.hpp"

using namespace bklab;

namespace {

Point pt1(Complex z) {
  Point p(1);
  p(0) = z;
  return p;
}

// z^3 + zbar^3 = 2 Re(z^3); coefficient c gives c * 2 Re(z^3).
ZPoly cubic_re_z3(double c) {
  ZPoly p(1);
  p.add_term({3}, {0}, Complex(c, 0.0));
  p.add_term({0}, {3}, Complex(c, 0.0));
  return p;
}

}  // namespace

TEST_CASE("cutoff: center value, far field, scaled support radius") {
  const auto chi = make_cutoff(CutoffProfile::standard(), 100, 0.1, 8.0);
  CHECK(chi(pt1({0.0, 0.0})) == doctest::Approx(1.0));
  CHECK(chi(pt1({1.0, 0.0})) == doctest::Approx(0.0));
  CHECK(chi(pt1({0.0, 1.0})) == doctest::Approx(0.0));

  // Support radius at k=16, eps=0.1, factor 8: outer/(8*16^{0.4}).
  // Oracle: direct evaluation of the scaling formula on a radial grid --
  // strictly positive just inside the scaled support, zero at and beyond it.
  const auto chi16 = make_cutoff(CutoffProfile::standard(), 16, 0.1, 8.0);
  const double expected = 1.0 / (8.0 * std::pow(16.0, 0.4));
  CHECK(chi16(pt1({0.99 * expected, 0.0})) > 0.0);
  CHECK(chi16(pt1({1.0 * expected, 0.0})) == 0.0);
  for (double f = 1.0; f <= 2.0; f += 0.1) CHECK(chi16(pt1({f * expected, 0.0})) == 0.0);
  // exactly 1 inside the scaled inner ball
  const double inner16 = 0.5 / (8.0 * std::pow(16.0, 0.4));
  CHECK(chi16(pt1({0.99 * inner16, 0.0})) == 1.0);
}

TEST_CASE("cutoff: range, smooth transition, nesting, parameter validation") {
  const CutoffProfile chi = CutoffProfile::standard();
  for (double r = 0.0; r <= 1.5; r += 0.01) {
    CHECK(chi.value(r) >= 0.0);
    CHECK(chi.value(r) <= 1.0);
  }
  // derivative consistency against central differences in the transition zone
  for (double r = 0.55; r < 0.95; r += 0.05) {
    const double h = 1e-5;
    const double fd = (chi.value(r + h) - chi.value(r - h)) / (2.0 * h);
    CHECK(chi.d1(r) == doctest::Approx(fd).epsilon(1e-5));
    const double fd2 = (chi.d1(r + h) - chi.d1(r - h)) / (2.0 * h);
    CHECK(chi.d2(r) == doctest::Approx(fd2).epsilon(1e-4));
  }
  // chi_k (1 - chitilde_k) == 0 when chitilde == 1 on supp chi
  const auto chik = make_cutoff(CutoffProfile(0.5, 1.0), 50, 0.1, 8.0);
  const auto chitk = make_cutoff(CutoffProfile(1.0, 2.0), 50, 0.1, 8.0);
  for (double r = 0.0; r < 0.2; r += 0.001) {
    const double prod = chik(pt1({r, 0.0})) * (1.0 - chitk(pt1({r, 0.0})));
    CHECK(prod == 0.0);
  }
  CHECK_THROWS_AS(make_cutoff(chi, 0, 0.1, 8.0), domain_error);
  CHECK_THROWS_AS(make_cutoff(chi, 10, 0.2, 8.0), domain_error);
  CHECK_THROWS_AS(make_cutoff(chi, 10, 0.1, -1.0), domain_error);
}

TEST_CASE("partition: near-diagonal one, symmetry, support") {
  const PartitionSpec eta(0.5);
  Point z = pt1({0.2, 0.1}), w = pt1({0.3, -0.2});
  CHECK(eta.eta(z, w) == doctest::Approx(1.0));  // |z-w| < 0.5
  CHECK(eta.eta(z, w) == eta.eta(w, z));
  CHECK(eta.eta(pt1({0.0, 0.0}), pt1({1.5, 0.0})) == 0.0);  // |z-w| >= 1
  for (double s = 0.0; s < 1.4; s += 0.05) {
    const double v = eta.eta(pt1({0.0, 0.0}), pt1({s, 0.0}));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("quadrature: gaussian golden values") {
  RVec lam(1);
  lam << 0.5;
  const auto grid = QuadratureGrid::gaussian_weighted(1, 1, lam, 40);

  // f == 1: integral of e^{-|z|^2} dm = pi  (polar coordinates)
  const Complex one = grid.integrate([](const Point&) { return Complex(1.0, 0.0); });
  CHECK(one.real() == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(std::abs(one.imag()) < 1e-14);

  // f == 0
  const Complex zero = grid.integrate([](const Point&) { return Complex(0.0, 0.0); });
  CHECK(std::abs(zero) == 0.0);

  // f = |z|^2: integral of |z|^2 e^{-|z|^2} dm = pi
  const Complex second =
      grid.integrate([](const Point& z) { return Complex(std::norm(z(0)), 0.0); });
  CHECK(second.real() == doctest::Approx(kPi).epsilon(1e-12));

  // non-finite sample rejected
  CHECK_THROWS_AS(grid.integrate([](const Point&) {
    return Complex(std::numeric_limits<double>::infinity(), 0.0);
  }),
                  domain_error);
}

TEST_CASE("quadrature: monomial exactness against the polar-coordinate identity") {
  // int z^a zbar^b e^{-2k lambda |z|^2} dm = 0 for a != b, and
  // pi a! / (2 k lambda)^{a+1} for a == b  (polar coordinates + Gamma).
  RVec lam(1);
  lam << 1.3;
  const int k = 3;
  const auto grid = QuadratureGrid::gaussian_weighted(1, k, lam, 24);
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b) {
      const Complex got = grid.integrate([&](const Point& z) {
        Complex t(1.0, 0.0);
        for (int i = 0; i < a; ++i) t *= z(0);
        for (int i = 0; i < b; ++i) t *= std::conj(z(0));
        return t;
      });
      if (a == b) {
        double expect = kPi;
        for (int i = 1; i <= a; ++i) expect *= i;
        expect /= std::pow(2.0 * k * lam(0), a + 1);
        CHECK(got.real() == doctest::Approx(expect).epsilon(1e-10));
      } else {
        CHECK(std::abs(got) < 1e-12);
      }
    }
}

TEST_CASE("quadrature: legendre box integrates polynomials exactly") {
  const auto box = QuadratureGrid::lebesgue_box(2, 1.5, 12);
  // int_{[-L,L]^2} x^2 y^4 = (2L^3/3)(2L^5/5)
  const Complex got = box.integrate_real_nodes([](const RVec& x) {
    return Complex(x(0) * x(0) * std::pow(x(1), 4), 0.0);
  });
  const double L = 1.5;
  const double expect = (2.0 * std::pow(L, 3) / 3.0) * (2.0 * std::pow(L, 5) / 5.0);
  CHECK(got.real() == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("eval_weight: cutoff support and interior values") {
  RVec lam(1);
  lam << 0.5;

  // p == 0: phi_hat = phi0 everywhere
  WeightSpec flat(lam, ZPoly(1), 0.1);
  CHECK(eval_weight(flat, 10, pt1({0.3, 0.4})) ==
        doctest::Approx(0.5 * 0.25).epsilon(1e-15));

  // cubic perturbation 0.1 * 2Re? -- spec uses p = 0.1 Re(z^3); build it as
  // 0.05 (z^3 + zbar^3).
  WeightSpec pert(lam, cubic_re_z3(0.05), 0.1);

  // outside |z| > k^{eps-1/2}: phi_hat == phi0 regardless of p
  const int k = 100;
  const double edge = std::pow(double(k), 0.1 - 0.5);
  const Point far = pt1({1.3 * edge, 0.0});
  CHECK(eval_weight(pert, k, far) == doctest::Approx(pert.phi0(far)).epsilon(1e-15));

  // inside V_k (theta_k = 1): phi_hat = 0.5|z|^2 + 0.1 Re(z^3)
  const Point in = pt1({0.2 * edge, 0.1 * edge});
  const double expect = 0.5 * std::norm(in(0)) + 0.1 * std::pow(in(0), 3).real();
  CHECK(eval_weight(pert, k, in) == doctest::Approx(expect).epsilon(1e-13));

  // smooth in z: dzbar matches finite differences
  const Point probe = pt1({0.6 * edge, 0.2 * edge});
  const double h = 1e-7;
  const double fx = (pert.weight(probe + pt1({h, 0}), k) - pert.weight(probe - pt1({h, 0}), k)) /
                    (2 * h);
  const double fy = (pert.weight(probe + pt1({0, h}), k) - pert.weight(probe - pt1({0, h}), k)) /
                    (2 * h);
  const Complex dz_fd = 0.5 * Complex(fx, fy);  // d/dzbar = (d_x + i d_y)/2
  CHECK(pert.dzbar(probe, k, 0).real() == doctest::Approx(dz_fd.real()).epsilon(1e-6));
  CHECK(pert.dzbar(probe, k, 0).imag() == doctest::Approx(dz_fd.imag()).epsilon(1e-6));
}

TEST_CASE("weight spec: construction guards") {
  RVec lam(1);
  lam << 0.5;
  ZPoly quad(1);
  quad.add_term({1}, {1}, Complex(1.0, 0.0));  // |z|^2 has degree 2
  CHECK_THROWS_AS(WeightSpec(lam, quad, 0.1), domain_error);
  RVec bad(1);
  bad << -1.0;
  CHECK_THROWS_AS(WeightSpec(bad, ZPoly(1), 0.1), domain_error);
  CHECK_THROWS_AS(WeightSpec(lam, ZPoly(1), 0.3), domain_error);
  ZPoly notreal(1);
  notreal.add_term({3}, {0}, Complex(0.0, 1.0));
  CHECK_THROWS_AS(WeightSpec(lam, notreal, 0.1), domain_error);
}

TEST_CASE("metric spec: density bounds and triviality outside the support") {
  MetricSpec trivial(1);
  CHECK(trivial.rho(pt1({0.3, 0.0})) == 1.0);

  ZPoly q(1);
  q.add_term({1}, {1}, Complex(0.2, 0.0));  // 0.2 |z|^2
  MetricSpec m(1, q, 1.0);
  CHECK(m.rho(pt1({2.0, 0.0})) == 1.0);
  CHECK(m.rho(pt1({0.1, 0.0})) == doctest::Approx(1.0 + 0.2 * 0.01));
  CHECK(m.rho_min() > 0.0);

  ZPoly qbad(1);
  qbad.add_term({0}, {0}, Complex(-2.0, 0.0));  // pushes rho to -1 near 0
  CHECK_THROWS_AS(MetricSpec(1, qbad, 1.0), domain_error);
}

TEST_CASE("multi-index enumeration and factorials") {
  const auto all = MultiIndex::all_up_to(2, 3);
  CHECK(all.size() == 10);  // (3+2 choose 2)
  CHECK(all.front().order() == 0);
  MultiIndex a({2, 3});
  CHECK(a.order() == 5);
  CHECK(a.factorial() == doctest::Approx(12.0));
  CHECK(a.log_factorial() == doctest::Approx(std::log(12.0)));
  CHECK_THROWS_AS(MultiIndex({-1, 0}), domain_error);
}

TEST_CASE("zpoly: algebra, conjugation, derivatives, substitution") {
  ZPoly p(1);
  p.add_term({2}, {1}, Complex(1.0, 2.0));  // (1+2i) z^2 zbar
  const Point z = pt1({0.3, 0.7});
  const Complex expect = Complex(1.0, 2.0) * z(0) * z(0) * std::conj(z(0));
  CHECK(std::abs(p.eval(z) - expect) < 1e-15);
  CHECK(std::abs(p.conj().eval(z) - std::conj(expect)) < 1e-15);

  const ZPoly dp = p.dz(0);
  CHECK(std::abs(dp.eval(z) - Complex(2.0, 0.0) * Complex(1.0, 2.0) * z(0) * std::conj(z(0))) <
        1e-15);

  // substitution z -> 2i w agrees with direct evaluation
  CMat T(1, 1);
  T(0, 0) = Complex(0.0, 2.0);
  const ZPoly ps = p.substitute_linear(T);
  const Point w = pt1({0.5, -0.2});
  Point tw(1);
  tw(0) = T(0, 0) * w(0);
  CHECK(std::abs(ps.eval(w) - p.eval(tw)) < 1e-14);

  CHECK(p.min_total_degree() == 3);
  ZPoly realp = p.plus_conj();
  CHECK(realp.is_real(1e-15));
}
