// Acceptance suite: one line per criterion, PASS/FAIL with measured values.
// Exit status = number of failed criteria.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "bklab/dbar.hpp"
#include "bklab/experiments.hpp"
#include "bklab/normalform.hpp"
#include "bklab/symbols.hpp"

using namespace bklab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Point pt1(Complex z) {
  Point p(1);
  p(0) = z;
  return p;
}

ZPoly cubic_re_z3(int n, double coeff) {
  ZPoly p(n);
  std::vector<int> a(n, 0), b(n, 0);
  a[0] = 3;
  b[0] = 3;
  p.add_term(a, std::vector<int>(n, 0), Complex(0.5 * coeff, 0.0));
  p.add_term(std::vector<int>(n, 0), b, Complex(0.5 * coeff, 0.0));
  return p;
}

/// The perturbed configuration shared by criteria 4-6: n=1, lambda=1/2,
/// eps=0.1, cubic coefficient 0.1, gentle (1,3) cutoff profile.
WeightSpec perturbed_weight() {
  RVec lam(1);
  lam << 0.5;
  return WeightSpec(lam, cubic_re_z3(1, 0.1), 0.1, CutoffProfile(1.0, 3.0));
}

// ---------------------------------------------------------------- criterion 1
Outcome criterion1() {
  const std::vector<double> lams = {0.5, 1.0, 2.3};
  double worst = 0.0;
  for (int n = 1; n <= 2; ++n) {
    std::vector<RVec> lambdas;
    if (n == 1) {
      for (double a : lams) {
        RVec l(1);
        l << a;
        lambdas.push_back(l);
      }
    } else {
      for (double a : lams)
        for (double b : lams) {
          RVec l(2);
          l << a, b;
          lambdas.push_back(l);
        }
    }
    const int m = n == 1 ? 24 : 16;
    for (const RVec& lambda : lambdas)
      for (int k : {1, 4}) {
        const auto grid = QuadratureGrid::gaussian_weighted(n, k, lambda, m);
        for (const auto& alpha : MultiIndex::all_up_to(n, 6)) {
          const Complex got = grid.integrate([&](const Point& z) {
            Complex t(1.0, 0.0);
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < alpha[i]; ++j) t *= std::norm(z(i));
            return t;
          });
          const double expect = monomial_norm(alpha, lambda, k);
          worst = std::max(worst, std::abs(got.real() - expect) / expect);
        }
      }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max rel err %.3e (tol 1e-10)", worst);
  return {worst <= 1e-10, buf};
}

// ---------------------------------------------------------------- criterion 2
Outcome criterion2() {
  std::mt19937 rng(20260811);
  std::uniform_real_distribution<double> coord(-0.5, 0.5);
  std::uniform_real_distribution<double> lamd(0.3, 2.3);
  std::uniform_int_distribution<int> kd(1, 256);
  std::uniform_int_distribution<int> nd(1, 3);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = nd(rng);
    RVec lam(n);
    Point z(n), w(n);
    for (int i = 0; i < n; ++i) {
      lam(i) = lamd(rng);
      z(i) = Complex(coord(rng), coord(rng));
      w(i) = Complex(coord(rng), coord(rng));
    }
    const int k = kd(rng);
    const double sk = std::sqrt(double(k));
    const Complex lhs = std::pow(double(k), n) * model_kernel(lam, 1, sk * z, sk * w);
    const Complex rhs = model_kernel(lam, k, z, w);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max rel err %.3e over 1000 triples (tol 1e-12)", worst);
  return {worst <= 1e-12, buf};
}

// ---------------------------------------------------------------- criterion 3
Outcome criterion3() {
  RVec lam(1);
  lam << 0.5;
  const int k = 20;
  const auto grid = QuadratureGrid::gaussian_weighted(1, k, lam, 80);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> cd(-1.0, 1.0);
  const auto probes = disk_nodes(3.0 / std::sqrt(double(k)), 2, 6);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> coeff(6);
    for (auto& c : coeff) c = Complex(cd(rng), cd(rng));
    auto h = [&](const Point& p) {
      Complex acc(0.0, 0.0), zp(1.0, 0.0);
      for (const Complex& c : coeff) {
        acc += c * zp;
        zp *= p(0);
      }
      return acc;
    };
    double sup_u = 0.0, sup_diff = 0.0;
    for (const auto& z : probes) {
      const auto r = reproduce_check(lam, k, h, 5, z, grid);
      const Complex expect = h(z) * std::exp(-double(k) * 0.5 * std::norm(z(0)));
      sup_u = std::max(sup_u, std::abs(expect));
      sup_diff = std::max(sup_diff, std::abs(r.value - expect));
    }
    worst = std::max(worst, sup_diff / sup_u);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "sup rel err %.3e over 20 random h (tol 1e-6)", worst);
  return {worst <= 1e-6, buf};
}

// ---------------------------------------------------------------- criterion 4
Outcome criterion4() {
  const WeightSpec w = perturbed_weight();
  const MetricSpec met(1);
  const std::vector<int> ks = {25, 50, 100, 200, 400};
  std::vector<double> xs, ys;
  const Point origin = Point::Zero(1);
  for (int k : ks) {
    const int A = default_basis_degree(k, 0.1) + 6;
    const auto grid =
        QuadratureGrid::gaussian_weighted(1, k, w.lambda(), std::max(120, A + 1));
    const OracleBasis basis = build_basis(w, met, k, A, grid);
    const double ratio =
        oracle_kernel(basis, w, origin, origin).real() / model_diagonal(w.lambda(), k);
    xs.push_back(double(k));
    ys.push_back(std::abs(ratio - 1.0));
  }
  const LogLogFit fit = fit_loglog(xs, ys);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "|ratio-1|: %.2e -> %.2e, fitted decay exponent %.3f (need >= 0.4)",
                ys.front(), ys.back(), -fit.slope);
  return {-fit.slope >= 0.4, buf};
}

// ---------------------------------------------------------------- criterion 5
Outcome criterion5() {
  const WeightSpec w = perturbed_weight();
  const MetricSpec met(1);
  const std::vector<int> ks = {25, 50, 100, 200, 400};
  // M counts the gauge-remainder corrections kept: the partial sum with
  // corrections through R^{#M} is neumann_partial_sum(M+1), and the exact
  // error is the P # R^{#(M+1)} tail of symbol order n - (M+1)/2.
  std::map<int, std::vector<double>> errs;  // M -> per-k sup error
  for (int k : ks) {
    const double r = 0.5 / std::sqrt(double(k));
    const auto zs = disk_nodes(r, 2, 6);
    const int A = basis_degree_for_radius(w, k, r, 16);
    const auto ggrid =
        QuadratureGrid::gaussian_weighted(1, k, w.lambda(), std::max(120, A + 1));
    const OracleBasis basis = build_basis(w, met, k, A, ggrid);
    const KernelGrid oracle = oracle_kernel_grid(basis, w, zs, zs);
    PartialSumOptions opts;
    opts.t_points_per_axis = 72;
    const auto sums = neumann_partial_sums(w, met, k, 3, zs, zs, opts);
    for (int M : {1, 2})
      errs[M].push_back(compare(oracle, sums[M], ErrorNorm::Sup).error);
  }
  const std::vector<double> xs(ks.begin(), ks.end());
  bool pass = true;
  std::string detail;
  for (int M : {1, 2}) {
    const double slope = fit_loglog(xs, errs[M]).slope;
    const double target = 1.0 - 0.5 * double(M + 1);
    if (std::abs(slope - target) > 0.3) pass = false;
    char buf[96];
    std::snprintf(buf, sizeof buf, "M=%d slope %.3f (target %.1f +/- 0.3)  ", M, slope,
                  target);
    detail += buf;
  }
  return {pass, detail};
}

// ---------------------------------------------------------------- criterion 6
Outcome criterion6() {
  ExperimentConfig cfg;
  cfg.n = 1;
  cfg.lambda = RVec(1);
  cfg.lambda << 0.5;
  cfg.perturbation = cubic_re_z3(1, 0.1);
  cfg.cutoff = CutoffProfile(1.0, 3.0);
  cfg.epsilon = 0.1;
  cfg.k_values = {100, 400};
  cfg.quad_order = 120;
  const OffdiagSweep sweep = run_offdiag_sweep(cfg, 2);
  const double drop = sweep.statistic.front() / sweep.statistic.back();
  char buf[160];
  std::snprintf(buf, sizeof buf, "statistic %.3e -> %.3e, drop factor %.1f (need >= 10)",
                sweep.statistic.front(), sweep.statistic.back(), drop);
  return {drop >= 10.0, buf};
}

// ---------------------------------------------------------------- criterion 7
Outcome criterion7() {
  RVec lam(1);
  lam << 0.5;
  const WeightSpec model(lam, ZPoly(1), 0.1);
  bool pass = true;
  std::string detail;
  std::vector<double> xs, ys;
  for (int k : {10, 20, 40, 80}) {
    const GapReport rep = measure_gap(model, k, Grid2D::standard(model, k));
    if (k <= 40 && std::abs(rep.ratio_over_k - 1.0) > 0.05) pass = false;
    xs.push_back(double(k));
    ys.push_back(rep.min_eig);
    if (k <= 40) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "ratio(k=%d)=%.4f ", k, rep.ratio_over_k);
      detail += buf;
    }
  }
  const double slope_model = fit_loglog(xs, ys).slope;
  if (slope_model < 0.95 || slope_model > 1.05) pass = false;

  const WeightSpec pert(lam, cubic_re_z3(1, 0.05), 0.1, CutoffProfile(1.0, 3.0));
  std::vector<double> ysp;
  for (int k : {10, 20, 40, 80})
    ysp.push_back(measure_gap(pert, k, Grid2D::standard(pert, k)).min_eig);
  const double slope_pert = fit_loglog(xs, ysp).slope;
  if (slope_pert < 0.95 || slope_pert > 1.05) pass = false;

  char buf[96];
  std::snprintf(buf, sizeof buf, "slopes: model %.4f, cubic %.4f (need [0.95,1.05])",
                slope_model, slope_pert);
  detail += buf;
  return {pass, detail};
}

// ---------------------------------------------------------------- criterion 8
Outcome criterion8() {
  RVec lam(1);
  lam << 0.5;
  const WeightSpec w(lam, ZPoly(1), 0.1);
  const int k = 20;
  const Grid2D g = Grid2D::standard(w, k);
  CVec alpha(g.centers());
  for (int p = 0; p < g.centers(); ++p)
    alpha(p) = std::exp(-double(k) * 0.5 * std::norm(g.center(p)));
  const DbarSolution sol = solve_dbar(alpha, w, k, g);
  // continuum saturation: ||u|| = ||alpha|| / sqrt(2 k lambda)
  const double expect = alpha.norm() / std::sqrt(2.0 * k * 0.5);
  const double ratio = sol.u.norm() / expect;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "residual %.3e (tol 1e-5), norm/saturated-bound %.5f (need [0.99,1.01])",
                sol.residual_rel, ratio);
  return {sol.residual_rel <= 1e-5 && ratio >= 0.99 && ratio <= 1.01, buf};
}

// ---------------------------------------------------------------- criterion 9
Outcome criterion9() {
  RVec lam(1);
  lam << 0.5;
  const WeightSpec w(lam, cubic_re_z3(1, 0.05), 0.1, CutoffProfile(1.0, 3.0));
  const MetricSpec met(1);
  const int k = 24;

  const int A = basis_degree_for_radius(w, k, 3.5 / std::sqrt(double(k)), 16);
  const auto ggrid =
      QuadratureGrid::gaussian_weighted(1, k, w.lambda(), std::max(100, A + 1));
  const OracleBasis basis = build_basis(w, met, k, A, ggrid);

  auto test_function = [&](Complex z) {
    const Complex zb = std::conj(z);
    return (Complex(0.4, 0.1) + 0.8 * zb + Complex(0.3, -0.2) * z * z + 0.2 * zb * zb -
            0.1 * z * zb) *
           std::exp(-double(k) * w.weight(pt1(z), k));
  };

  const Grid2D base = Grid2D::standard(w, k);
  const Grid2D fine(base.half_width, (3 * base.points_per_side) / 2);
  double err_base = 0.0, err_fine = 0.0;
  for (const Grid2D* gp : {&base, &fine}) {
    const Grid2D& g = *gp;
    CVec u(g.nodes());
    for (int p = 0; p < g.nodes(); ++p) u(p) = test_function(g.node(p));
    const CVec hodge = hodge_project(u, w, k, g);

    // oracle projection in the same gauge, quantized over the grid measure
    const int d = basis.size();
    CMat psi(d, g.nodes());
    for (int p = 0; p < g.nodes(); ++p) {
      Point z = pt1(g.node(p));
      psi.col(p) = (basis.transform * normalized_monomials(lam, k, A, z)) *
                   std::exp(-double(k) * w.weight(z, k));
    }
    const double h2 = g.spacing() * g.spacing();
    const CVec coeffs = h2 * (psi.conjugate() * u);
    const CVec oracle_proj = psi.transpose() * coeffs;

    double num = 0.0, den = 0.0;
    const double r_cmp = 3.0 / std::sqrt(double(k));
    for (int p = 0; p < g.nodes(); ++p) {
      if (std::abs(g.node(p)) > r_cmp) continue;
      num += std::norm(hodge(p) - oracle_proj(p));
      den += std::norm(oracle_proj(p));
    }
    const double err = std::sqrt(num / den);
    (gp == &base ? err_base : err_fine) = err;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "rel L2: base %.3e, refined %.3e (tol 1e-2, refined must improve)",
                err_base, err_fine);
  return {err_base <= 1e-2 && err_fine <= 1e-2 && err_fine < err_base, buf};
}

// --------------------------------------------------------------- criterion 10
Outcome criterion10() {
  // gaussian composition against the analytic convolution
  SymbolFamily a;
  a.dim = 1;
  a.order = 0.0;
  a.eval = [](const RVec& x, const RVec& y, int k) {
    const double d = x(0) - y(0);
    return Complex(std::exp(-double(k) * d * d), 0.0);
  };
  const double L = 3.0 / 5.0 + 9.0 / 5.0;  // covers k >= 25 probes
  const int m = std::max(64, int(2.5 * L * 20.0 / 0.25));
  const auto grid = QuadratureGrid::lebesgue_box(1, L, m);
  const SymbolFamily ab = compose(a, a, grid);
  double worst = 0.0;
  for (int k : {25, 100, 400})
    for (double u = -2.0; u <= 2.0; u += 0.5) {
      const double x = u / std::sqrt(double(k));
      RVec xv(1), yv(1);
      xv << x;
      yv << 0.0;
      const Complex got = ab.eval(xv, yv, k);
      const double expect = std::sqrt(kPi / (2.0 * k)) * std::exp(-0.5 * k * x * x);
      worst = std::max(worst, std::abs(got - Complex(expect, 0.0)) / expect);
    }

  // involution is bit-exact
  SymbolFamily b;
  b.dim = 1;
  b.order = 0.0;
  b.eval = [](const RVec& x, const RVec& y, int) { return Complex(x(0), y(0) * 2.0); };
  const SymbolFamily bss = adjoint(adjoint(b));
  bool involution = true;
  for (double x = -1.0; x <= 1.0; x += 0.4)
    for (double y = -1.0; y <= 1.0; y += 0.4) {
      RVec xv(1), yv(1);
      xv << x;
      yv << y;
      const Complex q = b.eval(xv, yv, 3), r = bss.eval(xv, yv, 3);
      if (q.real() != r.real() || q.imag() != r.imag()) involution = false;
    }

  // composed order passes membership with no >10% growth
  SymbolFamily ka;
  ka.dim = 1;
  ka.order = 1.0;
  ka.eval = [](const RVec& x, const RVec& y, int k) {
    const double d = x(0) - y(0);
    return Complex(double(k) * std::exp(-double(k) * d * d), 0.0);
  };
  SymbolFamily kb = ka;
  kb.order = 0.5;
  kb.eval = [](const RVec& x, const RVec& y, int k) {
    const double d = x(0) - y(0);
    return Complex(std::pow(double(k), 0.5) * std::exp(-1.5 * double(k) * d * d), 0.0);
  };
  const SymbolFamily comp = compose(ka, kb, grid);
  const auto rep = estimate_membership(comp, comp.order, {{{0}, {0}}}, {2, 4},
                                       SemiclassParams({25, 50, 100, 200, 400}, 0.1),
                                       make_scaled_probe_pairs(1, 2.5, 4));
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "composition rel err %.3e (tol 1e-8); involution %s; membership %s", worst,
                involution ? "bit-exact" : "BROKEN", rep.pass ? "pass" : "fail");
  return {worst <= 1e-8 && involution && rep.pass, buf};
}

// --------------------------------------------------------------- criterion 11
Outcome criterion11() {
  std::mt19937 rng(424242);
  auto rand_c = [&](double s) {
    std::uniform_real_distribution<double> d(-s, s);
    return Complex(d(rng), d(rng));
  };
  double worst_rt = 0.0, worst_res = 0.0;
  int count = 0;
  for (int n = 1; n <= 3; ++n) {
    const int trials = n == 1 ? 34 : 33;
    for (int t = 0; t < trials; ++t) {
      TaylorWeight tw(n);
      std::uniform_real_distribution<double> d(-0.4, 0.4);
      tw.constant = d(rng);
      for (int i = 0; i < n; ++i) tw.lin(i) = rand_c(0.4);
      CMat Q(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Q(i, j) = rand_c(0.3);
      tw.quad_hol = 0.5 * (Q + Q.transpose()).eval();
      CMat A(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rand_c(1.0);
      tw.quad_mixed = (A * A.adjoint() + 0.3 * CMat::Identity(n, n)).eval();
      for (int term = 0; term < 4; ++term) {
        std::uniform_int_distribution<int> pick(0, n - 1), dd(3, 5);
        std::vector<int> av(n, 0), bv(n, 0);
        const int deg = dd(rng);
        for (int j = 0; j < deg; ++j) (j % 2 == 0 ? av : bv)[pick(rng)] += 1;
        const Complex c = rand_c(0.2);
        tw.higher.add_term(av, bv, c);
        tw.higher.add_term(bv, av, std::conj(c));
      }
      CMat B(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = rand_c(0.6);
      const CMat metric = (B * B.adjoint() + 0.5 * CMat::Identity(n, n)).eval();

      const NormalForm nf = normalize_weight(tw, metric);
      worst_res = std::max(worst_res, nf.residual.max_abs_coeff_below(2));
      const TaylorWeight back = reconstruct_weight(nf, metric);
      worst_rt = std::max(worst_rt, taylor_distance(tw, back));
      ++count;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d germs: round trip %.3e (tol 1e-10), low-degree residual %.3e (tol 1e-12)",
                count, worst_rt, worst_res);
  return {worst_rt <= 1e-10 && worst_res <= 1e-12, buf};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {"closed-form monomial norms vs quadrature", criterion1},
      {"semiclassical scaling identity", criterion2},
      {"model reproducing property", criterion3},
      {"leading diagonal asymptotics (oracle)", criterion4},
      {"neumann convergence order", criterion5},
      {"off-diagonal negligibility", criterion6},
      {"spectral gap of the deformed complex", criterion7},
      {"L2-existence with saturated bound", criterion8},
      {"hodge / oracle projection agreement", criterion9},
      {"symbol calculus (compose/adjoint/order)", criterion10},
      {"normal form round trip", criterion11},
  };

  int failures = 0;
  int idx = 0;
  for (const auto& e : entries) {
    ++idx;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.fn();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail = std::string("exception: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%2d] %-44s %s  (%.1fs)  %s\n", idx, e.name,
                out.pass ? "PASS" : "FAIL", secs, out.detail.c_str());
    if (!out.pass) ++failures;
  }
  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures;
}
