#include "bklab/neumann.hpp"

#include <cmath>
#include <sstream>

#include "bklab/modelkernel.hpp"

namespace bklab {
namespace {

Point from_rvec(const RVec& x) {
  Point z(x.size() / 2);
  for (int i = 0; i < z.size(); ++i) z(i) = Complex(x(2 * i), x(2 * i + 1));
  return z;
}

double log_model_prefactor(const RVec& lambda, int k) {
  const int n = static_cast<int>(lambda.size());
  double lp = n * (std::log(2.0) - std::log(kPi)) + n * std::log(double(k));
  for (int i = 0; i < n; ++i) lp += std::log(lambda(i));
  return lp;
}

Complex model_exponent(const RVec& lambda, const Point& z, const Point& y) {
  Complex e(0.0, 0.0);
  for (int j = 0; j < z.size(); ++j)
    e += lambda(j) * (2.0 * z(j) * std::conj(y(j)) - std::norm(z(j)) - std::norm(y(j)));
  return e;
}

}  // namespace

Complex hat_kernel(const WeightSpec& w, int k, const Point& z, const Point& y) {
  if (k < 1) throw domain_error("hat_kernel: k must be >= 1");
  const Complex expo = double(k) * model_exponent(w.lambda(), z, y) -
                       double(k) * w.phi1(z, k) + double(k) * w.phi1(y, k);
  return std::exp(expo + log_model_prefactor(w.lambda(), k));
}

Complex remainder_kernel(const WeightSpec& w, const MetricSpec& met, int k, const Point& z,
                         const Point& y) {
  if (k < 1) throw domain_error("remainder_kernel: k must be >= 1");
  const double rz = met.rho(z), ry = met.rho(y);
  if (rz <= 0.0 || ry <= 0.0)
    throw domain_error("remainder_kernel: density not positive");
  const double delta = double(k) * (w.phi1(z, k) - w.phi1(y, k));
  const double bracket = (ry / rz) * std::exp(delta) - std::exp(-delta);
  if (bracket == 0.0) return Complex(0.0, 0.0);
  const Complex expo = double(k) * model_exponent(w.lambda(), z, y);
  return std::exp(expo + log_model_prefactor(w.lambda(), k)) * bracket;
}

SymbolFamily hat_symbol(const WeightSpec& w) {
  SymbolFamily s;
  s.dim = 2 * w.n();
  s.order = double(w.n());
  const WeightSpec ws = w;
  s.eval = [ws](const RVec& x, const RVec& y, int k) {
    return hat_kernel(ws, k, from_rvec(x), from_rvec(y));
  };
  return s;
}

SymbolFamily remainder_symbol(const WeightSpec& w, const MetricSpec& met) {
  SymbolFamily s;
  s.dim = 2 * w.n();
  s.order = double(w.n()) - 0.5;
  const WeightSpec ws = w;
  const MetricSpec ms = met;
  s.eval = [ws, ms](const RVec& x, const RVec& y, int k) {
    return remainder_kernel(ws, ms, k, from_rvec(x), from_rvec(y));
  };
  return s;
}

SymbolFamily remainder_power(const WeightSpec& w, const MetricSpec& met, int k, int j,
                             const QuadratureGrid& grid) {
  if (j < 1) throw domain_error("remainder_power: j must be >= 1");
  (void)k;
  SymbolFamily r = remainder_symbol(w, met);
  SymbolFamily out = r;
  for (int p = 1; p < j; ++p) out = compose(out, r, grid);
  // each # contributes -d/2 = -n, each R contributes n - 1/2
  out.order = double(w.n()) - 0.5 * j;
  return out;
}

std::vector<KernelGrid> neumann_partial_sums(const WeightSpec& w, const MetricSpec& met,
                                             int k, int M_max, const std::vector<Point>& zs,
                                             const std::vector<Point>& ws,
                                             const PartialSumOptions& opts) {
  if (M_max < 1) throw domain_error("neumann_partial_sum: M must be >= 1");
  if (w.n() != 1)
    throw domain_error("neumann_partial_sum: matrix pipeline implemented for n = 1");

  // Base term on the region.
  const auto hat = [&](const Point& a, const Point& b) { return hat_kernel(w, k, a, b); };
  KernelGrid base = sample_kernel(zs, ws, k, hat);

  std::vector<KernelGrid> sums;
  sums.push_back(base);
  if (M_max == 1) return sums;

  // Shared t-grid: Lebesgue measure on Gauss--Hermite nodes, clustered like
  // the Gaussian envelope of Phat(z,t) R(t,w).
  const auto tg = QuadratureGrid::lebesgue_hermite(1, k, w.lambda(), opts.t_points_per_axis);
  const int T = tg.size();
  const int Z = static_cast<int>(zs.size());
  const int W = static_cast<int>(ws.size());

  std::vector<Point> tnodes(T);
  for (int i = 0; i < T; ++i) tnodes[i] = tg.cnode(i);
  const RVec& tw = tg.weights();

  CMat hat_zt(Z, T);
  for (int i = 0; i < Z; ++i)
    for (int t = 0; t < T; ++t) hat_zt(i, t) = hat_kernel(w, k, zs[i], tnodes[t]);
  CMat r_tw(T, W);
  for (int t = 0; t < T; ++t)
    for (int j = 0; j < W; ++j) r_tw(t, j) = remainder_kernel(w, met, k, tnodes[t], ws[j]);

  // D_j = Phat (diag(w) R)^j on Z x T, advanced by streaming column blocks of
  // the T x T remainder matrix (never materialized in full).
  CMat D = hat_zt;
  for (int M = 2; M <= M_max; ++M) {
    KernelGrid next = sums.back();
    next.values += D * tw.asDiagonal() * r_tw;  // Phat (w R)^{M-2} w R on Z x W
    sums.push_back(next);
    if (M < M_max) {
      const CMat Dw = D * tw.asDiagonal();
      CMat Dnext(Z, T);
      const int block = 512;
      CMat rblock(T, block);
      for (int c0 = 0; c0 < T; c0 += block) {
        const int bc = std::min(block, T - c0);
        for (int a = 0; a < T; ++a)
          for (int c = 0; c < bc; ++c)
            rblock(a, c) = remainder_kernel(w, met, k, tnodes[a], tnodes[c0 + c]);
        Dnext.middleCols(c0, bc) = Dw * rblock.leftCols(bc);
      }
      D = Dnext;
    }
  }
  return sums;
}

KernelGrid neumann_partial_sum(const WeightSpec& w, const MetricSpec& met, int k, int M,
                               const std::vector<Point>& zs, const std::vector<Point>& ws,
                               const PartialSumOptions& opts) {
  return neumann_partial_sums(w, met, k, M, zs, ws, opts).back();
}

std::function<Complex(const Point&, const Point&)> leading_coefficient(const RVec& lambda) {
  if ((lambda.array() <= 0.0).any())
    throw domain_error("leading_coefficient: lambda must be positive");
  const RVec lam = lambda;
  return [lam](const Point& z, const Point& w) { return model_kernel(lam, 1, z, w); };
}

ExpansionFit fit_expansion(const std::vector<int>& ks, const std::vector<CMat>& samples,
                           int n, int J) {
  if (J < 0) throw domain_error("fit_expansion: J must be >= 0");
  if (static_cast<int>(ks.size()) < J + 2)
    throw domain_error("fit_expansion: need at least J+2 distinct k values");
  if (samples.size() != ks.size())
    throw domain_error("fit_expansion: one sample matrix per k required");

  const int K = static_cast<int>(ks.size());
  RMat V(K, J + 1);
  for (int r = 0; r < K; ++r)
    for (int j = 0; j <= J; ++j)
      V(r, j) = std::pow(double(ks[r]), double(n) - 0.5 * j);
  // column scaling for a meaningful condition estimate
  RVec scale(J + 1);
  for (int j = 0; j <= J; ++j) scale(j) = V.col(j).norm();
  RMat Vs = V * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<RMat> svd(Vs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond = svd.singularValues()(0) / svd.singularValues()(J);
  if (!(cond < 1e12))
    throw conditioning_error("fit_expansion: k list too short or clustered (cond " +
                             std::to_string(cond) + ")");

  ExpansionFit fit;
  fit.condition = cond;
  const int rows = static_cast<int>(samples[0].rows());
  const int cols = static_cast<int>(samples[0].cols());
  for (int j = 0; j <= J; ++j) fit.coefficients.emplace_back(CMat::Zero(rows, cols));
  fit.residual_rms = RVec::Zero(K);

  CVec rhs(K);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      for (int t = 0; t < K; ++t) rhs(t) = samples[t](r, c);
      const RVec sol_re = svd.solve(rhs.real().eval());
      const RVec sol_im = svd.solve(rhs.imag().eval());
      CVec sol(J + 1);
      for (int j = 0; j <= J; ++j)
        sol(j) = Complex(sol_re(j), sol_im(j)) / scale(j);
      for (int j = 0; j <= J; ++j) fit.coefficients[j](r, c) = sol(j);
      const CVec resid = rhs - V.cast<Complex>() * sol;
      for (int t = 0; t < K; ++t)
        fit.residual_rms(t) += std::norm(resid(t)) / double(rows * cols);
    }
  fit.residual_rms = fit.residual_rms.cwiseSqrt();
  return fit;
}

std::string coefficients_csv(const std::vector<Point>& us, const std::vector<Point>& vs,
                             const ExpansionFit& fit) {
  std::ostringstream os;
  os.precision(17);
  os << "u_re,u_im,v_re,v_im,j,re,im\n";
  for (size_t j = 0; j < fit.coefficients.size(); ++j)
    for (size_t a = 0; a < us.size(); ++a)
      for (size_t b = 0; b < vs.size(); ++b) {
        const Complex c = fit.coefficients[j](a, b);
        os << us[a](0).real() << "," << us[a](0).imag() << "," << vs[b](0).real() << ","
           << vs[b](0).imag() << "," << j << "," << c.real() << "," << c.imag() << "\n";
      }
  return os.str();
}

std::string ExpansionResult::errors_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "k,M,sup_error,fitted_slope\n";
  for (const auto& [M, errs] : sup_error) {
    for (size_t i = 0; i < ks.size(); ++i) {
      os << ks[i] << "," << M << "," << errs(i) << ","
         << (fitted_slope.count(M) ? fitted_slope.at(M) : 0.0) << "\n";
    }
  }
  return os.str();
}

}  // namespace bklab
