#include "bklab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace bklab {
namespace {

int total(const std::vector<int>& v) {
  int s = 0;
  for (int e : v) s += e;
  return s;
}

Complex fd_derivative(const SymbolFamily& a, std::vector<int> alpha, std::vector<int> beta,
                      const RVec& x, const RVec& y, int k) {
  // peel one derivative at a time, 4th-order central stencil
  for (int i = 0; i < a.dim; ++i) {
    if (alpha[i] > 0) {
      alpha[i] -= 1;
      const double h = 1e-3 * (1.0 + x.norm()) / std::sqrt(double(k));
      RVec xp = x, xm = x, xpp = x, xmm = x;
      xp(i) += h;
      xm(i) -= h;
      xpp(i) += 2 * h;
      xmm(i) -= 2 * h;
      const Complex f1 = fd_derivative(a, alpha, beta, xp, y, k);
      const Complex f2 = fd_derivative(a, alpha, beta, xm, y, k);
      const Complex f3 = fd_derivative(a, alpha, beta, xpp, y, k);
      const Complex f4 = fd_derivative(a, alpha, beta, xmm, y, k);
      return (-f3 + 8.0 * f1 - 8.0 * f2 + f4) / (12.0 * h);
    }
    if (beta[i] > 0) {
      beta[i] -= 1;
      const double h = 1e-3 * (1.0 + y.norm()) / std::sqrt(double(k));
      RVec yp = y, ym = y, ypp = y, ymm = y;
      yp(i) += h;
      ym(i) -= h;
      ypp(i) += 2 * h;
      ymm(i) -= 2 * h;
      const Complex f1 = fd_derivative(a, alpha, beta, x, yp, k);
      const Complex f2 = fd_derivative(a, alpha, beta, x, ym, k);
      const Complex f3 = fd_derivative(a, alpha, beta, x, ypp, k);
      const Complex f4 = fd_derivative(a, alpha, beta, x, ymm, k);
      return (-f3 + 8.0 * f1 - 8.0 * f2 + f4) / (12.0 * h);
    }
  }
  return a.eval(x, y, k);
}

}  // namespace

Complex SymbolFamily::derivative(const std::vector<int>& alpha, const std::vector<int>& beta,
                                 const RVec& x, const RVec& y, int k) const {
  if (static_cast<int>(alpha.size()) != dim || static_cast<int>(beta.size()) != dim)
    throw domain_error("SymbolFamily::derivative: index size mismatch");
  if (deriv) return deriv(alpha, beta, x, y, k);
  if (total(alpha) == 0 && total(beta) == 0) return eval(x, y, k);
  return fd_derivative(*this, alpha, beta, x, y, k);
}

SymbolFamily adjoint(const SymbolFamily& a) {
  SymbolFamily out;
  out.dim = a.dim;
  out.order = a.order;
  auto inner = a.eval;
  out.eval = [inner](const RVec& x, const RVec& y, int k) {
    return std::conj(inner(y, x, k));
  };
  if (a.deriv) {
    auto ad = a.deriv;
    out.deriv = [ad](const std::vector<int>& alpha, const std::vector<int>& beta,
                     const RVec& x, const RVec& y, int k) {
      return std::conj(ad(beta, alpha, y, x, k));
    };
  }
  return out;
}

SymbolFamily product(const SymbolFamily& a, const SymbolFamily& b) {
  if (a.dim != b.dim) throw domain_error("product: dimension mismatch");
  SymbolFamily out;
  out.dim = a.dim;
  out.order = a.order + b.order;
  auto ea = a.eval, eb = b.eval;
  out.eval = [ea, eb](const RVec& x, const RVec& y, int k) {
    return ea(x, y, k) * eb(x, y, k);
  };
  return out;
}

SymbolFamily x_derivative(const SymbolFamily& a, int i) {
  if (i < 0 || i >= a.dim) throw domain_error("x_derivative: index out of range");
  SymbolFamily out;
  out.dim = a.dim;
  out.order = a.order + 0.5;
  SymbolFamily base = a;
  out.eval = [base, i](const RVec& x, const RVec& y, int k) {
    std::vector<int> alpha(base.dim, 0), beta(base.dim, 0);
    alpha[i] = 1;
    return base.derivative(alpha, beta, x, y, k);
  };
  return out;
}

namespace {

/// Indices of nodes in the outermost layer of a tensor grid (largest
/// |coordinate| per axis), used for the tail-mass guard.
std::vector<char> boundary_mask(const QuadratureGrid& grid) {
  const int d = grid.real_dim();
  RVec axis_max = RVec::Zero(d);
  for (int i = 0; i < grid.size(); ++i)
    for (int a = 0; a < d; ++a) axis_max(a) = std::max(axis_max(a), std::abs(grid.nodes()(i, a)));
  std::vector<char> mask(grid.size(), 0);
  for (int i = 0; i < grid.size(); ++i)
    for (int a = 0; a < d; ++a)
      if (std::abs(grid.nodes()(i, a)) >= 0.999 * axis_max(a)) {
        mask[i] = 1;
        break;
      }
  return mask;
}

}  // namespace

SymbolFamily compose(const SymbolFamily& a, const SymbolFamily& b, const QuadratureGrid& grid,
                     double tail_tol) {
  if (a.dim != b.dim) throw domain_error("compose: dimension mismatch");
  if (grid.real_dim() != a.dim) throw domain_error("compose: grid dimension mismatch");
  SymbolFamily out;
  out.dim = a.dim;
  out.order = a.order + b.order - 0.5 * a.dim;
  auto mask = std::make_shared<std::vector<char>>(boundary_mask(grid));
  auto ea = a.eval, eb = b.eval;
  const QuadratureGrid g = grid;
  out.eval = [ea, eb, g, mask, tail_tol](const RVec& x, const RVec& y, int k) {
    Complex acc(0.0, 0.0);
    double l1 = 0.0, boundary_l1 = 0.0;
    for (int i = 0; i < g.size(); ++i) {
      const RVec t = g.rnode(i);
      const Complex v = ea(x, t, k) * eb(t, y, k);
      const double m = std::abs(v) * std::abs(g.weights()(i));
      acc += g.weights()(i) * v;
      l1 += m;
      if ((*mask)[i]) boundary_l1 += m;
    }
    if (boundary_l1 > tail_tol * l1 && l1 > 1e-300)
      throw domain_error("compose: grid too small (tail mass above tolerance)");
    return acc;
  };
  return out;
}

CVec quantize(const SymbolFamily& a, const CVec& u, const QuadratureGrid& grid, int k,
              double tail_tol) {
  if (grid.real_dim() != a.dim) throw domain_error("quantize: grid dimension mismatch");
  if (u.size() != grid.size()) throw domain_error("quantize: sample size mismatch");
  const auto mask = boundary_mask(grid);
  CVec out(grid.size());
  // Tail estimate is global: boundary-layer L1 mass against the largest row
  // mass, so that negligible truncation at edge output nodes does not refuse
  // an otherwise well-contained integrand.
  double max_l1 = 0.0, max_boundary = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const RVec x = grid.rnode(i);
    Complex acc(0.0, 0.0);
    double l1 = 0.0, boundary_l1 = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
      const Complex v = a.eval(x, grid.rnode(j), k) * u(j);
      const double m = std::abs(v) * std::abs(grid.weights()(j));
      acc += grid.weights()(j) * v;
      l1 += m;
      if (mask[j]) boundary_l1 += m;
    }
    max_l1 = std::max(max_l1, l1);
    max_boundary = std::max(max_boundary, boundary_l1);
    out(i) = acc;
  }
  if (max_boundary > tail_tol * max_l1 && max_l1 > 1e-300)
    throw domain_error("quantize: grid too small (tail mass above tolerance)");
  return out;
}

ProbePairs make_scaled_probe_pairs(int d, double radius, int per_axis) {
  if (d < 1 || per_axis < 2) throw domain_error("make_scaled_probe_pairs: bad parameters");
  std::vector<RVec> pts;
  const int total_pts = static_cast<int>(std::pow(double(per_axis), d));
  for (int r = 0; r < total_pts; ++r) {
    RVec p(d);
    int rem = r;
    for (int a = 0; a < d; ++a) {
      const int idx = rem % per_axis;
      rem /= per_axis;
      p(a) = -radius + 2.0 * radius * idx / (per_axis - 1);
    }
    pts.push_back(p);
  }
  ProbePairs pairs;
  for (const auto& u : pts)
    for (const auto& v : pts) pairs.emplace_back(u, v);
  return pairs;
}

MembershipReport estimate_membership(
    const SymbolFamily& a, double m,
    const std::vector<std::pair<std::vector<int>, std::vector<int>>>& deriv_orders,
    const std::vector<int>& N_list, const SemiclassParams& params, const ProbePairs& probes,
    int l_cap, double growth_tol) {
  MembershipReport rep;
  rep.order = m;
  rep.k_values = params.k_values;
  rep.pass = true;

  for (const auto& [alpha, beta] : deriv_orders) {
    const double half_orders = 0.5 * (total(alpha) + total(beta));
    for (int N : N_list) {
      // sup over probes of the numerator pieces, per k, reusing the
      // derivative samples across candidate l values.
      std::vector<std::vector<double>> numer(params.k_values.size());
      std::vector<std::vector<double>> base(params.k_values.size());
      for (size_t ki = 0; ki < params.k_values.size(); ++ki) {
        const int k = params.k_values[ki];
        const double sk = std::sqrt(double(k));
        for (const auto& [u, v] : probes) {
          const RVec x = u / sk, y = v / sk;
          const double da = std::abs(a.derivative(alpha, beta, x, y, k));
          const double offdiag = std::pow(1.0 + (u - v).norm(), N);
          numer[ki].push_back(da * offdiag / std::pow(double(k), m + half_orders));
          base[ki].push_back(1.0 + u.norm() + v.norm());
        }
      }
      MembershipRow row;
      row.alpha = alpha;
      row.beta = beta;
      row.N = N;
      for (int l = 0; l <= l_cap; ++l) {
        std::vector<double> sup(params.k_values.size(), 0.0);
        for (size_t ki = 0; ki < params.k_values.size(); ++ki)
          for (size_t p = 0; p < probes.size(); ++p)
            sup[ki] = std::max(sup[ki], numer[ki][p] / std::pow(base[ki][p], l));
        bool ok = true;
        for (size_t ki = 0; ki + 1 < sup.size(); ++ki) {
          if (sup[ki] < 1e-300) {
            if (sup[ki + 1] > 1e-300) ok = false;
            continue;
          }
          if (sup[ki + 1] / sup[ki] > 1.0 + growth_tol) ok = false;
        }
        if (ok) {
          row.l = l;
          row.sup_ratio = sup;
          row.pass = true;
          break;
        }
        if (l == l_cap) row.sup_ratio = sup;  // report the last attempt
      }
      if (!row.pass) rep.pass = false;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

std::string MembershipReport::to_csv() const {
  std::ostringstream os;
  os << "alpha,beta,N,l";
  for (int k : k_values) os << ",sup_ratio_k" << k;
  os << ",verdict\n";
  auto joined = [](const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "|" : "") + std::to_string(v[i]);
    return s;
  };
  os.setf(std::ios::scientific);
  os.precision(17);
  for (const auto& r : rows) {
    os << joined(r.alpha) << "," << joined(r.beta) << "," << r.N << "," << r.l;
    for (double s : r.sup_ratio) os << "," << s;
    os << "," << (r.pass ? "pass" : "fail") << "\n";
  }
  return os.str();
}

BorelSchedule::BorelSchedule(std::vector<double> m, std::vector<double> mu,
                             std::vector<double> eps)
    : orders(std::move(m)), thresholds(std::move(mu)), shrink(std::move(eps)) {
  if (orders.empty() || thresholds.size() < orders.size() || shrink.size() < orders.size())
    throw domain_error("BorelSchedule: schedule lists too short");
  for (size_t j = 0; j + 1 < orders.size(); ++j)
    if (orders[j + 1] >= orders[j])
      throw domain_error("BorelSchedule: orders must be strictly decreasing");
  for (size_t j = 0; j + 1 < thresholds.size(); ++j)
    if (thresholds[j + 1] <= thresholds[j])
      throw domain_error("BorelSchedule: thresholds must be strictly increasing");
  for (size_t j = 0; j < shrink.size(); ++j) {
    if (shrink[j] <= 0.0) throw domain_error("BorelSchedule: shrink exponents must be > 0");
    if (j > 0 && shrink[j] > shrink[j - 1])
      throw domain_error("BorelSchedule: shrink exponents must be non-increasing");
  }
}

BorelSchedule BorelSchedule::standard(std::vector<double> m, std::vector<double> mu,
                                      double eps0) {
  std::vector<double> eps(m.size());
  for (size_t j = 0; j < m.size(); ++j) eps[j] = eps0 / double(j + 1);
  return BorelSchedule(std::move(m), std::move(mu), std::move(eps));
}

SymbolFamily borel_sum(const std::vector<SymbolFamily>& terms, const BorelSchedule& schedule,
                       const CutoffProfile& window) {
  if (terms.empty()) throw domain_error("borel_sum: empty term list");
  if (schedule.orders.size() < terms.size())
    throw domain_error("borel_sum: schedule shorter than the term list");
  for (const auto& t : terms)
    if (t.dim != terms.front().dim) throw domain_error("borel_sum: dimension mismatch");

  SymbolFamily out;
  out.dim = terms.front().dim;
  out.order = schedule.orders.front();
  const std::vector<SymbolFamily> ts = terms;
  const BorelSchedule sch = schedule;
  out.eval = [ts, sch, window](const RVec& x, const RVec& y, int k) {
    Complex acc(0.0, 0.0);
    for (size_t j = 0; j < ts.size(); ++j) {
      if (sch.thresholds[j] > double(k)) continue;  // tau_{j,k} = 0
      const double scale = std::pow(double(k), 0.5 - sch.shrink[j]);
      const double win = window.value(scale * x.norm()) * window.value(scale * y.norm());
      if (win == 0.0) continue;
      acc += ts[j].eval(x, y, k) * win;
    }
    return acc;
  };
  return out;
}

}  // namespace bklab
