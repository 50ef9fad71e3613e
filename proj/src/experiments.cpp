#include "bklab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "bklab/symbols.hpp"

namespace bklab {
namespace {

std::ostringstream make_csv_stream() {
  std::ostringstream os;
  os.precision(17);
  return os;
}

}  // namespace

LogLogFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 3)
    throw domain_error("fit_loglog: need at least 3 matching points");
  const int n = static_cast<int>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    if (xs[i] <= 0.0 || ys[i] <= 0.0)
      throw domain_error("fit_loglog: inputs must be strictly positive");
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  LogLogFit fit;
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw domain_error("fit_loglog: degenerate abscissae");
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (int i = 0; i < n; ++i) {
    const double ly = std::log(ys[i]);
    const double pred = fit.intercept + fit.slope * std::log(xs[i]);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - ybar) * (ly - ybar);
  }
  fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

int basis_degree_for_radius(const WeightSpec& w, int k, double radius, int floor_degree) {
  const double x = 2.0 * double(k) * w.lambda().maxCoeff() * radius * radius;
  return std::max(floor_degree, int(std::ceil(x + 7.0 * std::sqrt(x) + 6.0)));
}

std::string DiagonalSweep::csv() const {
  auto os = make_csv_stream();
  os << "k,diag,ratio_minus_one,A_used,gram_condition\n";
  for (size_t i = 0; i < ks.size(); ++i)
    os << ks[i] << "," << diag[i] << "," << ratio_minus_one[i] << "," << A_used[i] << ","
       << gram_condition[i] << "\n";
  return os.str();
}

DiagonalSweep run_diagonal_sweep(const ExperimentConfig& cfg) {
  const WeightSpec w = cfg.weight();
  const MetricSpec met = cfg.metric();
  DiagonalSweep sweep;
  const Point origin = Point::Zero(cfg.n);
  for (int k : cfg.k_values) {
    const int A = cfg.A_override > 0
                      ? cfg.A_override
                      : default_basis_degree(k, cfg.epsilon) + 6;
    const int m = std::max(cfg.quad_order, A + 1);
    const auto grid = QuadratureGrid::gaussian_weighted(cfg.n, k, w.lambda(), m);
    const OracleBasis basis = build_basis(w, met, k, A, grid);
    const double diag = oracle_kernel(basis, w, origin, origin).real();
    const double lead = model_diagonal(w.lambda(), k);
    sweep.ks.push_back(k);
    sweep.diag.push_back(diag);
    sweep.ratio_minus_one.push_back(diag / lead - 1.0);
    sweep.A_used.push_back(A);
    sweep.gram_condition.push_back(basis.condition);
  }
  std::vector<double> xs, ys;
  for (size_t i = 0; i < sweep.ks.size(); ++i) {
    xs.push_back(double(sweep.ks[i]));
    ys.push_back(std::abs(sweep.ratio_minus_one[i]));
  }
  sweep.decay = fit_loglog(xs, ys);
  return sweep;
}

ExpansionResult run_expansion_sweep(const ExperimentConfig& cfg) {
  if (cfg.n != 1) throw domain_error("run_expansion_sweep: n = 1 only");
  const WeightSpec w = cfg.weight();
  const MetricSpec met = cfg.metric();
  ExpansionResult result;
  result.ks = cfg.k_values;

  const int M_max = *std::max_element(cfg.M_list.begin(), cfg.M_list.end());
  std::map<int, std::vector<double>> errors;  // M -> per-k sup error

  for (int k : cfg.k_values) {
    const double r = cfg.region_radius_scaled / std::sqrt(double(k));
    const auto zs = disk_nodes(r, cfg.region_rings, cfg.region_spokes);

    const int A = cfg.A_override > 0 ? cfg.A_override
                                     : basis_degree_for_radius(w, k, r, 16);
    const auto ggrid = QuadratureGrid::gaussian_weighted(
        cfg.n, k, w.lambda(), std::max(cfg.quad_order, A + 1));
    const OracleBasis basis = build_basis(w, met, k, A, ggrid);
    const KernelGrid oracle = oracle_kernel_grid(basis, w, zs, zs);

    PartialSumOptions opts;
    opts.t_points_per_axis = std::max(64, cfg.quad_order);
    const auto sums = neumann_partial_sums(w, met, k, M_max, zs, zs, opts);
    for (int M : cfg.M_list) {
      const auto rep = compare(oracle, sums[M - 1], ErrorNorm::Sup, "near-diagonal");
      errors[M].push_back(rep.error);
      if (k == cfg.k_values.back()) result.partial_sums[M] = sums[M - 1];
    }
  }

  std::vector<double> xs(cfg.k_values.begin(), cfg.k_values.end());
  for (int M : cfg.M_list) {
    result.sup_error[M] = Eigen::Map<const RVec>(errors[M].data(), errors[M].size());
    result.fitted_slope[M] = fit_loglog(xs, errors[M]).slope;
  }
  return result;
}

std::pair<std::vector<Point>, ExpansionFit> run_coefficient_fit(const ExperimentConfig& cfg,
                                                                int J) {
  if (cfg.n != 1) throw domain_error("run_coefficient_fit: n = 1 only");
  const WeightSpec w = cfg.weight();
  const MetricSpec met = cfg.metric();
  const auto us = disk_nodes(2.0 * cfg.region_radius_scaled, cfg.region_rings,
                             cfg.region_spokes);
  std::vector<CMat> samples;
  for (int k : cfg.k_values) {
    std::vector<Point> zs;
    for (const auto& u : us) zs.push_back(u / std::sqrt(double(k)));
    const int A = cfg.A_override > 0
                      ? cfg.A_override
                      : basis_degree_for_radius(w, k, 2.0 * cfg.region_radius_scaled /
                                                          std::sqrt(double(k)),
                                                16);
    const auto grid = QuadratureGrid::gaussian_weighted(
        cfg.n, k, w.lambda(), std::max(cfg.quad_order, A + 1));
    const OracleBasis basis = build_basis(w, met, k, A, grid);
    samples.push_back(oracle_kernel_grid(basis, w, zs, zs).values);
  }
  return {us, fit_expansion(cfg.k_values, samples, cfg.n, J)};
}

std::string OffdiagSweep::csv() const {
  auto os = make_csv_stream();
  os << "k,N,inner_scaled,ring_start_scaled,ring_end_scaled,statistic\n";
  for (size_t i = 0; i < ks.size(); ++i)
    os << ks[i] << "," << N << "," << inner_scaled << "," << ring_start_scaled << ","
       << ring_end_scaled << "," << statistic[i] << "\n";
  return os.str();
}

OffdiagSweep run_offdiag_sweep(const ExperimentConfig& cfg, int N) {
  if (cfg.n != 1) throw domain_error("run_offdiag_sweep: n = 1 only");
  const WeightSpec w = cfg.weight();
  const MetricSpec met = cfg.metric();
  OffdiagSweep sweep;
  sweep.N = N;
  for (int k : cfg.k_values) {
    const double unit = std::pow(double(k), cfg.epsilon - 0.5);
    const auto zs =
        annulus_nodes(sweep.ring_start_scaled * unit, sweep.ring_end_scaled * unit, 3, 24);
    const auto ws = disk_nodes(sweep.inner_scaled * unit, 2, 8);

    const int A = cfg.A_override > 0
                      ? cfg.A_override
                      : basis_degree_for_radius(w, k, sweep.ring_end_scaled * unit, 16);
    const auto ggrid = QuadratureGrid::gaussian_weighted(
        cfg.n, k, w.lambda(), std::max(cfg.quad_order, A + 1));
    const OracleBasis basis = build_basis(w, met, k, A, ggrid);
    const KernelGrid kern = oracle_kernel_grid(basis, w, zs, ws);
    sweep.ks.push_back(k);
    sweep.statistic.push_back(offdiag_decay(kern, N, k, cfg.epsilon, sweep.inner_scaled,
                                            sweep.ring_start_scaled));
  }
  return sweep;
}

std::string GapSweep::csv() const {
  auto os = make_csv_stream();
  os << GapReport::csv_header() << "\n";
  for (const auto& r : reports) os << r.csv_row() << "\n";
  return os.str();
}

GapSweep run_gap_sweep(const ExperimentConfig& cfg) {
  if (cfg.n != 1) throw domain_error("run_gap_sweep: n = 1 only");
  const WeightSpec w = cfg.weight();
  GapSweep sweep;
  std::vector<double> xs, ys;
  for (int k : cfg.k_values) {
    const GapReport rep = measure_gap(w, k, Grid2D::standard(w, k));
    sweep.reports.push_back(rep);
    xs.push_back(double(k));
    ys.push_back(rep.min_eig);
  }
  sweep.slope = fit_loglog(xs, ys);
  return sweep;
}

std::string run_model_csv(const ExperimentConfig& cfg) {
  const WeightSpec w = cfg.weight();
  auto os = make_csv_stream();
  os << "k,diag,monomial_norm_alpha0\n";
  const Point origin = Point::Zero(cfg.n);
  for (int k : cfg.k_values) {
    os << k << "," << model_kernel(w.lambda(), k, origin, origin).real() << ","
       << monomial_norm(MultiIndex::zero(cfg.n), w.lambda(), k) << "\n";
  }
  return os.str();
}

std::pair<std::string, bool> run_symbols_sweep(const ExperimentConfig& cfg) {
  const SemiclassParams params = cfg.params();
  const auto probes = make_scaled_probe_pairs(1, 2.5, 4);

  SymbolFamily g1;
  g1.dim = 1;
  g1.order = 1.0;
  g1.eval = [](const RVec& x, const RVec& y, int k) {
    const double d = x(0) - y(0);
    return Complex(double(k) * std::exp(-double(k) * d * d), 0.0);
  };
  SymbolFamily g2 = g1;
  g2.order = 0.5;
  g2.eval = [](const RVec& x, const RVec& y, int k) {
    const double d = x(0) - y(0);
    return Complex(std::pow(double(k), 0.5) * std::exp(-1.5 * double(k) * d * d), 0.0);
  };

  const int kmin = params.k_values.front(), kmax = params.k_values.back();
  const double L = 3.0 / std::sqrt(double(kmin)) + 9.0 / std::sqrt(double(kmin));
  const int m = std::max(64, int(2.5 * L * std::sqrt(double(kmax)) / 0.25));
  const auto grid = QuadratureGrid::lebesgue_box(1, L, m);
  const SymbolFamily comp = compose(g1, g2, grid);

  const std::vector<std::pair<std::vector<int>, std::vector<int>>> orders = {
      {{0}, {0}}, {{1}, {0}}, {{0}, {1}}};
  auto rep1 = estimate_membership(g1, 1.0, orders, {2, 4, 8}, params, probes);
  auto rep2 = estimate_membership(comp, comp.order, {{{0}, {0}}}, {2, 4}, params, probes);

  std::ostringstream os;
  os << rep1.to_csv() << rep2.to_csv();
  return {os.str(), rep1.pass && rep2.pass};
}

std::string run_compare_csv(const ExperimentConfig& cfg) {
  if (cfg.n != 1) throw domain_error("run_compare_csv: n = 1 only");
  const WeightSpec w = cfg.weight();
  auto os = make_csv_stream();
  os << ErrorReport::csv_header() << "\n";
  for (int k : cfg.k_values) {
    const double r = cfg.region_radius_scaled / std::sqrt(double(k));
    const auto zs = disk_nodes(r, cfg.region_rings, cfg.region_spokes);
    const auto model = sample_kernel(zs, zs, k, [&](const Point& a, const Point& b) {
      return model_kernel(w.lambda(), k, a, b);
    });
    const auto hat = sample_kernel(zs, zs, k, [&](const Point& a, const Point& b) {
      return hat_kernel(w, k, a, b);
    });
    auto rep = compare(model, hat, ErrorNorm::Sup, "near-diagonal");
    os << rep.csv_row() << "\n";
    rep = compare(model, hat, ErrorNorm::L2, "near-diagonal");
    os << rep.csv_row() << "\n";
  }
  return os.str();
}

}  // namespace bklab
