#pragma once

#include <string>
#include <vector>

#include "bklab/config.hpp"
#include "bklab/dbar.hpp"
#include "bklab/neumann.hpp"
#include "bklab/oracle.hpp"

namespace bklab {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares on (log x, log y); requires >= 3 strictly positive points.
LogLogFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

/// Basis degree covering the sampled radius with headroom: the normalized
/// monomial ladder needs alpha up to ~ 2 k max(lambda) r^2 plus a tail margin
/// before the truncated kernel is trustworthy at radius r.
int basis_degree_for_radius(const WeightSpec& w, int k, double radius, int floor_degree = 12);

/// Oracle diagonal sweep: K_k(0,0) against the leading closed form
/// k^n 2^n prod(lambda)/pi^n; |ratio - 1| feeds a decay fit.
struct DiagonalSweep {
  std::vector<int> ks;
  std::vector<double> diag;
  std::vector<double> ratio_minus_one;
  std::vector<int> A_used;
  std::vector<double> gram_condition;
  LogLogFit decay;

  std::string csv() const;
};
DiagonalSweep run_diagonal_sweep(const ExperimentConfig& cfg);

/// Neumann partial sums against the oracle on the scaled near-diagonal
/// region; produces per-(M, k) sup errors and fitted slopes.
ExpansionResult run_expansion_sweep(const ExperimentConfig& cfg);

/// Oracle kernel samples at probes fixed in rescaled coordinates, fed to the
/// k-regression; returns the scaled probes and the fitted ladder.
std::pair<std::vector<Point>, ExpansionFit> run_coefficient_fit(const ExperimentConfig& cfg,
                                                                int J = 2);

/// Off-diagonal negligibility statistics per k.
struct OffdiagSweep {
  std::vector<int> ks;
  std::vector<double> statistic;
  int N = 2;
  double inner_scaled = 0.5;
  double ring_start_scaled = 5.5;
  double ring_end_scaled = 6.0;

  std::string csv() const;
};
OffdiagSweep run_offdiag_sweep(const ExperimentConfig& cfg, int N = 2);

/// Spectral-gap sweep with the fitted log-log slope.
struct GapSweep {
  std::vector<GapReport> reports;
  LogLogFit slope;

  std::string csv() const;
};
GapSweep run_gap_sweep(const ExperimentConfig& cfg);

/// Model-kernel sweep: diagonal values per k (golden-value demo output).
std::string run_model_csv(const ExperimentConfig& cfg);

/// Membership sweep for the scaled-Gaussian suite plus the composed pair;
/// returns (csv, all_pass).
std::pair<std::string, bool> run_symbols_sweep(const ExperimentConfig& cfg);

/// Oracle vs hat-kernel comparison rows on the near-diagonal region
/// (phi1 == 0 makes the error column identically zero).
std::string run_compare_csv(const ExperimentConfig& cfg);

}  // namespace bklab
