#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bklab/weight.hpp"

namespace bklab {

/// Parsed experiment configuration (JSON).  Schema:
/// {
///   "n": int,
///   "lambda": [real, ...],                  // n positive entries
///   "perturbation": [                        // optional; empty means phi1 == 0
///     {"alpha": [..], "beta": [..], "coeffs": [re, im], "degree": int}, ...
///   ],                                       // realness is enforced by averaging
///                                            // the listed terms with their mirrors
///   "cutoff": {"inner": r, "outer": r},      // optional theta profile (default 0.5/1)
///   "density": {"support_radius": r,         // optional volume density
///               "terms": [ same shape as perturbation ]},
///   "epsilon": real,                          // in (0, 1/6)
///   "k_values": [int, ...],                  // strictly increasing
///   "quadrature": {"order": int, "radius_sigmas": real}
/// }
struct ExperimentConfig {
  int n = 1;
  RVec lambda;
  ZPoly perturbation;  // empty if absent
  CutoffProfile cutoff = CutoffProfile::standard();
  std::optional<double> density_support;
  ZPoly density_terms;
  double epsilon = 0.1;
  std::vector<int> k_values;
  int quad_order = 80;
  double radius_sigmas = 7.0;

  // subcommand options
  std::vector<int> M_list = {1, 2, 3};
  int A_override = -1;
  double region_radius_scaled = 0.5;  // in units of k^{-1/2}
  int region_rings = 2;
  int region_spokes = 6;

  WeightSpec weight() const { return WeightSpec(lambda, perturbation, epsilon, cutoff); }
  MetricSpec metric() const;
  SemiclassParams params() const { return SemiclassParams(k_values, epsilon); }
};

/// Thrown on schema violations; the CLI maps it to exit code 2.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

}  // namespace bklab
