#include "bklab/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bklab {
namespace {

using nlohmann::json;

ZPoly parse_terms(const json& arr, int n) {
  ZPoly p(n);
  for (const auto& t : arr) {
    if (!t.contains("alpha") || !t.contains("beta") || !t.contains("coeffs"))
      throw config_error("perturbation term needs alpha, beta, coeffs");
    std::vector<int> a = t.at("alpha").get<std::vector<int>>();
    std::vector<int> b = t.at("beta").get<std::vector<int>>();
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
      throw config_error("perturbation term index length != n");
    const auto c = t.at("coeffs").get<std::vector<double>>();
    if (c.size() != 2) throw config_error("coeffs must be [re, im]");
    int deg = 0;
    for (int i = 0; i < n; ++i) deg += a[i] + b[i];
    if (t.contains("degree") && t.at("degree").get<int>() != deg)
      throw config_error("declared degree disagrees with the indices");
    p.add_term(a, b, Complex(c[0], c[1]));
  }
  // enforce realness: average with the conjugate-mirrored terms
  return (p + p.conj()) * Complex(0.5, 0.0);
}

}  // namespace

MetricSpec ExperimentConfig::metric() const {
  if (!density_support) return MetricSpec(n);
  return MetricSpec(n, density_terms, *density_support);
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw config_error(std::string("invalid JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  try {
    cfg.n = j.at("n").get<int>();
    if (cfg.n < 1) throw config_error("n must be >= 1");
    const auto lam = j.at("lambda").get<std::vector<double>>();
    if (static_cast<int>(lam.size()) != cfg.n)
      throw config_error("lambda must have n entries");
    cfg.lambda = RVec(cfg.n);
    for (int i = 0; i < cfg.n; ++i) {
      if (lam[i] <= 0.0) throw config_error("lambda entries must be positive");
      cfg.lambda(i) = lam[i];
    }
    cfg.epsilon = j.at("epsilon").get<double>();
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0 / 6.0))
      throw config_error("epsilon must lie in (0, 1/6)");
    cfg.k_values = j.at("k_values").get<std::vector<int>>();
    if (cfg.k_values.empty()) throw config_error("k_values must be nonempty");
    for (size_t i = 0; i < cfg.k_values.size(); ++i) {
      if (cfg.k_values[i] < 1) throw config_error("k_values must be >= 1");
      if (i > 0 && cfg.k_values[i] <= cfg.k_values[i - 1])
        throw config_error("k_values must be strictly increasing");
    }
    if (j.contains("perturbation")) cfg.perturbation = parse_terms(j.at("perturbation"), cfg.n);
    if (!cfg.perturbation.empty() && cfg.perturbation.min_total_degree() < 3)
      throw config_error("perturbation must have no terms of degree <= 2");
    if (j.contains("cutoff"))
      cfg.cutoff = CutoffProfile(j.at("cutoff").at("inner").get<double>(),
                                 j.at("cutoff").at("outer").get<double>());
    if (j.contains("density") && !j.at("density").is_null()) {
      cfg.density_support = j.at("density").at("support_radius").get<double>();
      cfg.density_terms = parse_terms(j.at("density").at("terms"), cfg.n);
    }
    if (j.contains("quadrature")) {
      cfg.quad_order = j.at("quadrature").at("order").get<int>();
      cfg.radius_sigmas = j.at("quadrature").at("radius_sigmas").get<double>();
      if (cfg.quad_order < 4) throw config_error("quadrature order too small");
    }
    if (j.contains("M_list")) cfg.M_list = j.at("M_list").get<std::vector<int>>();
    if (j.contains("A_override")) cfg.A_override = j.at("A_override").get<int>();
    if (j.contains("region")) {
      const auto& r = j.at("region");
      if (r.contains("radius_scaled"))
        cfg.region_radius_scaled = r.at("radius_scaled").get<double>();
      if (r.contains("rings")) cfg.region_rings = r.at("rings").get<int>();
      if (r.contains("spokes")) cfg.region_spokes = r.at("spokes").get<int>();
    }
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(std::string("schema violation: ") + e.what());
  }

  try {
    cfg.weight();   // runs the WeightSpec invariants
    cfg.metric();   // and the density bounds
  } catch (const std::exception& e) {
    throw config_error(std::string("invalid weight/density configuration: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace bklab
