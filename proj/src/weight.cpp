#include "bklab/weight.hpp"

#include <Eigen/Eigenvalues>

namespace bklab {

WeightSpec::WeightSpec(RVec lambda, ZPoly perturbation, double epsilon, CutoffProfile cutoff)
    : lambda_(std::move(lambda)),
      perturbation_(std::move(perturbation)),
      epsilon_(epsilon),
      cutoff_(cutoff) {
  if (lambda_.size() < 1 || (lambda_.array() <= 0.0).any())
    throw domain_error("WeightSpec: eigenvalues must be positive");
  if (!(epsilon_ > 0.0 && epsilon_ < 1.0 / 6.0))
    throw domain_error("WeightSpec: epsilon must lie in (0, 1/6)");
  if (!perturbation_.empty()) {
    if (perturbation_.vars() != n())
      throw domain_error("WeightSpec: perturbation variable count mismatch");
    if (perturbation_.min_total_degree() < 3)
      throw domain_error("WeightSpec: perturbation must have no terms of degree <= 2");
    if (!perturbation_.is_real(1e-12))
      throw domain_error("WeightSpec: perturbation must be a real polynomial");
  }
  dp_dz_.resize(n());
  dp_dzbar_.resize(n());
  d2p_.assign(n(), std::vector<ZPoly>(n()));
  for (int i = 0; i < n(); ++i) {
    dp_dz_[i] = perturbation_.empty() ? ZPoly(n()) : perturbation_.dz(i);
    dp_dzbar_[i] = perturbation_.empty() ? ZPoly(n()) : perturbation_.dzbar(i);
  }
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      d2p_[i][j] = perturbation_.empty() ? ZPoly(n()) : dp_dz_[i].dzbar(j);
}

double WeightSpec::phi0(const Point& z) const {
  double s = 0.0;
  for (int i = 0; i < n(); ++i) s += lambda_(i) * std::norm(z(i));
  return s;
}

double WeightSpec::theta_k(const Point& z, int k) const {
  if (k < 1) throw domain_error("WeightSpec: k must be >= 1");
  const double scale = std::pow(double(k), 0.5 - epsilon_);
  return cutoff_.value(scale * z.norm());
}

double WeightSpec::phi1(const Point& z, int k) const {
  if (perturbation_.empty()) return 0.0;
  const double t = theta_k(z, k);
  if (t == 0.0) return 0.0;
  return t * perturbation_.eval(z).real();
}

double WeightSpec::weight(const Point& z, int k) const { return phi0(z) + phi1(z, k); }

Complex WeightSpec::dzbar(const Point& z, int k, int i) const {
  Complex v = lambda_(i) * z(i);
  if (perturbation_.empty()) return v;
  const double scale = std::pow(double(k), 0.5 - epsilon_);
  const double r = z.norm();
  const double th = cutoff_.value(scale * r);
  if (th != 0.0) v += th * dp_dzbar_[i].eval(z);
  const double th1 = cutoff_.d1(scale * r);
  if (th1 != 0.0 && r > 0.0) {
    const double p = perturbation_.eval(z).real();
    v += p * th1 * scale * z(i) / (2.0 * r);
  }
  return v;
}

CMat WeightSpec::mixed_hessian(const Point& z, int k) const {
  CMat H = CMat::Zero(n(), n());
  for (int i = 0; i < n(); ++i) H(i, i) = lambda_(i);
  if (perturbation_.empty()) return H;

  const double scale = std::pow(double(k), 0.5 - epsilon_);
  const double r = z.norm();
  const double th = cutoff_.value(scale * r);
  const double th1 = cutoff_.d1(scale * r);
  const double th2 = cutoff_.d2(scale * r);
  const double p = perturbation_.eval(z).real();

  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j) {
      Complex h(0.0, 0.0);
      if (th != 0.0) h += th * d2p_[i][j].eval(z);
      if (r > 0.0 && (th1 != 0.0 || th2 != 0.0)) {
        // d theta_k / dz^i = th1 * scale * conj(z_i) / (2r), similarly for zbar.
        const Complex dth_dzi = th1 * scale * std::conj(z(i)) / (2.0 * r);
        const Complex dth_dzbarj = th1 * scale * z(j) / (2.0 * r);
        h += dth_dzi * dp_dzbar_[j].eval(z);
        h += dth_dzbarj * dp_dz_[i].eval(z);
        // d^2 theta_k / dz^i dzbar^j
        Complex d2th = th2 * scale * scale * std::conj(z(i)) * z(j) / (4.0 * r * r);
        d2th += th1 * scale *
                ((i == j ? Complex(1.0, 0.0) : Complex(0.0, 0.0)) / (2.0 * r) -
                 std::conj(z(i)) * z(j) / (4.0 * r * r * r));
        h += p * d2th;
      }
      H(i, j) += h;
    }
  return H;
}

double WeightSpec::min_hessian_eigenvalue(int k, int radial, int angular) const {
  if (perturbation_.empty()) return lambda_.minCoeff();
  const double scale = std::pow(double(k), 0.5 - epsilon_);
  const double rmax = cutoff_.outer() / scale;
  double best = lambda_.minCoeff();
  // Deterministic direction set; for n = 1 this scans the circle.
  for (int a = 0; a < angular; ++a) {
    Point dir(n());
    for (int i = 0; i < n(); ++i) {
      const double phase = 2.0 * kPi * (a + 0.37 * i) / angular + 0.611 * i;
      dir(i) = Complex(std::cos(phase), std::sin(phase));
    }
    dir /= dir.norm();
    for (int ri = 1; ri <= radial; ++ri) {
      const double r = rmax * ri / radial;
      const CMat H = mixed_hessian(r * dir, k);
      Eigen::SelfAdjointEigenSolver<CMat> es(H);
      best = std::min(best, es.eigenvalues().minCoeff());
    }
  }
  return best;
}

double eval_weight(const WeightSpec& w, int k, const Point& z) {
  if (k < 1) throw domain_error("eval_weight: k must be >= 1");
  return w.weight(z, k);
}

MetricSpec::MetricSpec(int n) : n_(n), q_(n) {
  if (n < 1) throw domain_error("MetricSpec: n must be >= 1");
}

MetricSpec::MetricSpec(int n, ZPoly q, double support_radius, double bump_inner_fraction)
    : n_(n),
      q_(std::move(q)),
      support_radius_(support_radius),
      bump_(bump_inner_fraction * support_radius, support_radius) {
  if (n < 1) throw domain_error("MetricSpec: n must be >= 1");
  if (support_radius <= 0.0) throw domain_error("MetricSpec: support_radius must be > 0");
  if (!q_.empty() && !q_.is_real(1e-12))
    throw domain_error("MetricSpec: density perturbation must be real");
  // rho >= rho_min > 0 everywhere; sample over the support to verify.
  rho_min_ = 1.0;
  for (int a = 0; a < 32; ++a) {
    Point dir(n_);
    for (int i = 0; i < n_; ++i) {
      const double phase = 2.0 * kPi * (a + 0.41 * i) / 32 + 0.713 * i;
      dir(i) = Complex(std::cos(phase), std::sin(phase));
    }
    dir /= dir.norm();
    for (int ri = 0; ri <= 64; ++ri) {
      const double r = support_radius_ * ri / 64.0;
      rho_min_ = std::min(rho_min_, rho(r * dir));
    }
  }
  if (rho_min_ <= 1e-8)
    throw domain_error("MetricSpec: density is not bounded away from zero");
}

double MetricSpec::rho(const Point& z) const {
  if (q_.empty()) return 1.0;
  const double r = z.norm();
  if (r >= support_radius_) return 1.0;
  const double b = bump_.value(r);
  if (b == 0.0) return 1.0;
  return 1.0 + b * q_.eval(z).real();
}

SemiclassParams::SemiclassParams(std::vector<int> ks, double eps)
    : k_values(std::move(ks)), epsilon(eps) {
  if (k_values.empty()) throw domain_error("SemiclassParams: k list must be nonempty");
  for (size_t i = 0; i < k_values.size(); ++i) {
    if (k_values[i] < 1) throw domain_error("SemiclassParams: k must be >= 1");
    if (i > 0 && k_values[i] <= k_values[i - 1])
      throw domain_error("SemiclassParams: k list must be strictly increasing");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0 / 6.0))
    throw domain_error("SemiclassParams: epsilon must lie in (0, 1/6)");
}

}  // namespace bklab
