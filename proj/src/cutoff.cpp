#include "bklab/cutoff.hpp"

namespace bklab {
namespace {

// g(s) = exp(-1/s) for s > 0, extended by 0; the classic C^inf glue.
double g(double s) { return s <= 0.0 ? 0.0 : std::exp(-1.0 / s); }
double g1(double s) { return s <= 0.0 ? 0.0 : std::exp(-1.0 / s) / (s * s); }
double g2(double s) {
  if (s <= 0.0) return 0.0;
  return std::exp(-1.0 / s) * (1.0 - 2.0 * s) / (s * s * s * s);
}

}  // namespace

// theta(r) = h(s) with s = (outer - r)/(outer - inner), h = g(s)/(g(s)+g(1-s)).
double CutoffProfile::value(double r) const {
  if (r <= inner_) return 1.0;
  if (r >= outer_) return 0.0;
  const double s = (outer_ - r) / (outer_ - inner_);
  const double a = g(s), b = g(1.0 - s);
  return a / (a + b);
}

double CutoffProfile::d1(double r) const {
  if (r <= inner_ || r >= outer_) return 0.0;
  const double w = outer_ - inner_;
  const double s = (outer_ - r) / w;
  const double a = g(s), b = g(1.0 - s);
  const double da = g1(s), db = -g1(1.0 - s);
  const double hs = (da * b - a * db) / ((a + b) * (a + b));
  return hs * (-1.0 / w);  // ds/dr = -1/w
}

double CutoffProfile::d2(double r) const {
  if (r <= inner_ || r >= outer_) return 0.0;
  const double w = outer_ - inner_;
  const double s = (outer_ - r) / w;
  const double a = g(s), b = g(1.0 - s);
  const double da = g1(s), db = -g1(1.0 - s);
  const double dda = g2(s), ddb = g2(1.0 - s);
  const double sum = a + b, dsum = da + db, ddsum = dda + ddb;
  // h = a/sum; h' = (a' sum - a sum')/sum^2
  const double h1 = (da * sum - a * dsum) / (sum * sum);
  const double h2 =
      (dda * sum - a * ddsum) / (sum * sum) - 2.0 * h1 * dsum / sum;
  return h2 / (w * w);  // (ds/dr)^2 = 1/w^2, d2s/dr2 = 0
}

double cutoff_scale(int k, double epsilon, double scale_factor) {
  if (k < 1) throw domain_error("make_cutoff: k must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0 / 6.0))
    throw domain_error("make_cutoff: epsilon must lie in (0, 1/6)");
  if (scale_factor <= 0.0) throw domain_error("make_cutoff: scale_factor must be > 0");
  return scale_factor * std::pow(double(k), 0.5 - epsilon);
}

std::function<double(const Point&)> make_cutoff(const CutoffProfile& profile, int k,
                                                double epsilon, double scale_factor) {
  const double scale = cutoff_scale(k, epsilon, scale_factor);
  return [profile, scale](const Point& z) { return profile.value(scale * z.norm()); };
}

}  // namespace bklab
