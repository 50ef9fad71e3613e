#include "bklab/modelkernel.hpp"

#include <cmath>

namespace bklab {
namespace {

void check_dims(const RVec& lambda, const Point& z, const Point& w) {
  if (lambda.size() != z.size() || lambda.size() != w.size())
    throw domain_error("model kernel: dimension mismatch");
  if ((lambda.array() <= 0.0).any())
    throw domain_error("model kernel: lambda must be positive");
}

double log_prefactor(const RVec& lambda, int k) {
  const int n = static_cast<int>(lambda.size());
  double lp = n * (std::log(2.0) - std::log(kPi)) + n * std::log(double(k));
  for (int i = 0; i < n; ++i) lp += std::log(lambda(i));
  return lp;
}

}  // namespace

Complex bf_kernel(const RVec& lambda, const Point& z, const Point& w) {
  check_dims(lambda, z, w);
  Complex expo(0.0, 0.0);
  for (int j = 0; j < z.size(); ++j)
    expo += 2.0 * lambda(j) * (z(j) * std::conj(w(j)) - std::norm(w(j)));
  return std::exp(expo + log_prefactor(lambda, 1));
}

Complex model_kernel(const RVec& lambda, int k, const Point& z, const Point& w) {
  check_dims(lambda, z, w);
  if (k < 1) throw domain_error("model_kernel: k must be >= 1");
  Complex expo(0.0, 0.0);
  for (int j = 0; j < z.size(); ++j)
    expo += lambda(j) * (2.0 * z(j) * std::conj(w(j)) - std::norm(z(j)) - std::norm(w(j)));
  return std::exp(double(k) * expo + log_prefactor(lambda, k));
}

double model_diagonal(const RVec& lambda, int k) { return std::exp(log_prefactor(lambda, k)); }

double monomial_norm(const MultiIndex& alpha, const RVec& lambda, int k) {
  return std::exp(log_monomial_norm(alpha, lambda, k));
}

double log_monomial_norm(const MultiIndex& alpha, const RVec& lambda, int k) {
  const int n = static_cast<int>(lambda.size());
  if (alpha.size() != n) throw domain_error("monomial_norm: dimension mismatch");
  if (k < 1) throw domain_error("monomial_norm: k must be >= 1");
  double lg = n * std::log(kPi) + alpha.log_factorial() -
              (alpha.order() + n) * std::log(2.0);
  for (int i = 0; i < n; ++i)
    lg -= (alpha[i] + 1) * std::log(double(k) * lambda(i));
  return lg;
}

ReproduceResult reproduce_check(const RVec& lambda, int k,
                                const std::function<Complex(const Point&)>& f, int f_degree,
                                const Point& z, const QuadratureGrid& grid) {
  if (grid.measure() != Measure::GaussianWeighted)
    throw domain_error("reproduce_check: needs a Gaussian-weighted grid");
  ReproduceResult out;
  out.exactness_warning = grid.exact_degree() < 2 * f_degree + 2;
  // Integrand P_k(z,w) f(w) e^{-k phi0(w)} against dm; the grid weight already
  // carries e^{-2k phi0(w)}, so feed it the rest with +k phi0(w) restored.
  const double lp = std::log(model_diagonal(lambda, k));
  double phi0z = 0.0;
  for (int j = 0; j < z.size(); ++j) phi0z += lambda(j) * std::norm(z(j));
  out.value = grid.integrate([&](const Point& w) {
    Complex cross(0.0, 0.0);
    for (int j = 0; j < z.size(); ++j) cross += 2.0 * lambda(j) * z(j) * std::conj(w(j));
    return std::exp(double(k) * cross + lp - double(k) * phi0z) * f(w);
  });
  return out;
}

}  // namespace bklab
