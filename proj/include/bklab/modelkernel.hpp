#pragma once

#include "bklab/multiindex.hpp"
#include "bklab/quadrature.hpp"
#include "bklab/types.hpp"

namespace bklab {

/// Bargmann--Fock projection kernel with weight exp(-2 sum lambda_j |z^j|^2):
///   K_BF(z,w) = (2^n lambda_1...lambda_n / pi^n) exp(2 sum lambda_j (z^j conj(w^j) - |w^j|^2)).
Complex bf_kernel(const RVec& lambda, const Point& z, const Point& w);

/// Weighted (symmetric-gauge) model projection kernel at semiclassical level k:
///   P_k(z,w) = k^n (2^n prod lambda / pi^n)
///              exp(k sum lambda_j (2 z^j conj(w^j) - |z^j|^2 - |w^j|^2)),
/// i.e. P_k(z,w) = k^n P_1(sqrt(k) z, sqrt(k) w).  Exponent assembled in
/// log-space before exponentiation.
Complex model_kernel(const RVec& lambda, int k, const Point& z, const Point& w);

/// Diagonal constant k^n 2^n prod(lambda) / pi^n.
double model_diagonal(const RVec& lambda, int k);

/// ||z^alpha||^2 = pi^n alpha! / (2^{|alpha|+n} prod (k lambda_i)^{alpha_i+1}).
double monomial_norm(const MultiIndex& alpha, const RVec& lambda, int k);
double log_monomial_norm(const MultiIndex& alpha, const RVec& lambda, int k);

struct ReproduceResult {
  Complex value;
  bool exactness_warning = false;  // grid declared exactness below needed degree
};

/// int P_k(z,w) f(w) e^{-k phi0(w)} dm(w) evaluated on the supplied
/// Gaussian-weighted grid; reproduces f(z) e^{-k phi0(z)} for holomorphic f.
/// `f` is evaluated at the grid nodes; `f_degree` is its polynomial degree
/// (used only for the exactness warning).
ReproduceResult reproduce_check(const RVec& lambda, int k,
                                const std::function<Complex(const Point&)>& f, int f_degree,
                                const Point& z, const QuadratureGrid& grid);

}  // namespace bklab
