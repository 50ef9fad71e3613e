#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bklab/types.hpp"

namespace bklab {

/// 1-D rule: nodes/weights for integral of w(t) f(t) dt.
struct Rule1D {
  RVec nodes;
  RVec weights;
};

/// Gauss--Hermite, weight exp(-t^2) on R; exact for degree <= 2m-1.
Rule1D hermite_rule(int m);
/// Gauss--Legendre on [-1,1]; exact for degree <= 2m-1.
Rule1D legendre_rule(int m);

enum class Measure {
  LebesgueBox,       // plain dm over a truncated box
  GaussianWeighted,  // weights include exp(-2k sum_i lambda_i |z^i|^2)
};

/// Tensor quadrature over R^d (d = 2n when the nodes are read as points of
/// C^n).  Nodes are stored as rows in real coordinates
/// (Re z^1, Im z^1, ..., Re z^n, Im z^n).
class QuadratureGrid {
 public:
  QuadratureGrid() = default;

  int real_dim() const { return static_cast<int>(nodes_.cols()); }
  int size() const { return static_cast<int>(nodes_.rows()); }
  const RMat& nodes() const { return nodes_; }
  const RVec& weights() const { return weights_; }
  Measure measure() const { return measure_; }
  int exact_degree() const { return exact_degree_; }
  double k() const { return k_; }
  const RVec& lambda() const { return lambda_; }
  double half_width() const { return half_width_; }

  /// Node i as a point of C^n (requires even real dimension).
  Point cnode(int i) const;
  RVec rnode(int i) const { return nodes_.row(i); }

  /// sum_i w_i f(node_i); rejects non-finite samples.
  Complex integrate(const std::function<Complex(const Point&)>& f) const;
  Complex integrate_real_nodes(const std::function<Complex(const RVec&)>& f) const;

  /// Gaussian-weighted grid for integrals of f(z) exp(-2k sum lambda_i |z^i|^2) dm(z)
  /// over C^n: tensorized Gauss--Hermite, m nodes per real axis, axis i scaled
  /// by 1/sqrt(2 k lambda_i).
  static QuadratureGrid gaussian_weighted(int n, int k, const RVec& lambda, int m);

  /// Plain Lebesgue measure on the box [-L, L]^d: tensorized Gauss--Legendre.
  static QuadratureGrid lebesgue_box(int d_real, double half_width, int m);

  /// Plain Lebesgue measure over C^n realized on Gauss--Hermite nodes with the
  /// Gaussian folded back into the weights (combined in log-space): efficient
  /// for integrands with an exp(-2k sum lambda_i |z^i|^2) envelope.
  static QuadratureGrid lebesgue_hermite(int n, int k, const RVec& lambda, int m);

 private:
  RMat nodes_;
  RVec weights_;
  Measure measure_ = Measure::LebesgueBox;
  int exact_degree_ = 0;
  double k_ = 0.0;      // GaussianWeighted only
  RVec lambda_;         // GaussianWeighted only
  double half_width_ = 0.0;  // LebesgueBox only
};

}  // namespace bklab
