#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bklab/types.hpp"

namespace bklab {

/// Two-point kernel sampled on a product grid zs x ws, tagged with k.
struct KernelGrid {
  std::vector<Point> zs, ws;
  CMat values;  // zs.size() x ws.size()
  int k = 1;

  int rows() const { return static_cast<int>(zs.size()); }
  int cols() const { return static_cast<int>(ws.size()); }
};

/// Sample a closed-form kernel on a product grid.
KernelGrid sample_kernel(const std::vector<Point>& zs, const std::vector<Point>& ws, int k,
                         const std::function<Complex(const Point&, const Point&)>& f);

/// Deterministic polar sampling of the disk |z| <= radius in C (n = 1):
/// `rings` radii, `spokes` angles, plus the center.
std::vector<Point> disk_nodes(double radius, int rings, int spokes);
/// Annulus r_in <= |z| <= r_out in C.
std::vector<Point> annulus_nodes(double r_in, double r_out, int rings, int spokes);

enum class ErrorNorm { Sup, L2 };

struct ErrorReport {
  int k = 0;
  std::string region;
  ErrorNorm norm = ErrorNorm::Sup;
  double error = 0.0;
  int A_used = -1;           // oracle basis degree when relevant
  double gram_condition = 0; // oracle Gram condition when relevant

  static std::string csv_header();
  std::string csv_row() const;
};

/// Error between two kernels on shared nodes (sup or root-mean-square).
ErrorReport compare(const KernelGrid& oracle, const KernelGrid& approx, ErrorNorm norm,
                    const std::string& region_name = "");

}  // namespace bklab
