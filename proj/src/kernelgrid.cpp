#include "bklab/kernelgrid.hpp"

#include <cmath>
#include <sstream>

namespace bklab {

KernelGrid sample_kernel(const std::vector<Point>& zs, const std::vector<Point>& ws, int k,
                         const std::function<Complex(const Point&, const Point&)>& f) {
  KernelGrid g;
  g.zs = zs;
  g.ws = ws;
  g.k = k;
  g.values = CMat(zs.size(), ws.size());
  for (size_t i = 0; i < zs.size(); ++i)
    for (size_t j = 0; j < ws.size(); ++j) g.values(i, j) = f(zs[i], ws[j]);
  return g;
}

std::vector<Point> disk_nodes(double radius, int rings, int spokes) {
  if (radius <= 0.0 || rings < 1 || spokes < 1) throw domain_error("disk_nodes: bad shape");
  std::vector<Point> out;
  Point c(1);
  c(0) = Complex(0.0, 0.0);
  out.push_back(c);
  for (int r = 1; r <= rings; ++r)
    for (int s = 0; s < spokes; ++s) {
      const double rr = radius * r / rings;
      const double th = 2.0 * kPi * s / spokes;
      Point p(1);
      p(0) = Complex(rr * std::cos(th), rr * std::sin(th));
      out.push_back(p);
    }
  return out;
}

std::vector<Point> annulus_nodes(double r_in, double r_out, int rings, int spokes) {
  if (!(0.0 < r_in && r_in < r_out) || rings < 1 || spokes < 1)
    throw domain_error("annulus_nodes: bad shape");
  std::vector<Point> out;
  for (int r = 0; r < rings; ++r)
    for (int s = 0; s < spokes; ++s) {
      const double rr = r_in + (r_out - r_in) * (rings == 1 ? 0.0 : double(r) / (rings - 1));
      const double th = 2.0 * kPi * (s + 0.5 * (r % 2)) / spokes;
      Point p(1);
      p(0) = Complex(rr * std::cos(th), rr * std::sin(th));
      out.push_back(p);
    }
  return out;
}

std::string ErrorReport::csv_header() { return "k,region,norm,error,A_used,gram_condition"; }

std::string ErrorReport::csv_row() const {
  std::ostringstream os;
  os.precision(17);
  os << k << "," << region << "," << (norm == ErrorNorm::Sup ? "sup" : "L2") << ","
     << error << "," << A_used << "," << gram_condition;
  return os.str();
}

ErrorReport compare(const KernelGrid& oracle, const KernelGrid& approx, ErrorNorm norm,
                    const std::string& region_name) {
  if (oracle.rows() != approx.rows() || oracle.cols() != approx.cols() ||
      oracle.k != approx.k)
    throw domain_error("compare: kernel grids do not share shape/k");
  for (int i = 0; i < oracle.rows(); ++i)
    if ((oracle.zs[i] - approx.zs[i]).norm() > 1e-12)
      throw domain_error("compare: kernel grids do not share z nodes");
  for (int j = 0; j < oracle.cols(); ++j)
    if ((oracle.ws[j] - approx.ws[j]).norm() > 1e-12)
      throw domain_error("compare: kernel grids do not share w nodes");

  ErrorReport rep;
  rep.k = oracle.k;
  rep.region = region_name;
  rep.norm = norm;
  const CMat diff = oracle.values - approx.values;
  if (norm == ErrorNorm::Sup) {
    rep.error = diff.cwiseAbs().maxCoeff();
  } else {
    rep.error = std::sqrt(diff.cwiseAbs2().sum() / double(diff.size()));
  }
  return rep;
}

}  // namespace bklab
