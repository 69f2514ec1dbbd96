#include "core/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "core/image.hpp"

namespace saber::kernels {

Grid axial_exp(int half_r, int half_c, double r, double delta_eff, double sx,
               double sy) {
  if (half_r < 0 || half_c < 0)
    throw std::invalid_argument("kernels: negative half width");
  if (r < 1.0) throw std::invalid_argument("kernels: shape exponent r must be >= 1");
  Grid g;
  g.half_r = half_r;
  g.half_c = half_c;
  g.v.resize(std::size_t(g.rows()) * g.cols());
  const double dr = std::pow(delta_eff, r);
  std::size_t k = 0;
  for (int i = -half_r; i <= half_r; ++i) {
    const double ui = double(i) * double(i) * sx * sx;
    for (int j = -half_c; j <= half_c; ++j, ++k) {
      const double u = ui + double(j) * double(j) * sy * sy;
      double ur;
      if (r == 1.0) ur = std::sqrt(u);
      else if (r == 2.0) ur = u;
      else ur = std::pow(u, 0.5 * r);
      g.v[k] = std::exp(-dr * ur);
    }
  }
  return g;
}

Grid axial_exp_deriv(const Grid& g, double r, double delta_eff, double sx,
                     double sy, DerivVar var) {
  Grid d;
  d.half_r = g.half_r;
  d.half_c = g.half_c;
  d.v.resize(g.v.size());
  const double dr = std::pow(delta_eff, r);
  std::size_t k = 0;
  for (int i = -g.half_r; i <= g.half_r; ++i) {
    for (int j = -g.half_c; j <= g.half_c; ++j, ++k) {
      const double u = double(i) * double(i) * sx * sx +
                       double(j) * double(j) * sy * sy;
      if (u == 0.0) {
        d.v[k] = 0.0;
        continue;
      }
      double factor = 0.0;
      switch (var) {
        case DerivVar::Sx:
          factor = sx * double(i) * double(i) * std::pow(u, 0.5 * r - 1.0);
          break;
        case DerivVar::Sy:
          factor = sy * double(j) * double(j) * std::pow(u, 0.5 * r - 1.0);
          break;
        case DerivVar::RadialS:
          // sx == sy == s: d/ds collapses to -r g delta^r s^(r-1) rho^(r/2)
          factor = sx * (double(i) * double(i) + double(j) * double(j)) *
                   std::pow(u, 0.5 * r - 1.0);
          break;
      }
      d.v[k] = -r * g.v[k] * dr * factor;
    }
  }
  return d;
}

double sum(const Grid& g) { return pairwise_sum(g.v.data(), g.v.size()); }

Grid normalized_deriv(const Grid& g, const Grid& dg) {
  const double Z = sum(g);
  const double dZ = sum(dg);
  Grid out;
  out.half_r = g.half_r;
  out.half_c = g.half_c;
  out.v.resize(g.v.size());
  const double invZ2 = 1.0 / (Z * Z);
  for (std::size_t k = 0; k < g.v.size(); ++k)
    out.v[k] = (Z * dg.v[k] - g.v[k] * dZ) * invZ2;
  return out;
}

}  // namespace saber::kernels
