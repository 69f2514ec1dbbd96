#pragma once

// Low-level builders for the separable-exponent blur kernels and their
// parameter derivatives. Shared between the public PSF operations and
// the estimation objective so both always evaluate the same discrete
// model (values depend only on i^2 and j^2, which keeps the emitted
// grids exactly symmetric).

#include <vector>

namespace saber::kernels {

struct Grid {
  int half_r = 0, half_c = 0;
  std::vector<double> v;  // (2*half_r+1) x (2*half_c+1), row-major

  int rows() const { return 2 * half_r + 1; }
  int cols() const { return 2 * half_c + 1; }
  double& at(int i, int j) {  // i in [-half_r, half_r], j likewise
    return v[std::size_t(i + half_r) * cols() + std::size_t(j + half_c)];
  }
  double at(int i, int j) const {
    return v[std::size_t(i + half_r) * cols() + std::size_t(j + half_c)];
  }
};

// exp( -delta_eff^r * (i^2 sx^2 + j^2 sy^2)^(r/2) ). Radial kernels use
// sx = sy = s; detector-plane source kernels use delta_eff = pitch*SOD/ODD.
Grid axial_exp(int half_r, int half_c, double r, double delta_eff, double sx,
               double sy);

enum class DerivVar { Sx, Sy, RadialS };

// Unnormalized derivative dg/dv of axial_exp. The (i,j) = (0,0) sample of g is
// constant in the scales, so its derivative is 0 (also avoids 0^(negative)
// when r < 2).
Grid axial_exp_deriv(const Grid& g, double r, double delta_eff, double sx,
                     double sy, DerivVar var);

double sum(const Grid& g);

// d(g/Z)/dv = (Z*dg - g*dZ)/Z^2 with dZ = sum(dg); sums to zero by construction.
Grid normalized_deriv(const Grid& g, const Grid& dg);

}  // namespace saber::kernels
