#pragma once

// Shared test utilities. The convolution oracle here is intentionally
// independent of the library's convolution engine.

#include <random>

#include "core/image.hpp"

namespace testutil {

inline saber::Image2D random_image(int rows, int cols, double pitch, std::mt19937& rng,
                                   double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  saber::Image2D img(rows, cols, pitch);
  for (auto& v : img.values()) v = u(rng);
  return img;
}

// O(n^2 m^2) zero-padded "same" convolution, written as plain loops.
inline saber::Image2D oracle_conv_same(const saber::Image2D& img,
                                       const saber::Image2D& ker) {
  const int R = img.rows(), C = img.cols();
  const int hr = ker.rows() / 2, hc = ker.cols() / 2;
  saber::Image2D out(R, C, img.pitch());
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) {
      double acc = 0.0;
      for (int a = -hr; a <= hr; ++a)
        for (int b = -hc; b <= hc; ++b) {
          const int ii = i - a, jj = j - b;
          if (ii < 0 || ii >= R || jj < 0 || jj >= C) continue;
          acc += ker.at(hr + a, hc + b) * img.at(ii, jj);
        }
      out.at(i, j) = acc;
    }
  return out;
}

inline double max_abs_diff(const saber::Image2D& a, const saber::Image2D& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace testutil
