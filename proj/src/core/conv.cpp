#include "core/conv.hpp"

#include <cstring>

#include "core/fft.hpp"

namespace saber {

namespace {

Image2D convolve_direct(const Image2D& img, const Image2D& ker) {
  const int R = img.rows(), C = img.cols();
  const int hr = ker.rows() / 2, hc = ker.cols() / 2;
  Image2D out(R, C, img.pitch());
  for (int i = 0; i < R; ++i) {
    for (int j = 0; j < C; ++j) {
      double acc = 0.0;
      const int alo = std::max(-hr, i - (R - 1)), ahi = std::min(hr, i);
      const int blo = std::max(-hc, j - (C - 1)), bhi = std::min(hc, j);
      for (int a = alo; a <= ahi; ++a)
        for (int b = blo; b <= bhi; ++b)
          acc += ker.at(hr + a, hc + b) * img.at(i - a, j - b);
      out.at(i, j) = acc;
    }
  }
  return out;
}

Image2D convolve_fft(const Image2D& img, const Image2D& ker) {
  const int R = img.rows(), C = img.cols();
  const int kr = ker.rows(), kc = ker.cols();
  const int Lr = fft::next_fast_size(R + kr - 1);
  const int Lc = fft::next_fast_size(C + kc - 1);
  const std::size_t n = std::size_t(Lr) * std::size_t(Lc);

  fft::RealBuf a(n), b(n);
  a.zero();
  b.zero();
  for (int i = 0; i < R; ++i)
    std::memcpy(a.data() + std::size_t(i) * Lc, img.data() + std::size_t(i) * C,
                sizeof(double) * C);
  for (int i = 0; i < kr; ++i)
    std::memcpy(b.data() + std::size_t(i) * Lc, ker.data() + std::size_t(i) * kc,
                sizeof(double) * kc);

  const std::size_t ns = fft::spectrum_size(Lr, Lc);
  fft::CplxBuf fa(ns), fb(ns);
  fft::forward_r2c(Lr, Lc, a.data(), fa.data());
  fft::forward_r2c(Lr, Lc, b.data(), fb.data());
  for (std::size_t i = 0; i < ns; ++i) fa.data()[i] *= fb.data()[i];
  fft::inverse_c2r(Lr, Lc, fa.data(), a.data());

  // Full convolution lives at [0, R+kr-2]x[0, C+kc-2]; "same" starts at
  // the kernel half-offsets.
  const int hr = kr / 2, hc = kc / 2;
  Image2D out(R, C, img.pitch());
  for (int i = 0; i < R; ++i)
    std::memcpy(out.data() + std::size_t(i) * C,
                a.data() + std::size_t(i + hr) * Lc + hc, sizeof(double) * C);
  return out;
}

}  // namespace

Image2D convolve_same(const Image2D& image, const Image2D& kernel, ConvPath path) {
  if (kernel.rows() % 2 == 0 || kernel.cols() % 2 == 0)
    throw std::invalid_argument("convolve_same: kernel must have odd rows and cols");
  if (kernel.pitch() != image.pitch())
    throw std::invalid_argument("convolve_same: kernel pitch must match image pitch");
  if (path == ConvPath::Auto)
    path = (kernel.size() > 49) ? ConvPath::Fft : ConvPath::Direct;
  return path == ConvPath::Fft ? convolve_fft(image, kernel)
                               : convolve_direct(image, kernel);
}

}  // namespace saber
