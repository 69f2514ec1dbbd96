#pragma once

// Thin wrapper over FFTW for 2D real transforms. Plans are cached per
// (rows, cols, direction) behind a mutex; execution uses the new-array
// interface and is safe to run concurrently, provided all buffers come
// from the aligned allocators below.

#include <complex>
#include <cstddef>
#include <vector>

namespace saber::fft {

// Smallest n' >= n whose prime factors are all in {2,3,5,7}.
int next_fast_size(int n);

// FFTW-aligned buffer of doubles / complex doubles.
class RealBuf {
public:
  RealBuf() = default;
  explicit RealBuf(std::size_t n);
  ~RealBuf();
  RealBuf(RealBuf&& o) noexcept;
  RealBuf& operator=(RealBuf&& o) noexcept;
  RealBuf(const RealBuf&) = delete;
  RealBuf& operator=(const RealBuf&) = delete;

  double* data() { return p_; }
  const double* data() const { return p_; }
  std::size_t size() const { return n_; }
  void zero();

private:
  double* p_ = nullptr;
  std::size_t n_ = 0;
};

class CplxBuf {
public:
  CplxBuf() = default;
  explicit CplxBuf(std::size_t n);
  ~CplxBuf();
  CplxBuf(CplxBuf&& o) noexcept;
  CplxBuf& operator=(CplxBuf&& o) noexcept;
  CplxBuf(const CplxBuf&) = delete;
  CplxBuf& operator=(const CplxBuf&) = delete;

  std::complex<double>* data() { return p_; }
  const std::complex<double>* data() const { return p_; }
  std::size_t size() const { return n_; }
  void zero();

private:
  std::complex<double>* p_ = nullptr;
  std::size_t n_ = 0;
};

inline std::size_t spectrum_cols(int cols) { return std::size_t(cols) / 2 + 1; }
inline std::size_t spectrum_size(int rows, int cols) {
  return std::size_t(rows) * spectrum_cols(cols);
}

// in: rows x cols real row-major; out: rows x (cols/2+1) complex.
void forward_r2c(int rows, int cols, double* in, std::complex<double>* out);

// Inverse of forward_r2c including the 1/(rows*cols) scale.
// Destroys the spectrum buffer (FFTW c2r behavior).
void inverse_c2r(int rows, int cols, std::complex<double>* in, double* out);

// sum over all spatial pixels of a(x)*b(x), evaluated from the two r2c
// half-spectra (Parseval with conjugate-symmetry column weights).
double parseval_dot(int rows, int cols, const std::complex<double>* a,
                    const std::complex<double>* b);

}  // namespace saber::fft
