#include "core/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace saber::fft {

int next_fast_size(int n) {
  if (n < 1) throw std::invalid_argument("next_fast_size: n must be >= 1");
  for (int m = n;; ++m) {
    int r = m;
    for (int p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

RealBuf::RealBuf(std::size_t n) : n_(n) {
  p_ = static_cast<double*>(fftw_malloc(sizeof(double) * n));
  if (!p_) throw std::bad_alloc();
}
RealBuf::~RealBuf() {
  if (p_) fftw_free(p_);
}
RealBuf::RealBuf(RealBuf&& o) noexcept : p_(o.p_), n_(o.n_) {
  o.p_ = nullptr;
  o.n_ = 0;
}
RealBuf& RealBuf::operator=(RealBuf&& o) noexcept {
  if (this != &o) {
    if (p_) fftw_free(p_);
    p_ = o.p_;
    n_ = o.n_;
    o.p_ = nullptr;
    o.n_ = 0;
  }
  return *this;
}
void RealBuf::zero() {
  for (std::size_t i = 0; i < n_; ++i) p_[i] = 0.0;
}

CplxBuf::CplxBuf(std::size_t n) : n_(n) {
  p_ = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (!p_) throw std::bad_alloc();
}
CplxBuf::~CplxBuf() {
  if (p_) fftw_free(p_);
}
CplxBuf::CplxBuf(CplxBuf&& o) noexcept : p_(o.p_), n_(o.n_) {
  o.p_ = nullptr;
  o.n_ = 0;
}
CplxBuf& CplxBuf::operator=(CplxBuf&& o) noexcept {
  if (this != &o) {
    if (p_) fftw_free(p_);
    p_ = o.p_;
    n_ = o.n_;
    o.p_ = nullptr;
    o.n_ = 0;
  }
  return *this;
}
void CplxBuf::zero() {
  for (std::size_t i = 0; i < n_; ++i) p_[i] = {0.0, 0.0};
}

namespace {

// FFTW plan creation is not thread-safe; execution via the new-array
// interface is. Plans are made on scratch buffers with FFTW_ESTIMATE
// (deterministic algorithm choice) and reused for any aligned buffers.
std::mutex g_plan_mutex;

fftw_plan get_plan(int rows, int cols, bool forward) {
  static std::map<std::tuple<int, int, bool>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_tuple(rows, cols, forward);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  RealBuf r(std::size_t(rows) * std::size_t(cols));
  CplxBuf c(spectrum_size(rows, cols));
  fftw_plan plan;
  if (forward)
    plan = fftw_plan_dft_r2c_2d(rows, cols, r.data(),
                                reinterpret_cast<fftw_complex*>(c.data()),
                                FFTW_ESTIMATE);
  else
    plan = fftw_plan_dft_c2r_2d(rows, cols,
                                reinterpret_cast<fftw_complex*>(c.data()),
                                r.data(), FFTW_ESTIMATE);
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void forward_r2c(int rows, int cols, double* in, std::complex<double>* out) {
  fftw_plan plan = get_plan(rows, cols, true);
  fftw_execute_dft_r2c(plan, in, reinterpret_cast<fftw_complex*>(out));
}

void inverse_c2r(int rows, int cols, std::complex<double>* in, double* out) {
  fftw_plan plan = get_plan(rows, cols, false);
  fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(in), out);
  const double scale = 1.0 / (double(rows) * double(cols));
  const std::size_t n = std::size_t(rows) * std::size_t(cols);
  for (std::size_t i = 0; i < n; ++i) out[i] *= scale;
}

double parseval_dot(int rows, int cols, const std::complex<double>* a,
                    const std::complex<double>* b) {
  const std::size_t ch = spectrum_cols(cols);
  const bool even = (cols % 2) == 0;
  double acc = 0.0;
  for (int r = 0; r < rows; ++r) {
    const std::complex<double>* ar = a + std::size_t(r) * ch;
    const std::complex<double>* br = b + std::size_t(r) * ch;
    for (std::size_t c = 0; c < ch; ++c) {
      const double re = ar[c].real() * br[c].real() + ar[c].imag() * br[c].imag();
      const bool self = (c == 0) || (even && c == ch - 1);
      acc += self ? re : 2.0 * re;
    }
  }
  return acc / (double(rows) * double(cols));
}

}  // namespace saber::fft
