#include "core/image.hpp"

#include <cmath>
#include <cstdio>

namespace saber {

void Image2D::require_finite(const std::string& what) const {
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s: non-finite value at pixel (%zu,%zu)",
                    what.c_str(), i / std::size_t(cols_), i % std::size_t(cols_));
      throw std::invalid_argument(buf);
    }
  }
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

Image2D normalize_radiograph(const Image2D& sample, const Image2D& bright,
                             const Image2D& dark) {
  if (!sample.same_grid(bright) || !sample.same_grid(dark))
    throw std::invalid_argument(
        "normalize_radiograph: sample, bright, dark must share shape and pitch");
  Image2D out(sample.rows(), sample.cols(), sample.pitch());
  const double* s = sample.data();
  const double* b = bright.data();
  const double* d = dark.data();
  double* o = out.data();
  const std::size_t n = sample.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double denom = b[i] - d[i];
    if (!(denom > 0.0)) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "normalize_radiograph: bright <= dark at pixel (%zu,%zu)",
                    i / std::size_t(sample.cols()), i % std::size_t(sample.cols()));
      throw std::invalid_argument(buf);
    }
    o[i] = (s[i] - d[i]) / denom;
  }
  return out;
}

double masked_rmse(const Image2D& a, const Image2D& b, const WeightMask& mask) {
  if (!a.same_shape(b) || !a.same_shape(mask))
    throw std::invalid_argument("masked_rmse: shape mismatch");
  const std::size_t n = a.size();
  std::vector<double> num(n), den(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = mask.data()[i];
    if (w < 0.0) throw std::invalid_argument("masked_rmse: negative mask value");
    const double d = a.data()[i] - b.data()[i];
    num[i] = w * d * d;
    den[i] = w;
  }
  const double wsum = pairwise_sum(den.data(), n);
  if (wsum <= 0.0) throw std::invalid_argument("masked_rmse: all-zero mask");
  return std::sqrt(pairwise_sum(num.data(), n) / wsum);
}

namespace {

double patch_stddev(const Image2D& img, int r0, int c0, int box) {
  const std::size_t n = std::size_t(box) * std::size_t(box);
  std::vector<double> vals(n);
  std::size_t k = 0;
  for (int r = r0; r < r0 + box; ++r)
    for (int c = c0; c < c0 + box; ++c) vals[k++] = img.at(r, c);
  const double mean = pairwise_sum(vals.data(), n) / double(n);
  if (n < 2) return 0.0;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (vals[i] - mean) * (vals[i] - mean);
  return std::sqrt(pairwise_sum(sq.data(), n) / double(n - 1));
}

}  // namespace

double corner_noise_level(const Image2D& img, int box) {
  if (box < 1) throw std::invalid_argument("corner_noise_level: box must be >= 1");
  if (2 * box > img.rows() || 2 * box > img.cols())
    throw std::invalid_argument("corner_noise_level: box too large for image");
  const int rmax = img.rows() - box;
  const int cmax = img.cols() - box;
  const double s0 = patch_stddev(img, 0, 0, box);
  const double s1 = patch_stddev(img, 0, cmax, box);
  const double s2 = patch_stddev(img, rmax, 0, box);
  const double s3 = patch_stddev(img, rmax, cmax, box);
  return 0.25 * (s0 + s1 + s2 + s3);
}

WeightMask interior_mask(int rows, int cols, double pitch_um, double band_fraction) {
  if (band_fraction < 0.0 || band_fraction >= 0.5)
    throw std::invalid_argument("interior_mask: band fraction must be in [0, 0.5)");
  const int br = int(std::lround(band_fraction * rows));
  const int bc = int(std::lround(band_fraction * cols));
  WeightMask m(rows, cols, pitch_um, 0.0);
  for (int r = br; r < rows - br; ++r)
    for (int c = bc; c < cols - bc; ++c) m.at(r, c) = 1.0;
  return m;
}

}  // namespace saber
