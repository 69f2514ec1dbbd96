#pragma once

// Single-channel 2D image container plus the pixelwise operations
// (flat-field normalization, masked metrics) shared by the rest of
// the library. Values are double precision, row-major, with a uniform
// pixel pitch in micron.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace saber {

class Image2D {
public:
  Image2D() = default;

  Image2D(int rows, int cols, double pitch_um, double fill = 0.0)
      : rows_(rows), cols_(cols), pitch_um_(pitch_um),
        data_(check_dims(rows, cols, pitch_um), fill) {}

  Image2D(int rows, int cols, double pitch_um, std::vector<double> data)
      : rows_(rows), cols_(cols), pitch_um_(pitch_um), data_(std::move(data)) {
    if (data_.size() != check_dims(rows, cols, pitch_um))
      throw std::invalid_argument("Image2D: data length does not match rows*cols");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double pitch() const { return pitch_um_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(int r, int c) { return data_[idx(r, c)]; }
  const double& at(int r, int c) const { return data_[idx(r, c)]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& values() { return data_; }
  const std::vector<double>& values() const { return data_; }

  bool same_shape(const Image2D& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }
  bool same_grid(const Image2D& o) const {
    return same_shape(o) && pitch_um_ == o.pitch_um_;
  }

  // Throws if any value is non-finite; `what` names the image in the message.
  void require_finite(const std::string& what) const;

private:
  static std::size_t check_dims(int rows, int cols, double pitch_um) {
    if (rows < 1 || cols < 1)
      throw std::invalid_argument("Image2D: rows and cols must be >= 1");
    if (!(pitch_um > 0.0))
      throw std::invalid_argument("Image2D: pitch must be > 0");
    return std::size_t(rows) * std::size_t(cols);
  }
  std::size_t idx(int r, int c) const {
    return std::size_t(r) * std::size_t(cols_) + std::size_t(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  double pitch_um_ = 1.0;
  std::vector<double> data_;
};

// Estimation masks are {0,1}; deblur weights may be any non-negative reals.
using WeightMask = Image2D;

// Deterministic pairwise reduction; bit-stable for a fixed element order.
double pairwise_sum(const double* v, std::size_t n);

// (sample - dark) / (bright - dark), elementwise. Throws on shape/pitch
// mismatch and on the first pixel where bright <= dark.
Image2D normalize_radiograph(const Image2D& sample, const Image2D& bright,
                             const Image2D& dark);

// sqrt( sum mask*(a-b)^2 / sum mask ); mask must have a nonzero entry.
double masked_rmse(const Image2D& a, const Image2D& b, const WeightMask& mask);

// Mean of the four sample standard deviations over box x box corner patches.
double corner_noise_level(const Image2D& img, int box);

// Ones everywhere except a zero border band: band_rows = round(frac*rows)
// on top/bottom, band_cols = round(frac*cols) on left/right.
WeightMask interior_mask(int rows, int cols, double pitch_um, double band_fraction);

}  // namespace saber
