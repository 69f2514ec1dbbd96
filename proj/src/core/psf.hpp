#pragma once

// Parametric PSF evaluation: source blur in the source and detector
// planes, two-component detector blur, the delta motion PSF, and the
// combined PSF used for prediction and deblurring. All kernels are
// normalized to unit sum over their emitted grid.

#include <string>

#include "core/image.hpp"

namespace saber {

enum class EdgeOrientation { Horizontal, Vertical, None };

EdgeOrientation orientation_from_string(const std::string& s);
std::string orientation_to_string(EdgeOrientation o);

struct ScanGeometry {
  double sod_mm = 1.0;
  double odd_mm = 1.0;
  EdgeOrientation orientation = EdgeOrientation::None;

  // source-blur magnification on the detector plane
  double blur_ratio() const { return odd_mm / sod_mm; }
  void validate() const;
};

struct SourcePsfParams {
  double s_sx = 0.0;  // 1/um
  double s_sy = 0.0;  // 1/um
  double r = 1.0;
  void validate() const;
};

struct DetectorPsfParams {
  double s_d1 = 0.0;  // 1/um, narrow component
  double s_d2 = 0.0;  // 1/um, wide component
  double q = 1.0;     // weight of the narrow component
  double r = 1.0;
  void validate() const;
};

struct BlurModel {
  double r = 1.0;
  SourcePsfParams source;
  DetectorPsfParams detector;
  // motion blur is the discrete delta of a stationary system

  void validate() const;
  static BlurModel from_fwhm(double r, double w_sx_um, double w_sy_um,
                             double w_d1_um, double w_d2_um, double q);

  std::string to_json() const;
  static BlurModel from_json(const std::string& text);
  static BlurModel load(const std::string& path);
  void save(const std::string& path) const;
};

// W = 2*log(2)^(1/r) / s and back; the map is its own inverse.
double fwhm_to_scale(double w_um, double r);
double scale_to_fwhm(double s_inv_um, double r);

Image2D source_psf_source_plane(const SourcePsfParams& p, double pitch_um, int half);
Image2D source_psf_detector_plane(const SourcePsfParams& p, const ScanGeometry& g,
                                  double pitch_um, int half);
Image2D detector_psf(const DetectorPsfParams& p, double pitch_um, int half);
Image2D motion_psf(double pitch_um);

// Full linear convolution of the component kernels, renormalized to unit
// sum. Output half width = src_half + det_half.
Image2D combined_psf(const BlurModel& m, const ScanGeometry& g, double pitch_um,
                     int src_half, int det_half);
// Default sizing: ceil(4*FWHM/pitch) per component (wide detector term
// governs det_half).
Image2D combined_psf(const BlurModel& m, const ScanGeometry& g, double pitch_um);

int default_source_half(const BlurModel& m, const ScanGeometry& g, double pitch_um);
int default_detector_half(const BlurModel& m, double pitch_um);

// Half-max crossing width of the centered x/y profile, in micron;
// crossings located by linear interpolation between samples.
double measure_fwhm_x(const Image2D& kernel);
double measure_fwhm_y(const Image2D& kernel);

// Fit of the wide detector component from the kernel's log profile beyond
// the narrow core; returns the implied FWHM in micron.
double measure_wide_component_fwhm(const Image2D& kernel, double r,
                                   double narrow_fwhm_um);

}  // namespace saber
