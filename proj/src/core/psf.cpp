#include "core/psf.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/conv.hpp"
#include "core/kernels.hpp"

namespace saber {

EdgeOrientation orientation_from_string(const std::string& s) {
  if (s == "horizontal" || s == "horizontal-edge") return EdgeOrientation::Horizontal;
  if (s == "vertical" || s == "vertical-edge") return EdgeOrientation::Vertical;
  if (s == "none" || s.empty()) return EdgeOrientation::None;
  throw std::invalid_argument("unknown edge orientation: " + s);
}

std::string orientation_to_string(EdgeOrientation o) {
  switch (o) {
    case EdgeOrientation::Horizontal: return "horizontal";
    case EdgeOrientation::Vertical: return "vertical";
    default: return "none";
  }
}

void ScanGeometry::validate() const {
  if (!(sod_mm > 0.0) || !(odd_mm > 0.0))
    throw std::invalid_argument("ScanGeometry: SOD and ODD must be > 0");
}

void SourcePsfParams::validate() const {
  if (s_sx < 0.0 || s_sy < 0.0)
    throw std::invalid_argument("SourcePsfParams: scales must be >= 0");
  if (r < 1.0) throw std::invalid_argument("SourcePsfParams: r must be >= 1");
}

void DetectorPsfParams::validate() const {
  if (s_d1 < 0.0 || s_d2 < 0.0)
    throw std::invalid_argument("DetectorPsfParams: scales must be >= 0");
  if (q < 0.0 || q > 1.0)
    throw std::invalid_argument("DetectorPsfParams: q must be in [0, 1]");
  if (r < 1.0) throw std::invalid_argument("DetectorPsfParams: r must be >= 1");
}

void BlurModel::validate() const {
  if (r < 1.0) throw std::invalid_argument("BlurModel: r must be >= 1");
  if (source.r != r || detector.r != r)
    throw std::invalid_argument("BlurModel: component r must match model r");
  source.validate();
  detector.validate();
}

BlurModel BlurModel::from_fwhm(double r, double w_sx_um, double w_sy_um,
                               double w_d1_um, double w_d2_um, double q) {
  BlurModel m;
  m.r = r;
  m.source = {fwhm_to_scale(w_sx_um, r), fwhm_to_scale(w_sy_um, r), r};
  double s1 = fwhm_to_scale(w_d1_um, r);
  double s2 = fwhm_to_scale(w_d2_um, r);
  // convention: first component is the narrow one
  if (s1 < s2) {
    std::swap(s1, s2);
    q = 1.0 - q;
  }
  m.detector = {s1, s2, q, r};
  m.validate();
  return m;
}

double fwhm_to_scale(double w_um, double r) {
  if (!(w_um > 0.0)) throw std::invalid_argument("fwhm_to_scale: width must be > 0");
  if (r < 1.0) throw std::invalid_argument("fwhm_to_scale: r must be >= 1");
  return 2.0 * std::pow(std::log(2.0), 1.0 / r) / w_um;
}

double scale_to_fwhm(double s_inv_um, double r) {
  if (!(s_inv_um > 0.0))
    throw std::invalid_argument("scale_to_fwhm: scale must be > 0");
  if (r < 1.0) throw std::invalid_argument("scale_to_fwhm: r must be >= 1");
  return 2.0 * std::pow(std::log(2.0), 1.0 / r) / s_inv_um;
}

namespace {

Image2D grid_to_image(const kernels::Grid& g, double pitch_um) {
  Image2D img(g.rows(), g.cols(), pitch_um);
  img.values() = g.v;
  const double z = pairwise_sum(img.data(), img.size());
  for (auto& v : img.values()) v /= z;
  return img;
}

}  // namespace

Image2D source_psf_source_plane(const SourcePsfParams& p, double pitch_um, int half) {
  p.validate();
  return grid_to_image(
      kernels::axial_exp(half, half, p.r, pitch_um, p.s_sx, p.s_sy), pitch_um);
}

Image2D source_psf_detector_plane(const SourcePsfParams& p, const ScanGeometry& g,
                                  double pitch_um, int half) {
  p.validate();
  g.validate();
  const double delta_eff = pitch_um * g.sod_mm / g.odd_mm;
  return grid_to_image(
      kernels::axial_exp(half, half, p.r, delta_eff, p.s_sx, p.s_sy), pitch_um);
}

Image2D detector_psf(const DetectorPsfParams& p, double pitch_um, int half) {
  p.validate();
  kernels::Grid g1 = kernels::axial_exp(half, half, p.r, pitch_um, p.s_d1, p.s_d1);
  kernels::Grid g2 = kernels::axial_exp(half, half, p.r, pitch_um, p.s_d2, p.s_d2);
  const double z1 = kernels::sum(g1);
  const double z2 = kernels::sum(g2);
  Image2D img(g1.rows(), g1.cols(), pitch_um);
  for (std::size_t k = 0; k < g1.v.size(); ++k)
    img.values()[k] = p.q * g1.v[k] / z1 + (1.0 - p.q) * g2.v[k] / z2;
  return img;
}

Image2D motion_psf(double pitch_um) {
  Image2D img(1, 1, pitch_um);
  img.at(0, 0) = 1.0;
  return img;
}

int default_source_half(const BlurModel& m, const ScanGeometry& g, double pitch_um) {
  const double s = std::max(m.source.s_sx, m.source.s_sy);
  if (s <= 0.0) return 0;
  const double w_det = scale_to_fwhm(s, m.r) * g.blur_ratio();
  return std::max(1, int(std::ceil(4.0 * w_det / pitch_um)));
}

int default_detector_half(const BlurModel& m, double pitch_um) {
  const double s =
      m.detector.q < 1.0 ? std::min(m.detector.s_d1, m.detector.s_d2) : m.detector.s_d1;
  if (s <= 0.0) return 0;
  return std::max(1, int(std::ceil(4.0 * scale_to_fwhm(s, m.r) / pitch_um)));
}

Image2D combined_psf(const BlurModel& m, const ScanGeometry& g, double pitch_um,
                     int src_half, int det_half) {
  m.validate();
  g.validate();
  const int half = src_half + det_half;
  Image2D src = source_psf_detector_plane(m.source, g, pitch_um, src_half);
  Image2D det = detector_psf(m.detector, pitch_um, det_half);
  // motion PSF is a delta; convolving with it is the identity
  Image2D embedded(2 * half + 1, 2 * half + 1, pitch_um);
  for (int i = 0; i < src.rows(); ++i)
    for (int j = 0; j < src.cols(); ++j)
      embedded.at(half - src_half + i, half - src_half + j) = src.at(i, j);
  Image2D out = convolve_same(embedded, det);
  const double z = pairwise_sum(out.data(), out.size());
  for (auto& v : out.values()) v /= z;
  return out;
}

Image2D combined_psf(const BlurModel& m, const ScanGeometry& g, double pitch_um) {
  return combined_psf(m, g, pitch_um, default_source_half(m, g, pitch_um),
                      default_detector_half(m, pitch_um));
}

namespace {

double half_max_width(const std::vector<double>& prof, double pitch_um) {
  const int n = int(prof.size());
  const int c = n / 2;
  const double hm = 0.5 * prof[c];
  // walk outward to the first crossing on each side
  double left = 0.0, right = 0.0;
  for (int j = c; j + 1 < n; ++j) {
    if (prof[j] >= hm && prof[j + 1] < hm) {
      right = j + (prof[j] - hm) / (prof[j] - prof[j + 1]) - c;
      break;
    }
  }
  for (int j = c; j - 1 >= 0; --j) {
    if (prof[j] >= hm && prof[j - 1] < hm) {
      left = c - (j - (prof[j] - hm) / (prof[j] - prof[j - 1]));
      break;
    }
  }
  return (left + right) * pitch_um;
}

}  // namespace

double measure_fwhm_x(const Image2D& kernel) {
  const int rc = kernel.rows() / 2;
  std::vector<double> prof(kernel.cols());
  for (int j = 0; j < kernel.cols(); ++j) prof[j] = kernel.at(rc, j);
  return half_max_width(prof, kernel.pitch());
}

double measure_fwhm_y(const Image2D& kernel) {
  const int cc = kernel.cols() / 2;
  std::vector<double> prof(kernel.rows());
  for (int i = 0; i < kernel.rows(); ++i) prof[i] = kernel.at(i, cc);
  return half_max_width(prof, kernel.pitch());
}

double measure_wide_component_fwhm(const Image2D& kernel, double r,
                                   double narrow_fwhm_um) {
  // log-linear (r=1) or log-quadratic (r=2) fit of the tail profile,
  // beyond five narrow FWHMs so the core no longer contributes.
  const int rc = kernel.rows() / 2, cc = kernel.cols() / 2;
  const double pitch = kernel.pitch();
  const int j_lo = std::max(1, int(std::ceil(5.0 * narrow_fwhm_um / pitch)));
  const int j_hi = kernel.cols() - 1 - cc;
  if (j_hi <= j_lo + 4)
    throw std::invalid_argument("measure_wide_component_fwhm: kernel too small");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double v = kernel.at(rc, cc + j);
    if (v <= 0.0) break;
    const double x = std::pow(double(j) * pitch, r);
    const double y = std::log(v);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 5)
    throw std::invalid_argument("measure_wide_component_fwhm: tail profile too short");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  if (!(slope < 0.0))
    throw std::runtime_error("measure_wide_component_fwhm: non-decaying tail");
  const double s = std::pow(-slope, 1.0 / r);  // exponent is -(s*dist)^r
  return scale_to_fwhm(s, r);
}

std::string BlurModel::to_json() const {
  validate();
  nlohmann::json j;
  j["r"] = r;
  j["source"] = {{"fwhm_x_um", scale_to_fwhm(source.s_sx, r)},
                 {"fwhm_y_um", scale_to_fwhm(source.s_sy, r)}};
  j["detector"] = {{"fwhm_1_um", scale_to_fwhm(detector.s_d1, r)},
                   {"fwhm_2_um", scale_to_fwhm(detector.s_d2, r)},
                   {"q", detector.q}};
  j["motion"] = "delta";
  return j.dump(2) + "\n";
}

BlurModel BlurModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.contains("motion") && j["motion"].get<std::string>() != "delta")
    throw std::invalid_argument("BlurModel: only the delta motion PSF is supported");
  return from_fwhm(j.at("r").get<double>(),
                   j.at("source").at("fwhm_x_um").get<double>(),
                   j.at("source").at("fwhm_y_um").get<double>(),
                   j.at("detector").at("fwhm_1_um").get<double>(),
                   j.at("detector").at("fwhm_2_um").get<double>(),
                   j.at("detector").at("q").get<double>());
}

BlurModel BlurModel::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error(path + ": cannot open model file");
  std::stringstream ss;
  ss << f.rdbuf();
  return from_json(ss.str());
}

void BlurModel::save(const std::string& path) const {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error(path + ": cannot open model file for writing");
  f << to_json();
}

}  // namespace saber
