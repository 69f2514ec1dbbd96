#include "core/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace saber {

namespace {

[[noreturn]] void io_fail(const std::string& path, const std::string& why) {
  throw std::runtime_error(path + ": " + why);
}

std::string lower_ext(const std::string& path) {
  auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string e = path.substr(dot + 1);
  std::transform(e.begin(), e.end(), e.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return e;
}

void put_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(std::uint8_t(v & 0xff));
  b.push_back(std::uint8_t(v >> 8));
}
void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(std::uint8_t((v >> (8 * i)) & 0xff));
}

}  // namespace

Image2D load_raw(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) io_fail(path, "cannot open file");
  char magic[4];
  std::uint32_t rows = 0, cols = 0;
  float pitch = 0.f;
  f.read(magic, 4);
  f.read(reinterpret_cast<char*>(&rows), 4);
  f.read(reinterpret_cast<char*>(&cols), 4);
  f.read(reinterpret_cast<char*>(&pitch), 4);
  if (!f || std::memcmp(magic, "SABR", 4) != 0)
    io_fail(path, "not a raw image (bad magic)");
  if (rows == 0 || cols == 0 || !(pitch > 0.f))
    io_fail(path, "invalid raw header");
  std::vector<double> data(std::size_t(rows) * cols);
  f.read(reinterpret_cast<char*>(data.data()),
         std::streamsize(data.size() * sizeof(double)));
  if (!f) io_fail(path, "truncated raw payload");
  Image2D img(int(rows), int(cols), double(pitch), std::move(data));
  img.require_finite(path);
  return img;
}

void save_raw(const Image2D& img, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) io_fail(path, "cannot open file for writing");
  const std::uint32_t rows = std::uint32_t(img.rows());
  const std::uint32_t cols = std::uint32_t(img.cols());
  const float pitch = float(img.pitch());
  f.write("SABR", 4);
  f.write(reinterpret_cast<const char*>(&rows), 4);
  f.write(reinterpret_cast<const char*>(&cols), 4);
  f.write(reinterpret_cast<const char*>(&pitch), 4);
  f.write(reinterpret_cast<const char*>(img.data()),
          std::streamsize(img.size() * sizeof(double)));
  if (!f) io_fail(path, "write failed");
}

namespace {

struct TiffReader {
  std::vector<std::uint8_t> bytes;
  bool big_endian = false;
  const std::string& path;

  explicit TiffReader(const std::string& p) : path(p) {}

  std::uint16_t u16(std::size_t off) const {
    if (off + 2 > bytes.size()) io_fail(path, "truncated TIFF");
    return big_endian ? std::uint16_t((bytes[off] << 8) | bytes[off + 1])
                      : std::uint16_t(bytes[off] | (bytes[off + 1] << 8));
  }
  std::uint32_t u32(std::size_t off) const {
    if (off + 4 > bytes.size()) io_fail(path, "truncated TIFF");
    if (big_endian)
      return (std::uint32_t(bytes[off]) << 24) | (std::uint32_t(bytes[off + 1]) << 16) |
             (std::uint32_t(bytes[off + 2]) << 8) | bytes[off + 3];
    return std::uint32_t(bytes[off]) | (std::uint32_t(bytes[off + 1]) << 8) |
           (std::uint32_t(bytes[off + 2]) << 16) | (std::uint32_t(bytes[off + 3]) << 24);
  }
};

struct TiffField {
  std::uint16_t type = 0;
  std::uint32_t count = 0;
  std::size_t value_off = 0;  // offset of the value bytes in the file
};

std::size_t type_size(std::uint16_t t) {
  switch (t) {
    case 1: case 2: case 6: case 7: return 1;  // BYTE, ASCII
    case 3: case 8: return 2;                  // SHORT
    case 4: case 9: case 11: return 4;         // LONG, FLOAT
    case 5: case 10: case 12: return 8;        // RATIONAL, DOUBLE
    default: return 0;
  }
}

std::uint32_t field_uint(const TiffReader& r, const TiffField& f, std::uint32_t i) {
  const std::size_t off = f.value_off + std::size_t(i) * type_size(f.type);
  if (f.type == 3) return r.u16(off);
  if (f.type == 4) return r.u32(off);
  io_fail(r.path, "unsupported TIFF field type for integer tag");
}

}  // namespace

Image2D load_tiff(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) io_fail(path, "cannot open file");
  TiffReader r(path);
  r.bytes.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  if (r.bytes.size() < 8) io_fail(path, "not a TIFF (too short)");
  if (r.bytes[0] == 'I' && r.bytes[1] == 'I')
    r.big_endian = false;
  else if (r.bytes[0] == 'M' && r.bytes[1] == 'M')
    r.big_endian = true;
  else
    io_fail(path, "not a TIFF (bad byte-order mark)");
  if (r.u16(2) != 42) io_fail(path, "not a TIFF (bad magic)");

  const std::uint32_t ifd = r.u32(4);
  const std::uint16_t nfields = r.u16(ifd);
  struct Fields {
    TiffField width, height, bits, comp, spp, rps, offsets, counts, sfmt, xres, unit;
  } fd;
  auto assign = [&](std::uint16_t tag, const TiffField& fl) {
    switch (tag) {
      case 256: fd.width = fl; break;
      case 257: fd.height = fl; break;
      case 258: fd.bits = fl; break;
      case 259: fd.comp = fl; break;
      case 277: fd.spp = fl; break;
      case 278: fd.rps = fl; break;
      case 273: fd.offsets = fl; break;
      case 279: fd.counts = fl; break;
      case 339: fd.sfmt = fl; break;
      case 282: fd.xres = fl; break;
      case 296: fd.unit = fl; break;
      default: break;
    }
  };
  for (std::uint16_t i = 0; i < nfields; ++i) {
    const std::size_t e = ifd + 2 + std::size_t(i) * 12;
    TiffField fl;
    const std::uint16_t tag = r.u16(e);
    fl.type = r.u16(e + 2);
    fl.count = r.u32(e + 4);
    const std::size_t bytes_needed = std::size_t(fl.count) * type_size(fl.type);
    fl.value_off = bytes_needed <= 4 ? e + 8 : r.u32(e + 8);
    assign(tag, fl);
  }

  if (!fd.width.count || !fd.height.count || !fd.offsets.count || !fd.counts.count)
    io_fail(path, "TIFF missing required tags");
  const std::uint32_t width = field_uint(r, fd.width, 0);
  const std::uint32_t height = field_uint(r, fd.height, 0);
  const std::uint32_t bits = fd.bits.count ? field_uint(r, fd.bits, 0) : 8;
  const std::uint32_t comp = fd.comp.count ? field_uint(r, fd.comp, 0) : 1;
  const std::uint32_t spp = fd.spp.count ? field_uint(r, fd.spp, 0) : 1;
  const std::uint32_t sfmt = fd.sfmt.count ? field_uint(r, fd.sfmt, 0) : 1;
  const std::uint32_t rps = fd.rps.count ? field_uint(r, fd.rps, 0) : height;
  if (comp != 1) io_fail(path, "unsupported TIFF: compressed data");
  if (spp != 1) io_fail(path, "unsupported TIFF: multi-channel image");
  const bool is_f32 = (bits == 32 && sfmt == 3);
  const bool is_u8 = (bits == 8 && sfmt == 1);
  const bool is_u16 = (bits == 16 && sfmt == 1);
  if (!is_f32 && !is_u8 && !is_u16)
    io_fail(path, "unsupported TIFF sample layout (need u8/u16/f32 grayscale)");
  if (width == 0 || height == 0) io_fail(path, "empty TIFF image");

  double pitch = 1.0;
  if (fd.xres.count && fd.xres.type == 5) {
    const double num = r.u32(fd.xres.value_off);
    const double den = r.u32(fd.xres.value_off + 4);
    const std::uint32_t unit = fd.unit.count ? field_uint(r, fd.unit, 0) : 2;
    if (num > 0 && den > 0) {
      if (unit == 3) pitch = 1e4 * den / num;        // pixels per cm
      else if (unit == 2) pitch = 25400.0 * den / num;  // pixels per inch
    }
  }

  const std::size_t bpp = bits / 8;
  std::vector<double> data(std::size_t(width) * height);
  const std::uint32_t nstrips = fd.offsets.count;
  std::size_t pix = 0;
  for (std::uint32_t s = 0; s < nstrips; ++s) {
    const std::size_t off = field_uint(r, fd.offsets, s);
    const std::size_t cnt = field_uint(r, fd.counts, s);
    const std::uint32_t rows_here =
        std::min<std::uint32_t>(rps, height - std::min(height, s * rps));
    const std::size_t expect = std::size_t(rows_here) * width * bpp;
    if (cnt < expect) io_fail(path, "TIFF strip shorter than expected");
    if (off + expect > r.bytes.size()) io_fail(path, "TIFF strip out of range");
    for (std::size_t k = 0; k < std::size_t(rows_here) * width; ++k) {
      const std::size_t b = off + k * bpp;
      if (is_u8) {
        data[pix++] = double(r.bytes[b]);
      } else if (is_u16) {
        data[pix++] = double(r.u16(b));
      } else {
        std::uint32_t raw = r.u32(b);
        float v;
        std::memcpy(&v, &raw, 4);
        data[pix++] = double(v);
      }
    }
  }
  if (pix != data.size()) io_fail(path, "TIFF strips do not cover the image");
  Image2D img(int(height), int(width), pitch, std::move(data));
  img.require_finite(path);
  return img;
}

void save_tiff(const Image2D& img, const std::string& path, TiffSampleFormat fmt) {
  const std::uint32_t width = std::uint32_t(img.cols());
  const std::uint32_t height = std::uint32_t(img.rows());
  std::uint16_t bits = 32, sfmt = 3;
  std::size_t bpp = 4;
  if (fmt == TiffSampleFormat::U8) {
    bits = 8; sfmt = 1; bpp = 1;
  } else if (fmt == TiffSampleFormat::U16) {
    bits = 16; sfmt = 1; bpp = 2;
  }
  const std::size_t npix = img.size();
  const std::size_t data_bytes = npix * bpp;

  std::vector<std::uint8_t> out;
  out.reserve(data_bytes + 256);
  // header
  out.push_back('I'); out.push_back('I');
  put_u16(out, 42);
  const std::size_t ifd_off_pos = out.size();
  put_u32(out, 0);  // patched below

  // pixel payload at offset 8
  for (std::size_t i = 0; i < npix; ++i) {
    const double v = img.data()[i];
    if (fmt == TiffSampleFormat::U8) {
      const double c = std::clamp(std::round(v), 0.0, 255.0);
      out.push_back(std::uint8_t(c));
    } else if (fmt == TiffSampleFormat::U16) {
      const double c = std::clamp(std::round(v), 0.0, 65535.0);
      put_u16(out, std::uint16_t(c));
    } else {
      const float fv = float(v);
      std::uint32_t raw;
      std::memcpy(&raw, &fv, 4);
      put_u32(out, raw);
    }
  }
  if (out.size() % 2) out.push_back(0);

  // two RATIONALs (pixels per cm) stored before the IFD
  const std::size_t res_off = out.size();
  const std::uint32_t res_num = 10000000u;
  const std::uint32_t res_den = std::uint32_t(std::lround(img.pitch() * 1000.0));
  put_u32(out, res_num); put_u32(out, res_den);
  put_u32(out, res_num); put_u32(out, res_den);

  const std::uint32_t ifd_off = std::uint32_t(out.size());
  struct Entry { std::uint16_t tag, type; std::uint32_t count, value; };
  const Entry entries[] = {
      {256, 4, 1, width},
      {257, 4, 1, height},
      {258, 3, 1, bits},
      {259, 3, 1, 1},             // no compression
      {262, 3, 1, 1},             // black is zero
      {273, 4, 1, 8},             // single strip right after header
      {277, 3, 1, 1},
      {278, 4, 1, height},
      {279, 4, 1, std::uint32_t(data_bytes)},
      {282, 5, 1, std::uint32_t(res_off)},
      {283, 5, 1, std::uint32_t(res_off + 8)},
      {296, 3, 1, 3},             // resolution unit: cm
      {339, 3, 1, sfmt},
  };
  put_u16(out, std::uint16_t(std::size(entries)));
  for (const Entry& e : entries) {
    put_u16(out, e.tag);
    put_u16(out, e.type);
    put_u32(out, e.count);
    if (e.type == 3) {
      put_u16(out, std::uint16_t(e.value));
      put_u16(out, 0);
    } else {
      put_u32(out, e.value);
    }
  }
  put_u32(out, 0);  // no next IFD

  out[ifd_off_pos] = std::uint8_t(ifd_off & 0xff);
  out[ifd_off_pos + 1] = std::uint8_t((ifd_off >> 8) & 0xff);
  out[ifd_off_pos + 2] = std::uint8_t((ifd_off >> 16) & 0xff);
  out[ifd_off_pos + 3] = std::uint8_t((ifd_off >> 24) & 0xff);

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) io_fail(path, "cannot open file for writing");
  f.write(reinterpret_cast<const char*>(out.data()), std::streamsize(out.size()));
  if (!f) io_fail(path, "write failed");
}

Image2D load_image(const std::string& path) {
  const std::string e = lower_ext(path);
  if (e == "raw" || e == "sabr") return load_raw(path);
  if (e == "tif" || e == "tiff") return load_tiff(path);
  io_fail(path, "unknown image extension (expected .raw/.sabr/.tif/.tiff)");
}

void save_image(const Image2D& img, const std::string& path) {
  const std::string e = lower_ext(path);
  if (e == "raw" || e == "sabr") return save_raw(img, path);
  if (e == "tif" || e == "tiff") return save_tiff(img, path);
  io_fail(path, "unknown image extension (expected .raw/.sabr/.tif/.tiff)");
}

}  // namespace saber
