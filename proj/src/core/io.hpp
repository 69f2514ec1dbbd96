#pragma once

// Image file I/O.
//
// Raw format: 16-byte little-endian header (magic "SABR", u32 rows,
// u32 cols, f32 pitch in micron) followed by row-major f64 samples.
//
// TIFF: baseline single-channel, uncompressed, 8/16-bit unsigned or
// 32-bit float, single or multi strip, II or MM byte order on read,
// II on write. Integer samples are promoted verbatim to double on load.
// Pixel pitch is carried via the resolution tags when present.

#include <string>

#include "core/image.hpp"

namespace saber {

enum class TiffSampleFormat { F32, U8, U16 };

Image2D load_raw(const std::string& path);
void save_raw(const Image2D& img, const std::string& path);

Image2D load_tiff(const std::string& path);
void save_tiff(const Image2D& img, const std::string& path,
               TiffSampleFormat fmt = TiffSampleFormat::F32);

// Dispatch on extension: .raw / .sabr -> raw, .tif / .tiff -> TIFF.
Image2D load_image(const std::string& path);
void save_image(const Image2D& img, const std::string& path);

}  // namespace saber
