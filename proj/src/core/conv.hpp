#pragma once

// 2D "same"-size linear convolution with zero-padded boundaries.
// Two interchangeable paths: direct spatial accumulation and padded-FFT
// multiplication; Auto picks FFT once the kernel area exceeds 49 pixels.

#include "core/image.hpp"

namespace saber {

enum class ConvPath { Auto, Direct, Fft };

// Kernel must have odd rows/cols and the same pitch as the image.
// Output has the image's shape; boundaries behave as if the image were
// zero outside its extent.
Image2D convolve_same(const Image2D& image, const Image2D& kernel,
                      ConvPath path = ConvPath::Auto);

}  // namespace saber
