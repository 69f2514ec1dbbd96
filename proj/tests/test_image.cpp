#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/image.hpp"
#include "helpers.hpp"

using saber::Image2D;
using saber::WeightMask;

TEST_CASE("normalize: sample equal to bright gives ones") {
  Image2D bright(4, 5, 1.0, 2.0);
  Image2D dark(4, 5, 1.0, 0.0);
  Image2D out = saber::normalize_radiograph(bright, bright, dark);
  for (double v : out.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("normalize: sample equal to dark gives zeros") {
  Image2D bright(4, 5, 1.0, 2.0);
  Image2D dark(4, 5, 1.0, 0.3);
  Image2D out = saber::normalize_radiograph(dark, bright, dark);
  for (double v : out.values()) CHECK(v == 0.0);
}

TEST_CASE("normalize: elementwise against direct expression") {
  std::mt19937 rng(11);
  Image2D sample = testutil::random_image(3, 3, 1.0, rng, 0.6, 1.9);
  Image2D bright(3, 3, 1.0, 2.0);
  Image2D dark(3, 3, 1.0, 0.5);
  Image2D out = saber::normalize_radiograph(sample, bright, dark);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(out.at(i, j) == doctest::Approx((sample.at(i, j) - 0.5) / 1.5).epsilon(1e-14));
}

TEST_CASE("normalize: bright <= dark names the offending pixel") {
  Image2D sample(2, 2, 1.0, 1.0);
  Image2D bright(2, 2, 1.0, 2.0);
  Image2D dark(2, 2, 1.0, 0.0);
  dark.at(1, 0) = 2.5;
  CHECK_THROWS_WITH_AS(saber::normalize_radiograph(sample, bright, dark),
                       doctest::Contains("(1,0)"), std::invalid_argument);
}

TEST_CASE("normalize: shape mismatch rejected") {
  Image2D a(2, 2, 1.0, 1.0), b(2, 3, 1.0, 2.0), d(2, 2, 1.0, 0.0);
  CHECK_THROWS_AS(saber::normalize_radiograph(a, b, d), std::invalid_argument);
}

TEST_CASE("normalize then un-normalize round trip") {
  std::mt19937 rng(7);
  Image2D sample = testutil::random_image(16, 12, 0.5, rng, 0.0, 3.0);
  Image2D bright = testutil::random_image(16, 12, 0.5, rng, 4.0, 6.0);
  Image2D dark = testutil::random_image(16, 12, 0.5, rng, 0.0, 0.5);
  Image2D norm = saber::normalize_radiograph(sample, bright, dark);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 12; ++j) {
      const double back =
          norm.at(i, j) * (bright.at(i, j) - dark.at(i, j)) + dark.at(i, j);
      CHECK(back == doctest::Approx(sample.at(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("masked_rmse: trivial cases") {
  std::mt19937 rng(3);
  Image2D a = testutil::random_image(4, 4, 1.0, rng);
  WeightMask ones(4, 4, 1.0, 1.0);
  CHECK(saber::masked_rmse(a, a, ones) == 0.0);

  Image2D b = a;
  for (auto& v : b.values()) v -= 0.37;
  CHECK(saber::masked_rmse(a, b, ones) == doctest::Approx(0.37).epsilon(1e-13));
}

TEST_CASE("masked_rmse: checkerboard mask against scalar loop") {
  std::mt19937 rng(5);
  Image2D a = testutil::random_image(4, 4, 1.0, rng);
  Image2D b = testutil::random_image(4, 4, 1.0, rng);
  WeightMask m(4, 4, 1.0, 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = double((i + j) % 2);

  double num = 0.0, den = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double d = a.at(i, j) - b.at(i, j);
      num += m.at(i, j) * d * d;
      den += m.at(i, j);
    }
  CHECK(saber::masked_rmse(a, b, m) ==
        doctest::Approx(std::sqrt(num / den)).epsilon(1e-13));
  CHECK(saber::masked_rmse(a, b, m) == saber::masked_rmse(b, a, m));
}

TEST_CASE("masked_rmse: all-zero mask rejected") {
  Image2D a(2, 2, 1.0, 0.0);
  WeightMask z(2, 2, 1.0, 0.0);
  CHECK_THROWS_AS(saber::masked_rmse(a, a, z), std::invalid_argument);
}

TEST_CASE("corner_noise_level: constant image is zero") {
  Image2D img(32, 48, 1.0, 3.14);
  CHECK(saber::corner_noise_level(img, 8) == 0.0);
}

TEST_CASE("corner_noise_level: known 2x2 corner patches") {
  Image2D img(8, 8, 1.0, 5.0);
  // top-left [1 2; 3 4], top-right [0 0; 0 2], bottom-left [-1 1; -1 1],
  // bottom-right constant
  img.at(0, 0) = 1; img.at(0, 1) = 2; img.at(1, 0) = 3; img.at(1, 1) = 4;
  img.at(0, 6) = 0; img.at(0, 7) = 0; img.at(1, 6) = 0; img.at(1, 7) = 2;
  img.at(6, 0) = -1; img.at(6, 1) = 1; img.at(7, 0) = -1; img.at(7, 1) = 1;
  img.at(6, 6) = 10; img.at(6, 7) = 10; img.at(7, 6) = 10; img.at(7, 7) = 10;
  const double expect =
      0.25 * (std::sqrt(5.0 / 3.0) + 1.0 + std::sqrt(4.0 / 3.0) + 0.0);
  CHECK(saber::corner_noise_level(img, 2) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("corner_noise_level: recovers iid sigma within 15 percent") {
  std::mt19937 rng(42);
  std::normal_distribution<double> n(0.0, 0.01);
  Image2D img(128, 128, 1.0, 0.5);
  for (auto& v : img.values()) v += n(rng);
  const double sd = saber::corner_noise_level(img, 50);
  CHECK(sd == doctest::Approx(0.01).epsilon(0.15));
}

TEST_CASE("corner_noise_level: box too large rejected") {
  Image2D img(16, 16, 1.0, 0.0);
  CHECK_THROWS_AS(saber::corner_noise_level(img, 9), std::invalid_argument);
}

TEST_CASE("interior_mask bands") {
  WeightMask m = saber::interior_mask(20, 10, 1.0, 0.1);
  CHECK(m.at(0, 5) == 0.0);
  CHECK(m.at(1, 5) == 0.0);
  CHECK(m.at(2, 5) == 1.0);
  CHECK(m.at(10, 0) == 0.0);
  CHECK(m.at(10, 1) == 1.0);
  CHECK(m.at(19, 9) == 0.0);
}
