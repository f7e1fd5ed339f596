#include "levyfht/rng.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"

using namespace levyfht;

TEST_CASE("philox 4x32-10 known-answer vectors") {
  // Vectors from the Random123 distribution (kat_vectors).
  auto out = Rng::philox4x32_10({0u, 0u, 0u, 0u}, {0u, 0u});
  CHECK(out[0] == 0x6627e8d5u);
  CHECK(out[1] == 0xe169c58du);
  CHECK(out[2] == 0xbc57ac4cu);
  CHECK(out[3] == 0x9b00dbd8u);

  out = Rng::philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                           {0xffffffffu, 0xffffffffu});
  CHECK(out[0] == 0x408f276du);
  CHECK(out[1] == 0x41c83b0eu);
  CHECK(out[2] == 0xa20bc7c6u);
  CHECK(out[3] == 0x6d5451fdu);

  out = Rng::philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                           {0xa4093822u, 0x299f31d0u});
  CHECK(out[0] == 0xd16cfe09u);
  CHECK(out[1] == 0x94fdccebu);
  CHECK(out[2] == 0x5001e420u);
  CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and distinct") {
  Rng a(42, RngDomain::kTrials, 7);
  Rng b(42, RngDomain::kTrials, 7);
  Rng c(42, RngDomain::kTrials, 8);
  Rng d(43, RngDomain::kTrials, 7);
  bool all_equal = true;
  bool c_differs = false;
  bool d_differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto va = a.next_u64();
    all_equal &= (va == b.next_u64());
    c_differs |= (va != c.next_u64());
    d_differs |= (va != d.next_u64());
  }
  CHECK(all_equal);
  CHECK(c_differs);
  CHECK(d_differs);
}

TEST_CASE("uniform01 stays inside the open interval and has the right mean") {
  Rng rng(1, RngDomain::kTest, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  const double mean = sum / n;
  const double se = std::sqrt(1.0 / 12.0 / n);
  CHECK(std::abs(mean - 0.5) < 4.0 * se);
}

TEST_CASE("normal moments") {
  Rng rng(2, RngDomain::kTest, 0);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / n) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(sum2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("below is unbiased across the range") {
  Rng rng(3, RngDomain::kTest, 0);
  const std::uint32_t m = 7;
  std::vector<int> counts(m, 0);
  const int n = 140000;
  for (int i = 0; i < n; ++i) ++counts[rng.below(m)];
  for (std::uint32_t v = 0; v < m; ++v) {
    const double expected = static_cast<double>(n) / m;
    CHECK(std::abs(counts[v] - expected) < 5.0 * std::sqrt(expected));
  }
}

TEST_CASE("poisson counts have the right mean and variance") {
  Rng rng(4, RngDomain::kTest, 0);
  const double mean = 80.0;  // exercises the chunked path
  const int n = 50000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = static_cast<double>(sample_poisson(mean, rng));
    sum += v;
    sum2 += v * v;
  }
  const double m = sum / n;
  const double var = sum2 / n - m * m;
  CHECK(std::abs(m - mean) < 4.0 * std::sqrt(mean / n));
  CHECK(std::abs(var - mean) < 5.0 * mean * std::sqrt(2.0 / n));
  CHECK(sample_poisson(0.0, rng) == 0);
}
