#include <arm_neon.h>

#include "combiseg/simd/kernels.hpp"

namespace combiseg::simd {

namespace {

void max_u8(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) vst1q_u8(out + i, vmaxq_u8(vld1q_u8(a + i), vld1q_u8(b + i)));
  for (; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

void min_u8(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) vst1q_u8(out + i, vminq_u8(vld1q_u8(a + i), vld1q_u8(b + i)));
  for (; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

void sub_sat_u8(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
                std::size_t n) {
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) vst1q_u8(out + i, vqsubq_u8(vld1q_u8(a + i), vld1q_u8(b + i)));
  for (; i < n; ++i) out[i] = a[i] > b[i] ? static_cast<std::uint8_t>(a[i] - b[i]) : 0;
}

void invert_binary(const std::uint8_t* a, std::uint8_t* out, std::size_t n) {
  const uint8x16_t one = vdupq_n_u8(1);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) vst1q_u8(out + i, veorq_u8(vld1q_u8(a + i), one));
  for (; i < n; ++i) out[i] = static_cast<std::uint8_t>(1 - a[i]);
}

std::uint64_t sum(const std::uint8_t* a, std::size_t n) {
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) acc = vpadalq_u32(acc, vpaddlq_u16(vpaddlq_u8(vld1q_u8(a + i))));
  std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  for (; i < n; ++i) total += a[i];
  return total;
}

}  // namespace

const Kernels& neon_kernels_unchecked() {
  static const Kernels k{Backend::Neon, max_u8, min_u8, sub_sat_u8, invert_binary, sum};
  return k;
}

}  // namespace combiseg::simd
