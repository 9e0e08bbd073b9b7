#include "combiseg/simd/kernels.hpp"

namespace combiseg::simd {

namespace {

void max_u8(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

void min_u8(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

void sub_sat_u8(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = a[i] > b[i] ? static_cast<std::uint8_t>(a[i] - b[i]) : 0;
}

void invert_binary(const std::uint8_t* a, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(1 - a[i]);
}

std::uint64_t sum(const std::uint8_t* a, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += a[i];
  return total;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{Backend::Scalar, max_u8, min_u8, sub_sat_u8, invert_binary, sum};
  return k;
}

}  // namespace combiseg::simd
