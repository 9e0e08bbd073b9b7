// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "combiseg/simd/kernels.hpp"

namespace combiseg::simd {

namespace {

inline __m256i load(const std::uint8_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
inline void store(std::uint8_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

void max_u8(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) store(out + i, _mm256_max_epu8(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

void min_u8(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) store(out + i, _mm256_min_epu8(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

void sub_sat_u8(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
                std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) store(out + i, _mm256_subs_epu8(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] > b[i] ? static_cast<std::uint8_t>(a[i] - b[i]) : 0;
}

void invert_binary(const std::uint8_t* a, std::uint8_t* out, std::size_t n) {
  const __m256i one = _mm256_set1_epi8(1);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) store(out + i, _mm256_xor_si256(load(a + i), one));
  for (; i < n; ++i) out[i] = static_cast<std::uint8_t>(1 - a[i]);
}

std::uint64_t sum(const std::uint8_t* a, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = zero;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) acc = _mm256_add_epi64(acc, _mm256_sad_epu8(load(a + i), zero));
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += a[i];
  return total;
}

}  // namespace

const Kernels& avx2_kernels_unchecked() {
  static const Kernels k{Backend::Avx2, max_u8, min_u8, sub_sat_u8, invert_binary, sum};
  return k;
}

}  // namespace combiseg::simd
