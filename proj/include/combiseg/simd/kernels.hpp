#pragma once

// Elementwise byte kernels behind the morphology and projection code.
//
// Every kernel has a scalar reference implementation; vector variants are
// compiled per target (AVX2 on x86-64, NEON on AArch64) and selected once at
// runtime from what the CPU reports. Set COMBISEG_SIMD=scalar|avx2|neon in the
// environment to override the choice.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace combiseg::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view name(Backend backend);

struct Kernels {
  Backend backend;
  // out[i] = max(a[i], b[i])
  void (*max_u8)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
                 std::size_t n);
  // out[i] = min(a[i], b[i])
  void (*min_u8)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
                 std::size_t n);
  // out[i] = max(0, a[i] - b[i])
  void (*sub_sat_u8)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
                     std::size_t n);
  // out[i] = 1 - a[i], for a[i] in {0, 1}
  void (*invert_binary)(const std::uint8_t* a, std::uint8_t* out, std::size_t n);
  // sum of a[0..n)
  std::uint64_t (*sum)(const std::uint8_t* a, std::size_t n);
};

const Kernels& scalar_kernels();

/// Null when the variant is not compiled in or the CPU lacks the extension.
const Kernels* avx2_kernels();
const Kernels* neon_kernels();

/// Every backend usable on this machine, scalar first.
std::vector<const Kernels*> available();

/// The kernels used by the library.
const Kernels& active();

/// Switches the process-wide backend. Returns false if it is unavailable.
bool set_active(Backend backend);

}  // namespace combiseg::simd
