#include <atomic>
#include <cstdlib>
#include <string>

#include "combiseg/simd/kernels.hpp"

namespace combiseg::simd {

#if defined(COMBISEG_HAVE_AVX2)
const Kernels& avx2_kernels_unchecked();
#endif
#if defined(COMBISEG_HAVE_NEON)
const Kernels& neon_kernels_unchecked();
#endif

std::string_view name(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

const Kernels* avx2_kernels() {
#if defined(COMBISEG_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_kernels_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const Kernels* neon_kernels() {
#if defined(COMBISEG_HAVE_NEON)
  // NEON is part of the AArch64 baseline.
  return &neon_kernels_unchecked();
#else
  return nullptr;
#endif
}

std::vector<const Kernels*> available() {
  std::vector<const Kernels*> out{&scalar_kernels()};
  if (auto* k = avx2_kernels()) out.push_back(k);
  if (auto* k = neon_kernels()) out.push_back(k);
  return out;
}

namespace {

const Kernels* lookup(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return &scalar_kernels();
    case Backend::Avx2: return avx2_kernels();
    case Backend::Neon: return neon_kernels();
  }
  return nullptr;
}

const Kernels* initial_choice() {
  if (const char* env = std::getenv("COMBISEG_SIMD")) {
    const std::string wanted(env);
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon})
      if (wanted == name(b))
        if (auto* k = lookup(b)) return k;
  }
  return available().back();
}

std::atomic<const Kernels*>& slot() {
  static std::atomic<const Kernels*> current{initial_choice()};
  return current;
}

}  // namespace

const Kernels& active() { return *slot().load(std::memory_order_acquire); }

bool set_active(Backend backend) {
  const Kernels* k = lookup(backend);
  if (!k) return false;
  slot().store(k, std::memory_order_release);
  return true;
}

}  // namespace combiseg::simd
