#include <atomic>
#include <cassert>

#include "bbg/error.hpp"
#include "bbg/simd/kernels.hpp"

namespace bbg::simd {

namespace {

Isa probe() noexcept {
#if defined(BBG_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

Isa detected_isa() noexcept {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2)
    throw ConfigError("AVX2 kernels are not available on this CPU/build");
  active().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

void compose_bytes(std::span<const std::uint8_t> first,
                   std::span<const std::uint8_t> second,
                   std::span<std::uint8_t> out) {
  assert(first.size() == out.size() && second.size() == out.size());
#if defined(BBG_HAVE_AVX2)
  // Below 8 points the scalar loop wins.
  if (active_isa() == Isa::Avx2 && out.size() >= 8 && out.size() <= 256) {
    avx2::compose_bytes(first.data(), second.data(), out.data(), out.size());
    return;
  }
#endif
  scalar::compose_bytes(first.data(), second.data(), out.data(), out.size());
}

void gather_axpy(std::span<double> out, std::span<const double> src,
                 std::span<const std::uint32_t> index, double scale) {
  assert(index.size() == out.size());
#if defined(BBG_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) {
    avx2::gather_axpy(out.data(), src.data(), index.data(), scale, out.size());
    return;
  }
#endif
  scalar::gather_axpy(out.data(), src.data(), index.data(), scale, out.size());
}

double abs_diff_sum(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
#if defined(BBG_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::abs_diff_sum(a.data(), b.data(), a.size());
#endif
  return scalar::abs_diff_sum(a.data(), b.data(), a.size());
}

}  // namespace bbg::simd
