#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and, where the CPU supports it, an AVX2 variant; the
// dispatcher picks one at first use. Both variants are kept callable so the
// equivalence tests can compare them directly.

#include <cstddef>
#include <cstdint>
#include <span>

namespace bbg::simd {

enum class Isa { Scalar, Avx2 };

// Best ISA supported by the running CPU (and compiled in).
Isa detected_isa() noexcept;

// ISA used by the dispatching entry points below. Defaults to
// detected_isa(); tests and the CLI may force Scalar.
Isa active_isa() noexcept;
void set_active_isa(Isa isa);  // throws if isa is not supported here

const char* isa_name(Isa isa) noexcept;

// out[p] = second[first[p]] for p < n: composition of permutations in
// one-line notation, applying `first` then `second`. All spans have size n.
void compose_bytes(std::span<const std::uint8_t> first,
                   std::span<const std::uint8_t> second,
                   std::span<std::uint8_t> out);

// out[x] += scale * src[index[x]]: one term of a convolution against a
// group translation. index.size() == out.size().
void gather_axpy(std::span<double> out, std::span<const double> src,
                 std::span<const std::uint32_t> index, double scale);

// sum |a[x] - b[x]|
double abs_diff_sum(std::span<const double> a, std::span<const double> b);

namespace scalar {
void compose_bytes(const std::uint8_t* first, const std::uint8_t* second,
                   std::uint8_t* out, std::size_t n) noexcept;
void gather_axpy(double* out, const double* src, const std::uint32_t* index,
                 double scale, std::size_t n) noexcept;
double abs_diff_sum(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace scalar

#if defined(BBG_HAVE_AVX2)
namespace avx2 {
void compose_bytes(const std::uint8_t* first, const std::uint8_t* second,
                   std::uint8_t* out, std::size_t n) noexcept;
void gather_axpy(double* out, const double* src, const std::uint32_t* index,
                 double scale, std::size_t n) noexcept;
double abs_diff_sum(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace bbg::simd
