// Compiled with -mavx2; only reached after the runtime CPU check.
#include <immintrin.h>

#include <cstring>

#include "bbg/simd/kernels.hpp"

namespace bbg::simd::avx2 {

void compose_bytes(const std::uint8_t* first, const std::uint8_t* second,
                   std::uint8_t* out, std::size_t n) noexcept {
  // Permutations have at most 256 points. Pad both operands so every load
  // is in bounds; padded lanes compute garbage that is never copied out.
  alignas(32) std::uint8_t table[256] = {};
  alignas(32) std::uint8_t idx[256] = {};
  alignas(32) std::uint8_t res[256];
  std::memcpy(table, second, n);
  std::memcpy(idx, first, n);

  const std::size_t chunks = (n + 15) / 16;
  const __m256i fifteen = _mm256_set1_epi8(15);
  for (std::size_t block = 0; block < n; block += 32) {
    const __m256i ix = _mm256_load_si256(reinterpret_cast<const __m256i*>(idx + block));
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t c = 0; c < chunks; ++c) {
      // Lookup table chunk c duplicated into both 128-bit lanes.
      const __m256i tab = _mm256_broadcastsi128_si256(
          _mm_load_si128(reinterpret_cast<const __m128i*>(table + 16 * c)));
      const __m256i local = _mm256_sub_epi8(ix, _mm256_set1_epi8(static_cast<char>(16 * c)));
      // Select lanes whose index lies in [16c, 16c + 16): unsigned local <= 15.
      const __m256i in_chunk =
          _mm256_cmpeq_epi8(_mm256_min_epu8(local, fifteen), local);
      const __m256i looked_up = _mm256_shuffle_epi8(tab, _mm256_and_si256(local, fifteen));
      acc = _mm256_blendv_epi8(acc, looked_up, in_chunk);
    }
    _mm256_store_si256(reinterpret_cast<__m256i*>(res + block), acc);
  }
  std::memcpy(out, res, n);
}

void gather_axpy(double* out, const double* src, const std::uint32_t* index,
                 double scale, std::size_t n) noexcept {
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t x = 0;
  for (; x + 4 <= n; x += 4) {
    const __m128i ix = _mm_loadu_si128(reinterpret_cast<const __m128i*>(index + x));
    const __m256d v = _mm256_i32gather_pd(src, ix, 8);
    const __m256d o = _mm256_loadu_pd(out + x);
    _mm256_storeu_pd(out + x, _mm256_add_pd(o, _mm256_mul_pd(s, v)));
  }
  for (; x < n; ++x) out[x] += scale * src[index[x]];
}

double abs_diff_sum(const double* a, const double* b, std::size_t n) noexcept {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t x = 0;
  for (; x + 4 <= n; x += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + x), _mm256_loadu_pd(b + x));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; x < n; ++x) {
    const double d = a[x] - b[x];
    s += d < 0 ? -d : d;
  }
  return s;
}

}  // namespace bbg::simd::avx2
