#include "bbg/simd/kernels.hpp"

#include <cmath>

namespace bbg::simd::scalar {

void compose_bytes(const std::uint8_t* first, const std::uint8_t* second,
                   std::uint8_t* out, std::size_t n) noexcept {
  for (std::size_t p = 0; p < n; ++p) out[p] = second[first[p]];
}

void gather_axpy(double* out, const double* src, const std::uint32_t* index,
                 double scale, std::size_t n) noexcept {
  for (std::size_t x = 0; x < n; ++x) out[x] += scale * src[index[x]];
}

double abs_diff_sum(const double* a, const double* b, std::size_t n) noexcept {
  double s = 0.0;
  for (std::size_t x = 0; x < n; ++x) s += std::fabs(a[x] - b[x]);
  return s;
}

}  // namespace bbg::simd::scalar
