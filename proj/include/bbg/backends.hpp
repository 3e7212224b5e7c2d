#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbg/black_box.hpp"

namespace bbg {

// ---------------------------------------------------------------------------
// Permutations

/// Sym_n on points 1..n, stored in one-line notation (one byte per point,
/// zero-based images). The product s*t applies s first: (s*t)(p) = t(s(p)).
///
/// The exponent is lcm(1..n), supplied as its prime-power factorisation so
/// that pseudo-orders coincide with true orders. That exponent must fit in
/// 64 bits, which limits the degree to 46.
class PermutationGroup final : public BlackBox {
 public:
  static constexpr unsigned kMaxDegree = 46;

  explicit PermutationGroup(unsigned degree);

  unsigned degree() const noexcept { return degree_; }

  std::uint64_t order(const GroupElement& x) const override;
  std::string format(const GroupElement& x) const override;  // cycle notation
  GroupElement parse(std::string_view text) const override;
  std::vector<GroupElement> standard_generators() const override;
  std::string describe() const override;
  GroupElement decode(std::string_view bytes) const override;

  // From 1-based images, e.g. {2, 3, 1} for (1 2 3).
  GroupElement from_images(const std::vector<unsigned>& images) const;
  std::vector<unsigned> images(const GroupElement& x) const;  // 1-based

  // One-line notation "[2,3,1]".
  std::string format_images(const GroupElement& x) const;

 protected:
  GroupElement do_multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement do_invert(const GroupElement& x) const override;

 private:
  unsigned degree_;
};

// lcm of the cycle lengths.
std::uint64_t perm_order(std::span<const std::uint8_t> images);

// ---------------------------------------------------------------------------
// Matrices over a prime field

// |GL_n(F_p)| = p^(n(n-1)/2) (p-1)(p^2-1)...(p^n-1), refined to a coprime base.
// Each p^k - 1 with k even is first split as (p^(k/2) - 1)(p^(k/2) + 1).
FactoredExponent gl_exponent(unsigned n, std::uint64_t p);

enum class MatrixFamily { GL, SL, PSL };

/// Invertible n x n matrices over F_p, p an odd prime below 2^16, as a
/// subgroup of GL_n(F_p). Entries are stored row-major, two bytes each,
/// little endian, reduced to 0..p-1.
///
/// The PSL family works with SL matrices modulo the centre {I, -I}: every
/// element is canonicalised to whichever of M, -M has its first non-zero
/// entry <= (p-1)/2, so equality of encodings is equality in PSL_n.
class MatrixGroup final : public BlackBox {
 public:
  using Matrix = std::vector<std::uint32_t>;  // row-major, n*n

  MatrixGroup(MatrixFamily family, unsigned n, std::uint64_t p);

  MatrixFamily family() const noexcept { return family_; }
  unsigned dimension() const noexcept { return n_; }
  std::uint64_t modulus() const noexcept { return p_; }

  std::string format(const GroupElement& x) const override;  // "[a,b,c,d]"
  GroupElement parse(std::string_view text) const override;
  std::vector<GroupElement> standard_generators() const override;
  std::string describe() const override;
  GroupElement decode(std::string_view bytes) const override;

  // Throws ConfigError if the matrix is singular or (SL/PSL) has det != 1.
  GroupElement from_matrix(Matrix m) const;
  Matrix matrix(const GroupElement& x) const;

  // Every element of the group, by direct enumeration of matrices. Guarded
  // to p^(n*n) <= 2^24.
  std::vector<GroupElement> all_elements() const;

 protected:
  GroupElement do_multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement do_invert(const GroupElement& x) const override;

 private:
  GroupElement encode(Matrix m) const;  // canonicalises for PSL

  MatrixFamily family_;
  unsigned n_;
  std::uint64_t p_;
};

// Gauss-Jordan inverse over F_p. Throws PreconditionError if singular.
MatrixGroup::Matrix matrix_invert(const MatrixGroup::Matrix& m, unsigned n,
                                  std::uint64_t p);
std::uint64_t matrix_determinant(MatrixGroup::Matrix m, unsigned n, std::uint64_t p);

// ---------------------------------------------------------------------------
// Units modulo n

/// (Z/nZ)^* for odd n >= 3, elements stored as 8-byte little-endian
/// residues. The exponent is taken to be n - 1 whether or not n is prime;
/// for composite n that claim is usually false, and the resulting failures
/// of involution_from are exactly what the Miller-Rabin test detects.
class ModularUnits final : public BlackBox {
 public:
  explicit ModularUnits(std::uint64_t modulus);

  std::uint64_t modulus() const noexcept { return n_; }
  std::uint64_t residue(const GroupElement& x) const;
  GroupElement from_residue(std::uint64_t r) const;  // requires gcd(r, n) = 1

  std::string format(const GroupElement& x) const override;
  GroupElement parse(std::string_view text) const override;
  std::vector<GroupElement> standard_generators() const override;
  std::string describe() const override;
  GroupElement decode(std::string_view bytes) const override;

 protected:
  GroupElement do_multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement do_invert(const GroupElement& x) const override;

 private:
  std::uint64_t n_;
};

// ---------------------------------------------------------------------------
// Direct products

/// X_1 x ... x X_k with componentwise arithmetic; the encoding is the
/// concatenation of the component encodings and element literals join the
/// component literals with " | ".
class DirectProduct final : public BlackBox {
 public:
  explicit DirectProduct(std::vector<std::shared_ptr<const BlackBox>> factors);

  const std::vector<std::shared_ptr<const BlackBox>>& factors() const noexcept {
    return factors_;
  }
  GroupElement combine(const std::vector<GroupElement>& parts) const;
  std::vector<GroupElement> split(const GroupElement& x) const;

  std::string format(const GroupElement& x) const override;
  GroupElement parse(std::string_view text) const override;
  std::vector<GroupElement> standard_generators() const override;
  std::string describe() const override;
  GroupElement decode(std::string_view bytes) const override;

 protected:
  GroupElement do_multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement do_invert(const GroupElement& x) const override;

 private:
  std::vector<std::shared_ptr<const BlackBox>> factors_;
  std::vector<std::size_t> offsets_;
};

// ---------------------------------------------------------------------------

/// Builds a backend from a spec string:
///
///   sym:N          Sym_N
///   gl:N:P         GL_N(F_P)
///   sl:N:P         SL_N(F_P)
///   psl:N:P        PSL_N(F_P)
///   units:N        (Z/NZ)^*
///   SPEC^K         direct product of K copies of SPEC
///
/// Throws ConfigError on invalid parameters.
std::shared_ptr<const BlackBox> make_backend(std::string_view spec);

}  // namespace bbg
