#include <set>
#include <sstream>

#include "bbg/backends.hpp"
#include "bbg/error.hpp"
#include "text_util.hpp"

namespace bbg {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) { return mod_pow(a, p - 2, p); }

// Least primitive root modulo the prime p.
std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  std::vector<std::uint64_t> primes;
  std::uint64_t m = p - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) primes.push_back(m);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : primes)
      if (mod_pow(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;
}

// Appends p^k - 1 to raw, split into (p^(k/2) - 1)(p^(k/2) + 1) while k is even.
void push_cyclotomic_split(std::vector<std::pair<std::uint64_t, std::uint32_t>>& raw,
                           std::uint64_t p, std::uint32_t k) {
  if (k % 2 == 0) {
    push_cyclotomic_split(raw, p, k / 2);
    std::uint64_t plus = checked_pow(p, k / 2) + 1;
    raw.emplace_back(plus, 1);
    return;
  }
  std::uint64_t minus = checked_pow(p, k) - 1;
  if (minus >= 2) raw.emplace_back(minus, 1);
}

unsigned checked_dim(unsigned n) {
  if (n < 1 || n > 8) throw ConfigError("matrix dimension must be in 1..8");
  return n;
}

std::uint64_t checked_field(std::uint64_t p) {
  if (p < 3 || p >= 65536 || !is_prime(p))
    throw ConfigError("matrix backend needs an odd prime field size below 65536, got " +
                      std::to_string(p));
  return p;
}

GroupElement identity_matrix_encoding(unsigned n) {
  std::string bytes(2 * n * n, '\0');
  for (unsigned i = 0; i < n; ++i) bytes[2 * (i * n + i)] = 1;
  return GroupElement(std::move(bytes));
}

}  // namespace

FactoredExponent gl_exponent(unsigned n, std::uint64_t p) {
  if (n < 1) throw ConfigError("gl_exponent: n must be >= 1");
  if (!is_prime(p)) throw ConfigError("gl_exponent: p must be prime");
  std::vector<std::pair<std::uint64_t, std::uint32_t>> raw;
  if (n >= 2) raw.emplace_back(p, n * (n - 1) / 2);
  for (std::uint32_t k = 1; k <= n; ++k) push_cyclotomic_split(raw, p, k);
  return coprime_refine(raw);
}

std::uint64_t matrix_determinant(MatrixGroup::Matrix m, unsigned n, std::uint64_t p) {
  std::uint64_t det = 1;
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    while (pivot < n && m[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (unsigned c = 0; c < n; ++c) std::swap(m[pivot * n + c], m[col * n + c]);
      det = (p - det) % p;
    }
    const std::uint64_t pv = m[col * n + col];
    det = det * pv % p;
    const std::uint64_t inv = mod_inverse(pv, p);
    for (unsigned r = col + 1; r < n; ++r) {
      const std::uint64_t f = m[r * n + col] * inv % p;
      if (!f) continue;
      for (unsigned c = col; c < n; ++c)
        m[r * n + c] = static_cast<std::uint32_t>((m[r * n + c] + (p - f) * m[col * n + c]) % p);
    }
  }
  return det;
}

MatrixGroup::Matrix matrix_invert(const MatrixGroup::Matrix& m, unsigned n, std::uint64_t p) {
  // Augmented [m | I], reduced to [I | m^-1].
  const unsigned w = 2 * n;
  std::vector<std::uint64_t> a(n * w, 0);
  for (unsigned r = 0; r < n; ++r) {
    for (unsigned c = 0; c < n; ++c) a[r * w + c] = m[r * n + c] % p;
    a[r * w + n + r] = 1;
  }
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    while (pivot < n && a[pivot * w + col] == 0) ++pivot;
    if (pivot == n) throw PreconditionError("matrix_invert: singular matrix");
    if (pivot != col)
      for (unsigned c = 0; c < w; ++c) std::swap(a[pivot * w + c], a[col * w + c]);
    const std::uint64_t inv = mod_inverse(a[col * w + col], p);
    for (unsigned c = 0; c < w; ++c) a[col * w + c] = a[col * w + c] * inv % p;
    for (unsigned r = 0; r < n; ++r) {
      if (r == col) continue;
      const std::uint64_t f = a[r * w + col];
      if (!f) continue;
      for (unsigned c = 0; c < w; ++c)
        a[r * w + c] = (a[r * w + c] + (p - f) * a[col * w + c]) % p;
    }
  }
  MatrixGroup::Matrix out(n * n);
  for (unsigned r = 0; r < n; ++r)
    for (unsigned c = 0; c < n; ++c) out[r * n + c] = static_cast<std::uint32_t>(a[r * w + n + c]);
  return out;
}

MatrixGroup::MatrixGroup(MatrixFamily family, unsigned n, std::uint64_t p)
    : BlackBox(identity_matrix_encoding(checked_dim(n)), gl_exponent(n, checked_field(p))),
      family_(family),
      n_(n),
      p_(p) {
  if (family == MatrixFamily::PSL && n != 2)
    throw ConfigError("PSL backend is only provided for n = 2");
}

GroupElement MatrixGroup::encode(Matrix m) const {
  if (family_ == MatrixFamily::PSL) {
    for (auto v : m) {
      if (v == 0) continue;
      if (v > (p_ - 1) / 2)
        for (auto& e : m) e = e ? static_cast<std::uint32_t>(p_ - e) : 0;
      break;
    }
  }
  std::string bytes(2 * m.size(), '\0');
  for (std::size_t k = 0; k < m.size(); ++k) {
    bytes[2 * k] = static_cast<char>(m[k] & 0xff);
    bytes[2 * k + 1] = static_cast<char>(m[k] >> 8);
  }
  return GroupElement(std::move(bytes));
}

MatrixGroup::Matrix MatrixGroup::matrix(const GroupElement& x) const {
  auto d = x.data();
  Matrix m(n_ * n_);
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = d[2 * k] | (std::uint32_t{d[2 * k + 1]} << 8);
  return m;
}

GroupElement MatrixGroup::from_matrix(Matrix m) const {
  if (m.size() != n_ * n_)
    throw ConfigError("matrix literal needs " + std::to_string(n_ * n_) + " entries");
  for (auto& e : m) e = static_cast<std::uint32_t>(e % p_);
  const std::uint64_t det = matrix_determinant(m, n_, p_);
  if (det == 0) throw ConfigError("matrix is singular");
  if (family_ != MatrixFamily::GL && det != 1)
    throw ConfigError("matrix does not have determinant 1");
  return encode(std::move(m));
}

GroupElement MatrixGroup::do_multiply(const GroupElement& a, const GroupElement& b) const {
  const Matrix x = matrix(a), y = matrix(b);
  Matrix out(n_ * n_);
  for (unsigned r = 0; r < n_; ++r)
    for (unsigned c = 0; c < n_; ++c) {
      std::uint64_t s = 0;
      for (unsigned k = 0; k < n_; ++k) s += std::uint64_t{x[r * n_ + k]} * y[k * n_ + c];
      out[r * n_ + c] = static_cast<std::uint32_t>(s % p_);
    }
  return encode(std::move(out));
}

GroupElement MatrixGroup::do_invert(const GroupElement& x) const {
  return encode(matrix_invert(matrix(x), n_, p_));
}

std::string MatrixGroup::format(const GroupElement& x) const {
  std::ostringstream os;
  os << '[';
  const Matrix m = matrix(x);
  for (std::size_t k = 0; k < m.size(); ++k) os << (k ? "," : "") << m[k];
  os << ']';
  return os.str();
}

GroupElement MatrixGroup::parse(std::string_view text) const {
  text = detail::trim(text);
  if (text.size() >= 2 && text.front() == '[' && text.back() == ']')
    text = text.substr(1, text.size() - 2);
  Matrix m;
  for (auto piece : detail::split_any(text, ",; []")) {
    const std::int64_t v = detail::parse_i64(piece, "matrix entry");
    const auto p = static_cast<std::int64_t>(p_);
    m.push_back(static_cast<std::uint32_t>(((v % p) + p) % p));
  }
  return from_matrix(std::move(m));
}

std::vector<GroupElement> MatrixGroup::standard_generators() const {
  // Elementary transvections generate SL_n(F_p); a diagonal matrix with a
  // primitive root adds the determinant for GL_n.
  std::vector<GroupElement> gens;
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) {
      if (i == j) continue;
      Matrix m(n_ * n_, 0);
      for (unsigned d = 0; d < n_; ++d) m[d * n_ + d] = 1;
      m[i * n_ + j] = 1;
      gens.push_back(encode(std::move(m)));
    }
  if (family_ == MatrixFamily::GL) {
    Matrix m(n_ * n_, 0);
    for (unsigned d = 0; d < n_; ++d) m[d * n_ + d] = 1;
    m[0] = static_cast<std::uint32_t>(primitive_root(p_));
    gens.push_back(encode(std::move(m)));
  }
  if (gens.empty()) gens.push_back(identity());
  return gens;
}

std::string MatrixGroup::describe() const {
  const char* name = family_ == MatrixFamily::GL ? "gl" : family_ == MatrixFamily::SL ? "sl" : "psl";
  return std::string(name) + ":" + std::to_string(n_) + ":" + std::to_string(p_);
}

GroupElement MatrixGroup::decode(std::string_view bytes) const {
  if (bytes.size() != 2 * n_ * n_) throw ConfigError("encoding has wrong length for " + describe());
  GroupElement raw{std::string(bytes)};
  Matrix m = matrix(raw);
  for (auto e : m)
    if (e >= p_) throw ConfigError("matrix entry out of range in encoding");
  GroupElement canonical = from_matrix(m);
  if (canonical != raw) throw ConfigError("encoding is not canonical for " + describe());
  return canonical;
}

std::vector<GroupElement> MatrixGroup::all_elements() const {
  const unsigned cells = n_ * n_;
  std::uint64_t total = 1;
  for (unsigned k = 0; k < cells; ++k) {
    total *= p_;
    if (total > (1u << 24)) throw NumericGuardError("matrix group too large to enumerate");
  }
  std::set<GroupElement> seen;
  Matrix m(cells, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (unsigned k = 0; k < cells; ++k) {
      m[k] = static_cast<std::uint32_t>(c % p_);
      c /= p_;
    }
    const std::uint64_t det = matrix_determinant(m, n_, p_);
    if (det == 0 || (family_ != MatrixFamily::GL && det != 1)) continue;
    seen.insert(encode(m));
  }
  return {seen.begin(), seen.end()};
}

}  // namespace bbg
