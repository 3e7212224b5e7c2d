#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace bbg {

/// An opaque group element: a canonical fixed-length byte string.
///
/// Two elements are equal iff their encodings are byte-identical. The
/// owning BlackBox guarantees that every element it produces has the same
/// encoding length and that the encoding is canonical.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::string bytes) : bytes_(std::move(bytes)) {}
  explicit GroupElement(std::span<const std::uint8_t> bytes)
      : bytes_(reinterpret_cast<const char*>(bytes.data()), bytes.size()) {}

  std::string_view bytes() const noexcept { return bytes_; }
  std::size_t size() const noexcept { return bytes_.size(); }

  std::span<const std::uint8_t> data() const noexcept {
    return {reinterpret_cast<const std::uint8_t*>(bytes_.data()), bytes_.size()};
  }

  // Lower-case hex of the encoding; used as the stable CSV key.
  std::string hex() const;
  static GroupElement from_hex(std::string_view hex);

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend std::strong_ordering operator<=>(const GroupElement& a,
                                          const GroupElement& b) noexcept {
    return a.bytes_.compare(b.bytes_) <=> 0;
  }

 private:
  std::string bytes_;
};

struct ElementHash {
  std::size_t operator()(const GroupElement& x) const noexcept {
    return std::hash<std::string_view>{}(x.bytes());
  }
};

}  // namespace bbg

template <>
struct std::hash<bbg::GroupElement> : bbg::ElementHash {};
