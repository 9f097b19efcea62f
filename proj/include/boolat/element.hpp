#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boolat/errors.hpp"

namespace boolat {

/// Number of 64-bit words needed to hold `width` bits.
constexpr int words_for_width(int width) noexcept { return (width + 63) / 64; }

/// An element of the Boolean lattice B_n, stored as an n-bit vector over
/// 64-bit words. Bit i-1 (counting from the least significant bit of
/// words()[0]) is set exactly when atom i lies below the element.
///
/// The width travels with the value, so operations on mixed widths fail
/// loudly instead of silently truncating. Values are immutable plain data:
/// every operation returns a new element and is safe to call concurrently.
class LatticeElement {
 public:
  LatticeElement() = default;  // width-0 placeholder, unusable in lattice ops

  static LatticeElement bottom(int width);
  static LatticeElement top(int width);
  static LatticeElement atom(int width, int atom_index);  // atom_index in 1..width
  static LatticeElement from_words(int width, std::vector<std::uint64_t> words);

  /// Canonical hex form: ceil(width/4) lowercase digits, most significant
  /// first, atom 1 in the least significant bit. Uppercase input accepted.
  static LatticeElement from_hex(int width, std::string_view hex);
  std::string to_hex() const;

  int width() const noexcept { return width_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool bit(int pos) const;              // 0-based bit position
  bool has_atom(int atom_index) const;  // 1-based atom index
  int popcount() const noexcept;
  bool is_bottom() const noexcept;
  bool is_top() const noexcept;
  bool is_atom() const noexcept { return popcount() == 1; }

  bool operator==(const LatticeElement&) const = default;

  /// Canonical order: by width, then by value with the most significant
  /// word deciding first. Used for sorted closures and deterministic output.
  std::strong_ordering operator<=>(const LatticeElement& other) const;

 private:
  LatticeElement(int width, std::vector<std::uint64_t> words)
      : width_(width), words_(std::move(words)) {}

  int width_ = 0;
  std::vector<std::uint64_t> words_;
};

LatticeElement meet(const LatticeElement& a, const LatticeElement& b);
LatticeElement join(const LatticeElement& a, const LatticeElement& b);

/// Order of B_n: true iff a AND b == a.
bool leq(const LatticeElement& a, const LatticeElement& b);

/// The atoms of B_n in index order: n elements, each with a single bit set.
std::vector<LatticeElement> atoms(int width);

}  // namespace boolat
