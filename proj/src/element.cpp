#include "boolat/element.hpp"

#include <bit>

namespace boolat {

namespace {

void require_positive_width(int width) {
  if (width < 1) throw domain_error("lattice width must be a positive integer");
}

void require_same_width(const LatticeElement& a, const LatticeElement& b) {
  if (a.width() != b.width()) {
    throw dimension_error("width mismatch: " + std::to_string(a.width()) + " vs " +
                          std::to_string(b.width()));
  }
  if (a.width() == 0) throw domain_error("operation on width-0 placeholder element");
}

int hex_digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

LatticeElement LatticeElement::bottom(int width) {
  require_positive_width(width);
  return LatticeElement(width, std::vector<std::uint64_t>(words_for_width(width), 0));
}

LatticeElement LatticeElement::top(int width) {
  require_positive_width(width);
  std::vector<std::uint64_t> w(words_for_width(width), ~std::uint64_t{0});
  if (width % 64 != 0) w.back() = (std::uint64_t{1} << (width % 64)) - 1;
  return LatticeElement(width, std::move(w));
}

LatticeElement LatticeElement::atom(int width, int atom_index) {
  require_positive_width(width);
  if (atom_index < 1 || atom_index > width) {
    throw domain_error("atom index " + std::to_string(atom_index) + " out of range 1.." +
                       std::to_string(width));
  }
  std::vector<std::uint64_t> w(words_for_width(width), 0);
  w[(atom_index - 1) / 64] = std::uint64_t{1} << ((atom_index - 1) % 64);
  return LatticeElement(width, std::move(w));
}

LatticeElement LatticeElement::from_words(int width, std::vector<std::uint64_t> words) {
  require_positive_width(width);
  if (static_cast<int>(words.size()) != words_for_width(width)) {
    throw dimension_error("word count " + std::to_string(words.size()) +
                          " does not match width " + std::to_string(width));
  }
  if (width % 64 != 0) {
    std::uint64_t tail_mask = (std::uint64_t{1} << (width % 64)) - 1;
    if ((words.back() & ~tail_mask) != 0) {
      throw domain_error("bits set beyond width " + std::to_string(width));
    }
  }
  return LatticeElement(width, std::move(words));
}

LatticeElement LatticeElement::from_hex(int width, std::string_view hex) {
  require_positive_width(width);
  const int digits = (width + 3) / 4;
  if (static_cast<int>(hex.size()) != digits) {
    throw parse_error("expected " + std::to_string(digits) + " hex digits for width " +
                          std::to_string(width) + ", got " + std::to_string(hex.size()),
                      0);
  }
  std::vector<std::uint64_t> w(words_for_width(width), 0);
  for (int d = 0; d < digits; ++d) {
    int v = hex_digit_value(hex[digits - 1 - d]);  // least significant digit last
    if (v < 0) throw parse_error("invalid hex digit", digits - 1 - d);
    w[d / 16] |= static_cast<std::uint64_t>(v) << (4 * (d % 16));
  }
  if (width % 64 != 0) {
    std::uint64_t tail_mask = (std::uint64_t{1} << (width % 64)) - 1;
    if ((w.back() & ~tail_mask) != 0) {
      throw domain_error("hex literal has bits above width " + std::to_string(width));
    }
  }
  return LatticeElement(width, std::move(w));
}

std::string LatticeElement::to_hex() const {
  const int digits = (width_ + 3) / 4;
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int d = 0; d < digits; ++d) {
    unsigned nibble = (words_[d / 16] >> (4 * (d % 16))) & 0xF;
    out[digits - 1 - d] = "0123456789abcdef"[nibble];
  }
  return out;
}

bool LatticeElement::bit(int pos) const {
  if (pos < 0 || pos >= width_) {
    throw domain_error("bit position " + std::to_string(pos) + " out of range for width " +
                       std::to_string(width_));
  }
  return (words_[pos / 64] >> (pos % 64)) & 1;
}

bool LatticeElement::has_atom(int atom_index) const { return bit(atom_index - 1); }

int LatticeElement::popcount() const noexcept {
  int c = 0;
  for (std::uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool LatticeElement::is_bottom() const noexcept {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

bool LatticeElement::is_top() const noexcept { return popcount() == width_ && width_ > 0; }

std::strong_ordering LatticeElement::operator<=>(const LatticeElement& other) const {
  if (auto c = width_ <=> other.width_; c != 0) return c;
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (auto c = words_[i] <=> other.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

LatticeElement meet(const LatticeElement& a, const LatticeElement& b) {
  require_same_width(a, b);
  std::vector<std::uint64_t> w(a.words().begin(), a.words().end());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= b.words()[i];
  return LatticeElement::from_words(a.width(), std::move(w));
}

LatticeElement join(const LatticeElement& a, const LatticeElement& b) {
  require_same_width(a, b);
  std::vector<std::uint64_t> w(a.words().begin(), a.words().end());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] |= b.words()[i];
  return LatticeElement::from_words(a.width(), std::move(w));
}

bool leq(const LatticeElement& a, const LatticeElement& b) {
  require_same_width(a, b);
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    if ((a.words()[i] & b.words()[i]) != a.words()[i]) return false;
  }
  return true;
}

std::vector<LatticeElement> atoms(int width) {
  require_positive_width(width);
  std::vector<LatticeElement> out;
  out.reserve(static_cast<std::size_t>(width));
  for (int i = 1; i <= width; ++i) out.push_back(LatticeElement::atom(width, i));
  return out;
}

}  // namespace boolat
