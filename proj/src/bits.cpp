#include "radiole/bits.hpp"

#include <stdexcept>

namespace radiole {

Bits Bits::from_string(std::string_view s) {
  Bits b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      b.set(i);
    } else if (s[i] != '0') {
      throw std::invalid_argument("bit string may only contain 0 and 1");
    }
  }
  return b;
}

Bits Bits::from_uint(std::uint64_t value, std::size_t width) {
  if (width > 64) throw std::invalid_argument("from_uint: width exceeds 64");
  Bits b(width);
  for (std::size_t i = 0; i < width; ++i) {
    b.set(i, (value >> (width - 1 - i)) & 1U);
  }
  return b;
}

std::size_t Bits::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t Bits::count_range(std::size_t first, std::size_t len) const {
  std::size_t c = 0;
  std::size_t i = first;
  const std::size_t end = first + len;
  while (i < end && (i & 63) != 0) c += get(i++);
  while (i + 64 <= end) {
    c += static_cast<std::size_t>(std::popcount(words_[i >> 6]));
    i += 64;
  }
  while (i < end) c += get(i++);
  return c;
}

bool Bits::none() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

Bits& Bits::operator|=(const Bits& other) {
  if (other.size_ != size_) throw std::invalid_argument("Bits: length mismatch in OR");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

bool Bits::subset_of(const Bits& other) const {
  if (other.size_ != size_) throw std::invalid_argument("Bits: length mismatch in subset test");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

int Bits::compare_msb_first(const Bits& other) const {
  if (other.size_ != size_) throw std::invalid_argument("Bits: length mismatch in compare");
  for (std::size_t i = 0; i < size_; ++i) {
    const bool a = get(i);
    const bool b = other.get(i);
    if (a != b) return a ? 1 : -1;
  }
  return 0;
}

std::uint64_t Bits::to_uint() const {
  if (size_ > 64) throw std::invalid_argument("to_uint: more than 64 bits");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < size_; ++i) v = (v << 1) | static_cast<std::uint64_t>(get(i));
  return v;
}

std::string Bits::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::string Bits::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve((size_ + 3) / 4);
  for (std::size_t i = 0; i < size_; i += 4) {
    unsigned nibble = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nibble <<= 1;
      if (i + j < size_ && get(i + j)) nibble |= 1U;
    }
    s.push_back(kDigits[nibble]);
  }
  return s;
}

Bits Bits::from_hex(std::string_view hex, std::size_t size) {
  if (hex.size() != (size + 3) / 4) throw std::invalid_argument("from_hex: digit count does not match length");
  Bits b(size);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[d];
    unsigned nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      nibble = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      nibble = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw std::invalid_argument("from_hex: invalid digit");
    }
    for (std::size_t j = 0; j < 4; ++j) {
      const std::size_t i = d * 4 + j;
      const bool bit = (nibble >> (3 - j)) & 1U;
      if (i < size) {
        b.set(i, bit);
      } else if (bit) {
        throw std::invalid_argument("from_hex: padding bits must be zero");
      }
    }
  }
  return b;
}

}  // namespace radiole
