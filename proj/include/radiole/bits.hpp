#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace radiole {

/// Fixed-length bit vector backed by 64-bit words.
///
/// Used for radio packets, beep messages and superimposed codewords. Bit 0 is
/// the first (most significant when printed) bit of the string.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static Bits from_string(std::string_view s);
  /// The low `width` bits of `value`, most significant bit first.
  static Bits from_uint(std::uint64_t value, std::size_t width);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  std::size_t count() const;
  /// Number of set bits in [first, first + len).
  std::size_t count_range(std::size_t first, std::size_t len) const;
  bool none() const;
  bool any() const { return !none(); }

  Bits& operator|=(const Bits& other);
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  bool operator==(const Bits& other) const = default;

  /// True iff every set bit of *this is set in `other`.
  bool subset_of(const Bits& other) const;
  /// Numeric comparison with bit 0 as the most significant bit.
  int compare_msb_first(const Bits& other) const;
  /// Interprets the bits MSB-first as an unsigned integer (size <= 64).
  std::uint64_t to_uint() const;

  std::string to_string() const;
  std::string to_hex() const;
  static Bits from_hex(std::string_view hex, std::size_t size);

  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace radiole
