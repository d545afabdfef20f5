#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "radiole/bits.hpp"
#include "radiole/random.hpp"

namespace radiole {

/// Fills `size` bits, each one independently with probability p (p is
/// truncated to 20 binary digits).
Bits random_bits(Stream& stream, std::size_t size, double p);

/// Bitwise OR of equally long words; the empty list gives `length` zeros.
Bits superimpose(std::span<const Bits> words, std::size_t length);
Bits superimpose(std::span<const Bits> words);

/// 4 (k+1)^2 ceil(log2 N)
std::size_t si_length(std::uint64_t N, unsigned k);

/// Random SI(k) code over the universe {0, ..., N-1}.
struct SICode {
  std::uint64_t N = 0;
  unsigned k = 0;
  std::size_t length = 0;
  unsigned attempts = 1;
  bool verified = false;
  std::vector<Bits> words;

  const Bits& codeword(std::uint64_t i) const { return words.at(i); }
};

SICode si_generate(std::uint64_t N, unsigned k, const RandomSource& rng);

/// Checks uniqueness among superimpositions of <= k codewords and that no
/// superimposition of k+1 .. max_size codewords equals one of them.
bool si_verify(const SICode& code, unsigned max_size);

/// Codeword of `id` in an implicit random SI(k) code keyed by `code_key`;
/// used when the universe is too large to materialize.
Bits si_codeword(const RandomSource& rng, std::uint64_t code_key, unsigned k, std::size_t length, std::uint64_t id);

struct DecodeResult {
  bool more_than_k = false;
  std::vector<std::uint64_t> ids;  // valid when !more_than_k

  bool operator==(const DecodeResult&) const = default;
};

DecodeResult si_decode(const SICode& code, const Bits& word);

/// Decoding restricted to a known set of possible members.
DecodeResult si_decode_among(const Bits& word, unsigned k, std::span<const std::uint64_t> ids,
                             std::span<const Bits> codewords);

/// Hex dump, header "N k l" then one codeword per line.
void write_code(std::ostream& out, const SICode& code);
SICode read_code(std::istream& in);

struct ApproxCodeParams {
  std::uint64_t N = 2;
  std::uint64_t k = 2;
  double delta = 0.1;
  double c_b = 48.0;
  std::size_t block_count = 1;
  std::size_t block_len = 1;

  static ApproxCodeParams make(std::uint64_t N, std::uint64_t k, double delta, double c_b = 48.0);
  std::size_t length() const { return block_count * block_len; }
  /// 1 - 2^(-1 / (1+delta)^i)
  double block_probability(std::size_t i) const;
};

Bits approx_sample(const ApproxCodeParams& params, Stream& stream);
Bits approx_sample(const ApproxCodeParams& params, const RandomSource& rng, std::uint64_t key);

struct ApproxEstimate {
  /// Largest block with a strict majority of ones, -1 if none.
  int exponent = -1;
  bool zero = true;
  double value = 0.0;
};

/// Zero word: 0. No majority block: 1. Otherwise (1+delta)^(i* + 1/2).
ApproxEstimate approx_decode(const ApproxCodeParams& params, const Bits& word);

}  // namespace radiole
