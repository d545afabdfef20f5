#include "radiole/codes.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "radiole/graph.hpp"

namespace radiole {

Bits random_bits(Stream& stream, std::size_t size, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("random_bits: probability out of range");
  Bits b(size);
  if (size == 0 || p == 0.0) return b;
  auto& words = b.words();
  if (p >= 1.0) {
    for (auto& w : words) w = ~std::uint64_t{0};
  } else {
    constexpr unsigned kDigits = 20;
    const auto scaled = static_cast<std::uint64_t>(std::ldexp(p, kDigits));
    unsigned digits = kDigits;
    while (digits > 0 && ((scaled >> (kDigits - digits)) & 1U) == 0) --digits;
    for (auto& w : words) {
      std::uint64_t mask = 0;
      for (unsigned j = digits; j >= 1; --j) {
        const bool bit = (scaled >> (kDigits - j)) & 1U;
        const std::uint64_t r = stream();
        mask = bit ? (r | mask) : (r & mask);
      }
      w = mask;
    }
  }
  if (size % 64 != 0) words.back() &= (std::uint64_t{1} << (size % 64)) - 1;
  return b;
}

Bits superimpose(std::span<const Bits> words, std::size_t length) {
  Bits out(length);
  for (const Bits& w : words) out |= w;
  return out;
}

Bits superimpose(std::span<const Bits> words) {
  if (words.empty()) throw std::invalid_argument("superimpose: empty list needs an explicit length");
  return superimpose(words, words.front().size());
}

std::size_t si_length(std::uint64_t N, unsigned k) {
  const std::size_t kk = std::size_t{k} + 1;
  return 4 * kk * kk * ceil_log2(N);
}

Bits si_codeword(const RandomSource& rng, std::uint64_t code_key, unsigned k, std::size_t length, std::uint64_t id) {
  Stream s = rng.stream(purpose::kCodeGeneration, code_key, id);
  return random_bits(s, length, 1.0 / (k + 1.0));
}

namespace {

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::uint64_t h = b.size();
    for (auto w : b.words()) h = mix64(h ^ w);
    return static_cast<std::size_t>(h);
  }
};

template <typename F>
void for_each_subset(std::size_t n, std::size_t size, F&& f) {
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  if (size > n) return;
  while (true) {
    f(std::span<const std::size_t>(idx));
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == n - size + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool si_verify(const SICode& code, unsigned max_size) {
  std::unordered_set<Bits, BitsHash> small;
  bool ok = true;
  for (unsigned s = 0; s <= code.k && ok; ++s) {
    for_each_subset(code.words.size(), s, [&](std::span<const std::size_t> idx) {
      if (!ok) return;
      Bits w(code.length);
      for (auto i : idx) w |= code.words[i];
      if (!small.insert(std::move(w)).second) ok = false;
    });
  }
  for (unsigned s = code.k + 1; s <= max_size && ok; ++s) {
    for_each_subset(code.words.size(), s, [&](std::span<const std::size_t> idx) {
      if (!ok) return;
      Bits w(code.length);
      for (auto i : idx) w |= code.words[i];
      if (small.contains(w)) ok = false;
    });
  }
  return ok;
}

SICode si_generate(std::uint64_t N, unsigned k, const RandomSource& rng) {
  if (N < 2) throw std::invalid_argument("si_generate: N must be at least 2");
  if (k < 1) throw std::invalid_argument("si_generate: k must be at least 1");
  if (k >= N) throw std::invalid_argument("si_generate: k must be smaller than N");
  SICode code;
  code.N = N;
  code.k = k;
  code.length = si_length(N, k);
  const bool check = N <= 64 && k <= 2;
  for (unsigned attempt = 0;; ++attempt) {
    code.words.clear();
    code.words.reserve(N);
    for (std::uint64_t i = 0; i < N; ++i) code.words.push_back(si_codeword(rng, attempt, k, code.length, i));
    code.attempts = attempt + 1;
    if (!check) break;
    if (si_verify(code, k + 2)) {
      code.verified = true;
      break;
    }
    if (attempt >= 64) throw std::runtime_error("si_generate: no valid code after 64 attempts");
  }
  return code;
}

DecodeResult si_decode_among(const Bits& word, unsigned k, std::span<const std::uint64_t> ids,
                             std::span<const Bits> codewords) {
  DecodeResult r;
  Bits cover(word.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (codewords[i].size() != word.size()) throw std::invalid_argument("si_decode: length mismatch");
    if (codewords[i].subset_of(word)) {
      r.ids.push_back(ids[i]);
      cover |= codewords[i];
    }
  }
  if (r.ids.size() > k || !(cover == word)) {
    r.more_than_k = true;
    r.ids.clear();
  }
  return r;
}

DecodeResult si_decode(const SICode& code, const Bits& word) {
  if (word.size() != code.length) throw std::invalid_argument("si_decode: length mismatch");
  std::vector<std::uint64_t> ids(code.words.size());
  for (std::uint64_t i = 0; i < ids.size(); ++i) ids[i] = i;
  return si_decode_among(word, code.k, ids, code.words);
}

void write_code(std::ostream& out, const SICode& code) {
  out << code.N << ' ' << code.k << ' ' << code.length << '\n';
  for (const Bits& w : code.words) out << w.to_hex() << '\n';
}

SICode read_code(std::istream& in) {
  SICode code;
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("read_code: missing header");
  std::istringstream hs(header);
  if (!(hs >> code.N >> code.k >> code.length)) throw std::invalid_argument("read_code: malformed header");
  std::string line;
  while (code.words.size() < code.N && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    code.words.push_back(Bits::from_hex(line, code.length));
  }
  if (code.words.size() != code.N) throw std::invalid_argument("read_code: expected " + std::to_string(code.N) + " rows");
  return code;
}

ApproxCodeParams ApproxCodeParams::make(std::uint64_t N, std::uint64_t k, double delta, double c_b) {
  if (N < 2) throw std::invalid_argument("approx code: N must be at least 2");
  if (k < 1) throw std::invalid_argument("approx code: k must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("approx code: delta must be positive");
  if (!(c_b > 0.0)) throw std::invalid_argument("approx code: c_b must be positive");
  ApproxCodeParams p;
  p.N = N;
  p.k = k;
  p.delta = delta;
  p.c_b = c_b;
  const double blocks = std::log(static_cast<double>(k)) / std::log1p(delta);
  p.block_count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(blocks - 1e-9)));
  const double len = c_b * std::log2(static_cast<double>(N)) / (delta * delta);
  p.block_len = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len - 1e-9)));
  return p;
}

double ApproxCodeParams::block_probability(std::size_t i) const {
  return 1.0 - std::exp2(-1.0 / std::pow(1.0 + delta, static_cast<double>(i)));
}

Bits approx_sample(const ApproxCodeParams& params, Stream& stream) {
  Bits out(params.length());
  auto& dst = out.words();
  for (std::size_t b = 0; b < params.block_count; ++b) {
    const Bits block = random_bits(stream, params.block_len, params.block_probability(b));
    const std::size_t base = b * params.block_len;
    const std::size_t shift = base % 64;
    const std::size_t first = base / 64;
    const auto& src = block.words();
    for (std::size_t w = 0; w < src.size(); ++w) {
      dst[first + w] |= src[w] << shift;
      if (shift != 0 && first + w + 1 < dst.size()) dst[first + w + 1] |= src[w] >> (64 - shift);
    }
  }
  return out;
}

Bits approx_sample(const ApproxCodeParams& params, const RandomSource& rng, std::uint64_t key) {
  Stream s = rng.stream(purpose::kCodeSample, key);
  return approx_sample(params, s);
}

ApproxEstimate approx_decode(const ApproxCodeParams& params, const Bits& word) {
  if (word.size() != params.length()) throw std::invalid_argument("approx_decode: length mismatch");
  ApproxEstimate e;
  e.zero = word.none();
  if (e.zero) return e;
  for (std::size_t b = params.block_count; b-- > 0;) {
    const std::size_t ones = word.count_range(b * params.block_len, params.block_len);
    if (2 * ones > params.block_len) {
      e.exponent = static_cast<int>(b);
      break;
    }
  }
  e.value = e.exponent < 0 ? 1.0 : std::pow(1.0 + params.delta, e.exponent + 0.5);
  return e;
}

}  // namespace radiole
