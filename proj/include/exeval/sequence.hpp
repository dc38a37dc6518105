#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace exeval {

/// Input contained a character that is not '0', '1', or whitespace
/// (respectively a byte other than 0x00/0x01 for raw ingestion).
class SymbolError : public std::runtime_error {
 public:
  SymbolError(std::size_t index, std::string what)
      : std::runtime_error(std::move(what)), index_(index) {}
  /// Position of the offending character in the original input.
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Sequence shorter than the minimum horizon N = 2.
class LengthError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An ordered binary data sequence with horizon N >= 2, stored one byte per
/// observation. Immutable after construction.
class BinarySequence {
 public:
  explicit BinarySequence(std::vector<std::uint8_t> bits)
      : bits_(std::move(bits)) {
    if (bits_.size() < 2) {
      throw LengthError("sequence horizon must be at least 2, got " +
                        std::to_string(bits_.size()));
    }
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] > 1) {
        throw SymbolError(i, "observation at index " + std::to_string(i) +
                                 " is not a bit");
      }
    }
  }

  /// Parses a character string over {'0','1'}; ASCII whitespace is skipped.
  static BinarySequence parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '0' || c == '1') {
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
                 c == '\v' || c == '\f') {
        continue;
      } else {
        throw SymbolError(i, "invalid symbol at index " + std::to_string(i) +
                                 ": expected '0' or '1'");
      }
    }
    if (bits.size() < 2) {
      throw LengthError("sequence horizon must be at least 2, got " +
                        std::to_string(bits.size()));
    }
    return BinarySequence(std::move(bits));
  }

  /// Raw binary ingestion: one observation per byte, values 0x00 / 0x01.
  static BinarySequence from_bytes(std::span<const unsigned char> raw) {
    std::vector<std::uint8_t> bits;
    bits.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] > 1) {
        throw SymbolError(i, "invalid byte at offset " + std::to_string(i) +
                                 ": expected 0x00 or 0x01");
      }
      bits.push_back(raw[i]);
    }
    if (bits.size() < 2) {
      throw LengthError("sequence horizon must be at least 2, got " +
                        std::to_string(bits.size()));
    }
    return BinarySequence(std::move(bits));
  }

  /// Decodes bit i of `code` as observation z_{i+1}; used by the enumeration
  /// loops that sweep all of {0,1}^n.
  static BinarySequence from_code(int n, std::uint64_t code) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      bits[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>((code >> i) & 1u);
    }
    return BinarySequence(std::move(bits));
  }

  std::size_t size() const { return bits_.size(); }
  long long horizon() const { return static_cast<long long>(bits_.size()); }
  int operator[](std::size_t i) const { return bits_[i]; }

  auto begin() const { return bits_.begin(); }
  auto end() const { return bits_.end(); }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (std::uint8_t b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

/// Exchangeability summary: the numbers of 0s and 1s.
struct ExchType {
  long long n0 = 0;
  long long n1 = 0;

  long long horizon() const { return n0 + n1; }
  friend bool operator==(const ExchType&, const ExchType&) = default;
};

/// Markov summary: first and last bits plus the four contiguous-pair counts.
struct MarkovType {
  int first = 0;
  long long n00 = 0;
  long long n01 = 0;
  long long n10 = 0;
  long long n11 = 0;
  int last = 0;

  long long horizon() const { return n00 + n01 + n10 + n11 + 1; }

  // Transition-row totals; the number of darts leaving state 0 resp. 1.
  long long n0_star() const { return n00 + n01; }
  long long n1_star() const { return n10 + n11; }

  // Symbol counts: every 0 except a trailing one has an outgoing dart.
  long long n0() const { return n0_star() + (last == 0 ? 1 : 0); }
  long long n1() const { return n1_star() + (last == 1 ? 1 : 0); }

  /// Whether the sextuple can be realized by some binary sequence.
  bool is_valid() const {
    if ((first != 0 && first != 1) || (last != 0 && last != 1)) return false;
    if (n00 < 0 || n01 < 0 || n10 < 0 || n11 < 0) return false;
    if (horizon() < 2) return false;
    if (first == last) {
      if (n01 != n10) return false;
    } else if (first == 0) {
      if (n01 != n10 + 1) return false;
    } else {
      if (n10 != n01 + 1) return false;
    }
    if (n01 + n10 == 0) {
      // Never switches state: the sequence is constant.
      if (first != last) return false;
      if (first == 0 && n11 != 0) return false;
      if (first == 1 && n00 != 0) return false;
    }
    return true;
  }

  friend auto operator<=>(const MarkovType&, const MarkovType&) = default;
};

inline ExchType exch_type(const BinarySequence& z) {
  long long ones = 0;
  for (std::uint8_t b : z) ones += b;
  return ExchType{z.horizon() - ones, ones};
}

inline MarkovType markov_type(const BinarySequence& z) {
  MarkovType t;
  t.first = z[0];
  t.last = z[z.size() - 1];
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const int a = z[i], b = z[i + 1];
    if (a == 0) {
      b == 0 ? ++t.n00 : ++t.n01;
    } else {
      b == 0 ? ++t.n10 : ++t.n11;
    }
  }
  return t;
}

inline BinarySequence parse_sequence(std::string_view text) {
  return BinarySequence::parse(text);
}

}  // namespace exeval
