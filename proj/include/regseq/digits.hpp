#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "regseq/rational.hpp"

namespace regseq {

// Word over {0..k-1}, least-significant digit first. The empty word encodes
// zero; canonical expansions carry no most-significant zero.
struct digit_word {
  int radix = 2;
  std::vector<std::uint8_t> d;

  bool operator==(const digit_word&) const = default;
  std::size_t size() const { return d.size(); }
};

inline void check_radix(int k) {
  if (k < 2) throw std::invalid_argument("radix must be >= 2");
  if (k > 16) throw std::invalid_argument("radix above 16 is not supported");
}

inline digit_word digits(integer n, int k) {
  check_radix(k);
  if (n < 0) throw std::invalid_argument("negative index");
  digit_word w;
  w.radix = k;
  while (n > 0) {
    w.d.push_back(static_cast<std::uint8_t>(static_cast<unsigned>(n % k)));
    n /= k;
  }
  return w;
}

inline digit_word digits(std::uint64_t n, int k) { return digits(integer(n), k); }

inline integer word_value(const digit_word& w) {
  integer v = 0;
  for (auto it = w.d.rbegin(); it != w.d.rend(); ++it) {
    if (*it >= w.radix) throw std::invalid_argument("digit out of range");
    v = v * w.radix + *it;
  }
  return v;
}

inline char digit_char(std::uint8_t d) {
  return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10);
}

inline int char_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  throw std::invalid_argument("bad digit character");
}

// Digit string in product-application order (least-significant digit first).
inline std::string word_string(const digit_word& w) {
  std::string s;
  s.reserve(w.d.size());
  for (auto d : w.d) s.push_back(digit_char(d));
  return s;
}

inline digit_word word_from_string(const std::string& s, int k) {
  check_radix(k);
  digit_word w;
  w.radix = k;
  w.d.reserve(s.size());
  for (char c : s) {
    const int d = char_digit(c);
    if (d >= k) throw std::invalid_argument("digit out of range for radix");
    w.d.push_back(static_cast<std::uint8_t>(d));
  }
  return w;
}

inline digit_word concat(const digit_word& low, const digit_word& high) {
  if (low.radix != high.radix) throw std::invalid_argument("radix mismatch");
  digit_word w = low;
  w.d.insert(w.d.end(), high.d.begin(), high.d.end());
  return w;
}

inline digit_word repeat(const digit_word& w, int times) {
  digit_word out;
  out.radix = w.radix;
  out.d.reserve(w.d.size() * static_cast<size_t>(times));
  for (int i = 0; i < times; ++i) out.d.insert(out.d.end(), w.d.begin(), w.d.end());
  return out;
}

// Value q padded with most-significant zeros to exactly `len` digits.
inline digit_word padded_digits(const integer& q, int len, int k) {
  digit_word w = digits(q, k);
  if (static_cast<int>(w.d.size()) > len)
    throw std::invalid_argument("value does not fit in requested length");
  w.d.resize(static_cast<size_t>(len), 0);
  return w;
}

}  // namespace regseq
