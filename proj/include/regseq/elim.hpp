#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "regseq/matrix.hpp"

namespace regseq {

// Incremental exact row space over Q with coefficient tracking: every
// reduced row remembers its expansion over the original vectors accepted so
// far, so dependent vectors come back with exact expansion coefficients.
class span_builder {
 public:
  explicit span_builder(std::size_t len) : len_(len) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t length() const { return len_; }

  // Expansion of x over the accepted originals, or nullopt if independent.
  std::optional<rvec> expand(const rvec& x) const {
    rvec rest = x;
    rvec coeffs(rank(), rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const rational& lead = rest[rows_[r].pivot];
      if (lead == 0) continue;
      const rational factor = lead / rows_[r].vec[rows_[r].pivot];
      axpy(rest, factor, rows_[r].vec);
      for (std::size_t j = 0; j < rank(); ++j)
        coeffs[j] += factor * rows_[r].combo[j];
    }
    for (const auto& e : rest)
      if (e != 0) return std::nullopt;
    return coeffs;
  }

  // True if x was independent (and is now part of the span).
  bool add(const rvec& x) {
    rvec rest = x;
    rvec coeffs(rank(), rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const rational& lead = rest[rows_[r].pivot];
      if (lead == 0) continue;
      const rational factor = lead / rows_[r].vec[rows_[r].pivot];
      axpy(rest, factor, rows_[r].vec);
      for (std::size_t j = 0; j < rank(); ++j)
        coeffs[j] += factor * rows_[r].combo[j];
    }
    std::size_t pivot = len_;
    for (std::size_t j = 0; j < len_; ++j)
      if (rest[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot == len_) return false;
    // rest = x - sum coeffs[j] * orig_j; record it as the next original.
    rvec combo(rank() + 1, rational(0));
    for (std::size_t j = 0; j < rank(); ++j) combo[j] = -coeffs[j];
    combo[rank()] = 1;
    for (auto& row : rows_) row.combo.push_back(0);
    rows_.push_back({std::move(rest), std::move(combo), pivot});
    return true;
  }

 private:
  struct row {
    rvec vec;    // reduced
    rvec combo;  // vec = sum combo[j] * original_j
    std::size_t pivot;
  };

  static void axpy(rvec& dst, const rational& factor, const rvec& src) {
    for (std::size_t j = 0; j < dst.size(); ++j)
      if (src[j] != 0) dst[j] -= factor * src[j];
  }

  std::size_t len_;
  std::vector<row> rows_;
};

inline std::size_t exact_rank(const std::vector<rvec>& vectors, std::size_t len) {
  span_builder b(len);
  for (const auto& v : vectors) b.add(v);
  return b.rank();
}

}  // namespace regseq
