#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "regseq/digits.hpp"
#include "regseq/matrix.hpp"

namespace regseq {

enum class provenance { basis, spanning, unknown };

inline std::string provenance_name(provenance p) {
  switch (p) {
    case provenance::basis: return "basis";
    case provenance::spanning: return "spanning";
    case provenance::unknown: return "unknown";
  }
  return "unknown";
}

inline provenance provenance_from_name(const std::string& s) {
  if (s == "basis") return provenance::basis;
  if (s == "spanning") return provenance::spanning;
  if (s == "unknown") return provenance::unknown;
  throw std::invalid_argument("bad provenance: '" + s + "'");
}

// Linear representation of a k-regular sequence: f(n) is the row w applied
// to the digit product of n applied to the column v, where the digit word of
// n is consumed least-significant first on the w side.
struct linear_rep {
  int k = 2;
  int d = 1;
  std::vector<matrix> mats;  // A_0 .. A_{k-1}
  rvec v;                    // column
  rvec w;                    // row
  provenance prov = provenance::unknown;
  std::string name;

  void validate() const {
    check_radix(k);
    if (d < 1) throw std::invalid_argument("rep dimension must be positive");
    if (static_cast<int>(mats.size()) != k)
      throw std::invalid_argument("rep needs exactly k matrices");
    for (const auto& m : mats)
      if (m.dim() != d) throw std::invalid_argument("rep matrix dimension mismatch");
    if (static_cast<int>(v.size()) != d || static_cast<int>(w.size()) != d)
      throw std::invalid_argument("rep vector dimension mismatch");
  }
};

// Digit product applied to the column side: A_{z0} ... A_{zs} v for the
// least-significant-first word z.
inline rvec apply_word(const linear_rep& rep, const digit_word& word, rvec col) {
  for (auto it = word.d.rbegin(); it != word.d.rend(); ++it)
    col = mat_vec(rep.mats[*it], col);
  return col;
}

inline rational eval_word(const linear_rep& rep, const digit_word& word) {
  return dot(rep.w, apply_word(rep, word, rep.v));
}

inline rational eval(const linear_rep& rep, const integer& n) {
  return eval_word(rep, digits(n, rep.k));
}

inline rational eval(const linear_rep& rep, std::uint64_t n) {
  return eval(rep, integer(n));
}

// Evaluation with the expansion of n padded by extra most-significant zeros.
inline rational eval_padded(const linear_rep& rep, const integer& n, int pad) {
  digit_word w = digits(n, rep.k);
  w.d.insert(w.d.end(), static_cast<size_t>(pad), 0);
  return eval_word(rep, w);
}

// Basis-grade representations evaluate identically under most-significant
// zero padding; checked on sampled indices rather than trusted from the flag.
inline bool check_pad_invariance(const linear_rep& rep, int samples = 64,
                                 int max_pad = 4, std::uint64_t seed = 0) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, (1ull << 20) - 1);
  for (int s = 0; s < samples; ++s) {
    const integer n(dist(rng));
    const rational base = eval(rep, n);
    for (int pad = 1; pad <= max_pad; ++pad)
      if (eval_padded(rep, n, pad) != base) return false;
  }
  return true;
}

inline void require_basis(const linear_rep& rep, const char* what) {
  if (rep.prov != provenance::basis)
    throw std::invalid_argument(std::string(what) + " requires a basis representation");
  if (!check_pad_invariance(rep))
    throw std::invalid_argument(std::string(what) +
                                ": declared basis representation fails pad invariance");
}

// Representation of n -> f(k^ell * n + r): the shift digits sit at the
// least-significant end, so they fold into the row vector.
inline linear_rep kernel_subsequence(const linear_rep& rep, int ell, const integer& r) {
  if (ell < 0 || r < 0 || r >= int_pow(rep.k, static_cast<unsigned>(ell)))
    throw std::invalid_argument("kernel subsequence needs 0 <= r < k^ell");
  require_basis(rep, "kernel_subsequence");
  if (ell == 0) return rep;
  linear_rep out = rep;
  digit_word shift = padded_digits(r, ell, rep.k);
  rvec row = rep.w;
  for (auto d : shift.d) row = vec_mat(row, rep.mats[d]);
  out.w = std::move(row);
  out.prov = provenance::unknown;
  out.name.clear();
  return out;
}

// Calls fn(n, f(n)) for every n < limit, walking the digit tree depth-first
// so each index costs one matrix-vector product.
template <typename Fn>
void for_each_value(const linear_rep& rep, std::uint64_t limit, Fn&& fn) {
  if (limit == 0) return;
  fn(std::uint64_t{0}, dot(rep.w, rep.v));
  struct node {
    std::uint64_t n;
    rvec col;
  };
  std::vector<node> stack;
  for (int i = rep.k - 1; i >= 1; --i)
    if (static_cast<std::uint64_t>(i) < limit)
      stack.push_back({static_cast<std::uint64_t>(i), mat_vec(rep.mats[i], rep.v)});
  while (!stack.empty()) {
    node cur = std::move(stack.back());
    stack.pop_back();
    fn(cur.n, dot(rep.w, cur.col));
    if (cur.n > (limit - 1) / rep.k) continue;
    for (int i = rep.k - 1; i >= 0; --i) {
      const std::uint64_t child = cur.n * rep.k + static_cast<std::uint64_t>(i);
      if (child < limit) stack.push_back({child, mat_vec(rep.mats[i], cur.col)});
    }
  }
}

// First `count` terms as a vector.
inline std::vector<rational> eval_prefix(const linear_rep& rep, std::uint64_t count) {
  std::vector<rational> out(count);
  for_each_value(rep, count, [&](std::uint64_t n, rational val) { out[n] = std::move(val); });
  return out;
}

// Total term function on [0, horizon).
struct sequence_oracle {
  std::function<rational(std::uint64_t)> term;
  std::uint64_t horizon = 0;

  rational operator()(std::uint64_t n) const {
    if (n >= horizon) throw std::out_of_range("oracle index beyond horizon");
    return term(n);
  }
};

inline sequence_oracle oracle_from_terms(std::vector<rational> terms) {
  auto data = std::make_shared<std::vector<rational>>(std::move(terms));
  sequence_oracle o;
  o.horizon = data->size();
  o.term = [data](std::uint64_t n) { return (*data)[n]; };
  return o;
}

inline sequence_oracle oracle_from_rep(const linear_rep& rep, std::uint64_t horizon) {
  return oracle_from_terms(eval_prefix(rep, horizon));
}

}  // namespace regseq
