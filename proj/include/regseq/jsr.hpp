#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <string>
#include <vector>

#include "regseq/digits.hpp"
#include "regseq/linear_rep.hpp"
#include "regseq/spectral.hpp"

namespace regseq::jsr {

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct matrix_set {
  std::vector<matrix> mats;
  std::optional<int> radix_hint;

  void validate() const {
    if (mats.empty()) throw std::invalid_argument("matrix set must be non-empty");
    for (const auto& m : mats)
      if (m.dim() != mats.front().dim())
        throw std::invalid_argument("matrix set dimensions differ");
  }
  int dim() const { return mats.front().dim(); }
  int alphabet() const { return static_cast<int>(mats.size()); }
};

inline matrix_set set_from_rep(const linear_rep& rep) { return {rep.mats, rep.k}; }

struct jsr_limits {
  std::uint64_t max_products = 120000;  // pruned-tree node budget
  int max_depth = 256;                  // pruned-tree depth cap
  int lower_m_max = 12;                 // product length cap for the lower pass
  std::uint64_t level_budget = 200000;  // fallback level-enumeration budget
  int level_m_max = 32;
  std::uint64_t level_cap = 32768;      // stop the fallback once levels stay this wide
};

struct jsr_bracket {
  double lower = 0.0;
  double upper = 0.0;
  digit_word lower_witness;
  norm_kind kind;
  int depth = 0;  // length of the witness product
  std::uint64_t work = 0;
  bool truncated = false;
};

struct lower_bound_result {
  double bound = 0.0;
  digit_word lower_witness;
  std::uint64_t work = 0;
  bool truncated = false;
};

namespace detail {

// Lyndon words over {0..k-1} of length <= n, lexicographic (Duval). One word
// per aperiodic rotation class; rotations and powers of a product share its
// spectral radius, so these representatives cover every product radius.
template <typename Fn>
void for_each_lyndon_word(int k, int n, Fn&& fn) {
  std::vector<std::uint8_t> a = {0};
  while (true) {
    if (!fn(a)) return;
    std::vector<std::uint8_t> b;
    b.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) b.push_back(a[static_cast<size_t>(i) % a.size()]);
    while (!b.empty() && b.back() == k - 1) b.pop_back();
    if (b.empty()) return;
    ++b.back();
    a = std::move(b);
  }
}

inline matrix word_product(const matrix_set& set, const std::vector<std::uint8_t>& word) {
  matrix p = set.mats[word.front()];
  for (std::size_t i = 1; i < word.size(); ++i) p = p * set.mats[word[i]];
  return p;
}

}  // namespace detail

// Best product spectral radius root over all products of length <= m_max:
// each such value is a lower bound for the joint spectral radius.
inline lower_bound_result lower_bound(const matrix_set& set, int m_max,
                                      std::uint64_t max_products = 200000) {
  set.validate();
  if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
  lower_bound_result out;
  out.lower_witness.radix = std::max(2, set.alphabet());
  detail::for_each_lyndon_word(set.alphabet(), m_max, [&](const std::vector<std::uint8_t>& word) {
    if (out.work >= max_products) {
      out.truncated = true;
      return false;
    }
    ++out.work;
    const matrix p = detail::word_product(set, word);
    const double lo = spectral_radius_bracket(p).lower;
    if (lo <= 0.0) return true;
    const double cand = std::pow(lo, 1.0 / static_cast<double>(word.size()));
    const bool better =
        cand > out.bound ||
        (cand == out.bound && !out.lower_witness.d.empty() &&
         (word.size() < out.lower_witness.d.size() ||
          (word.size() == out.lower_witness.d.size() && word < out.lower_witness.d)));
    if (better) {
      out.bound = cand;
      out.lower_witness.d = word;
    }
    return true;
  });
  return out;
}

namespace detail {

struct matrix_hasher {
  static void combine(std::size_t& h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  std::size_t operator()(const matrix& m) const {
    std::size_t h = static_cast<std::size_t>(m.dim());
    for (const auto& x : m.entries()) {
      combine(h, hash_value(numerator(x)));
      combine(h, hash_value(denominator(x)));
    }
    return h;
  }
};

// Deduplicated product levels: calls fn(m, bound_m) with the level bound
// max ||P||^(1/m) for each completed level m <= m_cap. Stops early on budget
// exhaustion or when levels stay wider than level_cap (no collapse, so
// deeper enumeration cannot be afforded) and reports how many levels
// completed.
template <typename Fn>
int scan_levels(const matrix_set& set, const norm_kind& kind, int m_cap,
                std::uint64_t budget, std::uint64_t& work, Fn&& fn,
                std::uint64_t level_cap = std::numeric_limits<std::uint64_t>::max()) {
  std::unordered_set<matrix, matrix_hasher> level = {matrix::identity(set.dim())};
  const double root_scale = regseq::detail::norm_is_squared(kind) ? 2.0 : 1.0;
  int completed = 0;
  for (int m = 1; m <= m_cap; ++m) {
    std::unordered_set<matrix, matrix_hasher> next;
    for (const auto& p : level)
      for (const auto& a : set.mats) {
        if (work >= budget) return completed;
        ++work;
        next.insert(p * a);
      }
    level = std::move(next);
    rational level_max = 0;
    for (const auto& p : level) {
      const rational c = regseq::detail::norm_comparable(p, kind);
      if (c > level_max) level_max = c;
    }
    fn(m, std::pow(to_double(level_max), 1.0 / (root_scale * static_cast<double>(m))));
    completed = m;
    if (level.size() > level_cap) break;
  }
  return completed;
}

}  // namespace detail

// max over all products of length exactly m of ||P||^(1/m). Levels are
// deduplicated, which keeps collapsing families (shared or commuting
// products) affordable at large m.
inline double upper_bound(const matrix_set& set, int m, const norm_kind& kind,
                          std::uint64_t max_products = 2000000) {
  set.validate();
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  std::uint64_t work = 0;
  double value = std::numeric_limits<double>::infinity();
  const int completed = detail::scan_levels(set, kind, m, max_products, work,
                                            [&](int lvl, double bound) {
                                              if (lvl == m) value = bound;
                                            });
  if (completed < m) throw budget_error("upper_bound work budget exceeded");
  return value;
}

// Two-sided bracket: product-radius lower bound plus a norm tree pruned at
// theta = lower + tol. If every branch dies under theta the joint spectral
// radius is at most theta; surviving branches at the depth cap contribute
// their norm root instead. On budget exhaustion the pruned tree proves
// nothing and the bound falls back to deduplicated level enumeration.
inline jsr_bracket branch_and_bound(const matrix_set& set, double tol,
                                    const jsr_limits& limits = {},
                                    const norm_kind& kind = norm_kind::row_sum()) {
  set.validate();
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  jsr_bracket out;
  out.kind = kind;

  auto lower = lower_bound(set, std::min(limits.lower_m_max, limits.max_depth),
                           limits.max_products);
  out.lower = lower.bound;
  out.lower_witness = lower.lower_witness;
  out.depth = static_cast<int>(lower.lower_witness.d.size());
  out.work = lower.work;
  out.truncated = lower.truncated;

  double upper = 0.0;
  for (const auto& a : set.mats) upper = std::max(upper, mat_norm(a, kind));

  double theta = std::nextafter(out.lower + tol, std::numeric_limits<double>::infinity());
  if (theta <= 0.0) theta = tol;
  const rational theta_rat = rational_from_double(theta);
  const rational theta_base = regseq::detail::norm_is_squared(kind) ? rational(theta_rat * theta_rat) : theta_rat;
  std::vector<rational> theta_pow(static_cast<size_t>(limits.max_depth) + 1, rational(1));
  for (int i = 1; i <= limits.max_depth; ++i)
    theta_pow[static_cast<size_t>(i)] = theta_pow[static_cast<size_t>(i) - 1] * theta_base;

  // Level-synchronous walk: a completed level m in which every surviving
  // word has been collected bounds the radius by max(theta, U_m) with
  // U_m = max ||P||^(1/m) over the survivors; an empty level proves theta.
  const double root_scale = regseq::detail::norm_is_squared(kind) ? 2.0 : 1.0;
  std::vector<matrix> frontier = {matrix::identity(set.dim())};
  bool budget_out = false;
  bool fully_cut = false;
  double tree_upper = std::numeric_limits<double>::infinity();
  std::uint64_t nodes = 0;
  for (int m = 1; m <= limits.max_depth && !budget_out; ++m) {
    std::vector<matrix> next;
    rational level_max = 0;
    for (const auto& p : frontier) {
      for (const auto& a : set.mats) {
        if (nodes >= limits.max_products) {
          budget_out = true;
          break;
        }
        ++nodes;
        matrix q = p * a;
        const rational c = regseq::detail::norm_comparable(q, kind);
        if (c <= theta_pow[static_cast<size_t>(m)]) continue;
        if (c > level_max) level_max = c;
        next.push_back(std::move(q));
      }
      if (budget_out) break;
    }
    if (budget_out) break;
    if (next.empty()) {
      fully_cut = true;
      break;
    }
    const double u_m =
        std::pow(to_double(level_max), 1.0 / (root_scale * static_cast<double>(m)));
    tree_upper = std::min(tree_upper, std::max(theta, u_m));
    frontier = std::move(next);
  }
  out.work += nodes;

  if (fully_cut) {
    upper = std::min(upper, theta);
  } else {
    upper = std::min(upper, tree_upper);
    if (budget_out) {
      std::uint64_t level_work = 0;
      detail::scan_levels(
          set, kind, limits.level_m_max, limits.level_budget, level_work,
          [&](int, double bound) {
            if (bound < upper) upper = bound;
          },
          limits.level_cap);
      out.work += level_work;
    }
    out.truncated = true;
  }
  out.upper = std::max(upper, out.lower);
  out.truncated = out.truncated || (out.upper - out.lower > tol * (1.0 + 1e-9));
  return out;
}

struct scaled_norm_result {
  norm_kind kind;
  double upper;  // max one-letter norm under the refined weights
};

// Coordinate descent on positive diagonal weights minimizing the largest
// one-letter scaled row-sum norm. A surrogate for the extremal-norm
// existence statement; the achieved value is reported, the gap to the true
// radius is never hidden.
inline scaled_norm_result scaled_norm_refine(const matrix_set& set, int rounds = 60) {
  set.validate();
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  const int d = set.dim();
  rvec weights(static_cast<size_t>(d), rational(1));
  auto objective = [&](const rvec& w) {
    const norm_kind nk = norm_kind::scaled_row_sum(w);
    rational worst = 0;
    for (const auto& a : set.mats) {
      const rational c = regseq::detail::norm_comparable(a, nk);
      if (c > worst) worst = c;
    }
    return worst;
  };
  const rational lo_clamp = rational(1, int_pow(2, 40));
  const rational hi_clamp = rational(int_pow(2, 40));
  const std::array<rational, 6> steps = {rational(2),      rational(3, 2),
                                         rational(5, 4),   rational(9, 8),
                                         rational(17, 16), rational(33, 32)};
  rational best = objective(weights);
  for (int round = 0; round < rounds; ++round) {
    bool improved = false;
    for (int c = 0; c < d; ++c)
      for (const auto& step : steps)
        for (int dir = 0; dir < 2; ++dir) {
          rvec trial = weights;
          rational& t = trial[static_cast<size_t>(c)];
          if (dir == 0)
            t *= step;
          else
            t /= step;
          if (t < lo_clamp || t > hi_clamp) continue;
          const rational val = objective(trial);
          if (val < best) {
            best = val;
            weights = std::move(trial);
            improved = true;
          }
        }
    if (!improved) break;
  }
  return {norm_kind::scaled_row_sum(weights), to_double(best)};
}

struct capacity_result {
  double value;  // log2 of the bracket midpoint
  double bracket_width;
  jsr_bracket bracket;
};

inline capacity_result capacity(const matrix_set& set, double tol = 1e-3,
                                const jsr_limits& limits = {}) {
  auto bracket = branch_and_bound(set, tol, limits);
  const double mid = 0.5 * (bracket.lower + bracket.upper);
  return {std::log2(mid), bracket.upper - bracket.lower, std::move(bracket)};
}

struct compare_report {
  jsr_bracket basis_bracket;
  jsr_bracket spanning_bracket;
  bool consistent;        // basis.lower <= spanning.upper + tol
  bool certified_strict;  // basis.upper < spanning.lower
};

// Radius comparison of two representations of the same sequence. Only the
// one-sided inequality (basis at most spanning) is guaranteed; strictness is
// reported when the brackets separate.
inline compare_report compare_representations(const linear_rep& basis_rep,
                                              const linear_rep& spanning_rep,
                                              double tol = 1e-6,
                                              const jsr_limits& limits = {},
                                              std::uint64_t samples = 1024) {
  basis_rep.validate();
  spanning_rep.validate();
  const auto a = eval_prefix(basis_rep, samples);
  const auto b = eval_prefix(spanning_rep, samples);
  if (a != b)
    throw std::invalid_argument("representations disagree on the sampled range");
  compare_report out{branch_and_bound(set_from_rep(basis_rep), tol, limits),
                     branch_and_bound(set_from_rep(spanning_rep), tol, limits), false,
                     false};
  out.consistent = out.basis_bracket.lower <= out.spanning_bracket.upper + tol + 1e-9;
  out.certified_strict = out.basis_bracket.upper < out.spanning_bracket.lower;
  return out;
}

}  // namespace regseq::jsr
