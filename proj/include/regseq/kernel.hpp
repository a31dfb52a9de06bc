#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "regseq/elim.hpp"
#include "regseq/linear_rep.hpp"

namespace regseq::kernel {

struct horizon_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct rank_growing_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct zero_sequence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using kernel_index = std::pair<int, integer>;  // (ell, r), 0 <= r < k^ell

// Basis of the kernel span found by greedy exact elimination on truncated
// kernel sequences. members[0] is always (0,0), the sequence itself; the
// coeff table expands every explored one-step child over the members.
struct kernel_basis {
  int k = 2;
  int depth = 0;
  std::uint64_t trunc_len = 0;
  std::vector<kernel_index> members;
  std::map<kernel_index, rvec> coeff_table;

  int dim() const { return static_cast<int>(members.size()); }
  std::optional<int> member_slot(const kernel_index& idx) const {
    for (int s = 0; s < dim(); ++s)
      if (members[static_cast<size_t>(s)] == idx) return s;
    return std::nullopt;
  }
};

namespace detail {

// Truncated kernel sequence n -> f(k^ell n + r), n < len.
inline rvec kernel_vector(const sequence_oracle& oracle, int k, const kernel_index& idx,
                          std::uint64_t len) {
  const integer step = int_pow(k, static_cast<unsigned>(idx.first));
  rvec out(len);
  integer pos = idx.second;
  for (std::uint64_t n = 0; n < len; ++n, pos += step)
    out[n] = oracle(static_cast<std::uint64_t>(pos));
  return out;
}

inline std::uint64_t child_len(std::uint64_t horizon, int k, int ell,
                               std::uint64_t trunc_len) {
  const integer step = int_pow(k, static_cast<unsigned>(ell));
  if (step > integer(horizon)) return 0;
  const std::uint64_t fit = horizon / static_cast<std::uint64_t>(step);
  return fit < trunc_len ? fit : trunc_len;
}

}  // namespace detail

inline kernel_basis extract_basis(const sequence_oracle& oracle, int k, int max_depth,
                                  std::uint64_t trunc_len) {
  check_radix(k);
  if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  if (trunc_len < 4) throw std::invalid_argument("trunc_len too small");
  if (integer(oracle.horizon) < int_pow(k, static_cast<unsigned>(max_depth)) * trunc_len)
    throw horizon_error("oracle horizon below k^max_depth * trunc_len");

  kernel_basis basis;
  basis.k = k;
  basis.trunc_len = trunc_len;

  span_builder builder(trunc_len);
  std::vector<rvec> member_vectors;

  const rvec root = detail::kernel_vector(oracle, k, {0, 0}, trunc_len);
  if (!builder.add(root)) throw zero_sequence_error("sequence is zero on the truncation window");
  basis.members.push_back({0, 0});
  member_vectors.push_back(root);

  std::deque<kernel_index> queue = {{0, 0}};
  while (!queue.empty()) {
    const kernel_index parent = queue.front();
    queue.pop_front();
    const int child_ell = parent.first + 1;
    const integer shift = int_pow(k, static_cast<unsigned>(parent.first));
    for (int i = 0; i < k; ++i) {
      const kernel_index child{child_ell, parent.second + i * shift};
      const std::uint64_t len = detail::child_len(oracle.horizon, k, child_ell, trunc_len);
      if (len == trunc_len) {
        const rvec vec = detail::kernel_vector(oracle, k, child, trunc_len);
        if (auto coeffs = builder.expand(vec)) {
          coeffs->resize(basis.members.size(), rational(0));
          basis.coeff_table.emplace(child, std::move(*coeffs));
          continue;
        }
        if (child_ell > max_depth)
          throw rank_growing_error("kernel rank still growing at max_depth");
        builder.add(vec);
        basis.members.push_back(child);
        member_vectors.push_back(vec);
        if (child_ell > basis.depth) basis.depth = child_ell;
        queue.push_back(child);
      } else {
        // Horizon only covers a shorter window at this depth; decide the
        // expansion on the common prefix. Callers double the truncation
        // length to guard against understated rank.
        if (len < 2 * basis.members.size() + 8)
          throw horizon_error("oracle horizon too small for child expansions");
        span_builder short_builder(len);
        for (const auto& mv : member_vectors)
          short_builder.add(rvec(mv.begin(), mv.begin() + static_cast<long>(len)));
        const rvec vec = detail::kernel_vector(oracle, k, child, len);
        if (auto coeffs = short_builder.expand(vec)) {
          coeffs->resize(basis.members.size(), rational(0));
          basis.coeff_table.emplace(child, std::move(*coeffs));
          continue;
        }
        throw rank_growing_error("kernel rank still growing at max_depth");
      }
    }
  }
  return basis;
}

// Matrices associated to the basis: row s of A_i expands the child of member
// s under n -> kn+i over the members. v stacks the members' initial terms,
// w selects the first member (the sequence itself).
inline linear_rep matrices_from_basis(const kernel_basis& basis,
                                      const sequence_oracle& oracle) {
  const int d = basis.dim();
  const int k = basis.k;
  linear_rep rep;
  rep.k = k;
  rep.d = d;
  rep.mats.assign(static_cast<size_t>(k), matrix(d));
  for (int s = 0; s < d; ++s) {
    const kernel_index& member = basis.members[static_cast<size_t>(s)];
    const integer shift = int_pow(k, static_cast<unsigned>(member.first));
    for (int i = 0; i < k; ++i) {
      const kernel_index child{member.first + 1, member.second + i * shift};
      rvec coeffs;
      if (auto slot = basis.member_slot(child)) {
        coeffs.assign(static_cast<size_t>(d), rational(0));
        coeffs[static_cast<size_t>(*slot)] = 1;
      } else {
        auto it = basis.coeff_table.find(child);
        if (it == basis.coeff_table.end())
          throw std::invalid_argument("missing child coefficients in kernel basis");
        coeffs = it->second;
        coeffs.resize(static_cast<size_t>(d), rational(0));
      }
      for (int j = 0; j < d; ++j) rep.mats[static_cast<size_t>(i)](s, j) = coeffs[static_cast<size_t>(j)];
    }
  }
  rep.v.resize(static_cast<size_t>(d));
  rep.w.assign(static_cast<size_t>(d), rational(0));
  rep.w[0] = 1;
  for (int s = 0; s < d; ++s)
    rep.v[static_cast<size_t>(s)] =
        oracle(static_cast<std::uint64_t>(basis.members[static_cast<size_t>(s)].second));
  rep.prov = provenance::basis;
  rep.validate();

  // Defining relation A_i G(n) = G(kn+i) on the data that is in reach.
  std::uint64_t verify_len = basis.trunc_len;
  for (const auto& member : basis.members) {
    const std::uint64_t len =
        detail::child_len(oracle.horizon, k, member.first + 1, basis.trunc_len);
    if (len < verify_len) verify_len = len;
  }
  auto g_at = [&](std::uint64_t n) {
    rvec g(static_cast<size_t>(d));
    for (int s = 0; s < d; ++s) {
      const auto& member = basis.members[static_cast<size_t>(s)];
      const integer pos = int_pow(k, static_cast<unsigned>(member.first)) * n + member.second;
      g[static_cast<size_t>(s)] = oracle(static_cast<std::uint64_t>(pos));
    }
    return g;
  };
  for (std::uint64_t n = 0; n + 1 < verify_len / static_cast<std::uint64_t>(k); ++n) {
    const rvec gn = g_at(n);
    for (int i = 0; i < k; ++i)
      if (mat_vec(rep.mats[static_cast<size_t>(i)], gn) !=
          g_at(n * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(i)))
        throw std::invalid_argument("kernel basis coefficients are inconsistent");
  }
  return rep;
}

namespace detail {

struct closure_result {
  std::vector<rvec> vectors;           // independent, discovery order
  std::vector<digit_word> words;       // matching words
  bool complete = true;                // closure finished (always true here)
};

// Smallest invariant subspace containing the seed, grown breadth-first.
// step(x, i) applies generator i. Words track how each vector was reached.
template <typename Step>
closure_result invariant_closure(const rvec& seed, int alphabet, int dim, Step step) {
  closure_result out;
  span_builder builder(static_cast<size_t>(dim));
  digit_word empty;
  empty.radix = alphabet >= 2 ? alphabet : 2;
  if (!builder.add(seed)) return out;
  out.vectors.push_back(seed);
  out.words.push_back(empty);
  std::size_t next = 0;
  while (next < out.vectors.size()) {
    const rvec base = out.vectors[next];
    const digit_word base_word = out.words[next];
    ++next;
    for (int i = 0; i < alphabet; ++i) {
      rvec y = step(base, i);
      if (!builder.add(y)) continue;
      digit_word w = base_word;
      w.d.push_back(static_cast<std::uint8_t>(i));
      out.vectors.push_back(std::move(y));
      out.words.push_back(std::move(w));
    }
  }
  return out;
}

inline linear_rep zero_rep(int k) {
  linear_rep rep;
  rep.k = k;
  rep.d = 1;
  rep.mats.assign(static_cast<size_t>(k), matrix(1));
  rep.v = {0};
  rep.w = {1};
  rep.prov = provenance::unknown;
  return rep;
}

}  // namespace detail

// Forward-reachability then backward-observability restriction; classical
// two-sided reduction of a linear representation. The result evaluates
// identically on every index and has minimal dimension.
inline linear_rep minimize(const linear_rep& rep) {
  rep.validate();

  // Reachable side: span of all digit products applied to v.
  auto fwd = detail::invariant_closure(
      rep.v, rep.k, rep.d,
      [&](const rvec& x, int i) { return mat_vec(rep.mats[static_cast<size_t>(i)], x); });
  if (fwd.vectors.empty()) return detail::zero_rep(rep.k);
  const int r = static_cast<int>(fwd.vectors.size());

  span_builder fwd_span(static_cast<size_t>(rep.d));
  for (const auto& u : fwd.vectors) fwd_span.add(u);
  std::vector<matrix> mid_mats(static_cast<size_t>(rep.k), matrix(r));
  for (int i = 0; i < rep.k; ++i)
    for (int j = 0; j < r; ++j) {
      auto coeffs = fwd_span.expand(mat_vec(rep.mats[static_cast<size_t>(i)], fwd.vectors[static_cast<size_t>(j)]));
      if (!coeffs) throw std::logic_error("reachable space not invariant");
      for (int s = 0; s < r; ++s) mid_mats[static_cast<size_t>(i)](s, j) = (*coeffs)[static_cast<size_t>(s)];
    }
  rvec mid_v(static_cast<size_t>(r), rational(0));
  mid_v[0] = 1;  // v is the first closure vector
  rvec mid_w(static_cast<size_t>(r));
  for (int s = 0; s < r; ++s) mid_w[static_cast<size_t>(s)] = dot(rep.w, fwd.vectors[static_cast<size_t>(s)]);

  // Observable side on the reduced data: span of w under right products.
  auto bwd = detail::invariant_closure(
      mid_w, rep.k, r,
      [&](const rvec& x, int i) { return vec_mat(x, mid_mats[static_cast<size_t>(i)]); });
  if (bwd.vectors.empty()) return detail::zero_rep(rep.k);
  const int m = static_cast<int>(bwd.vectors.size());

  span_builder bwd_span(static_cast<size_t>(r));
  for (const auto& t : bwd.vectors) bwd_span.add(t);
  linear_rep out;
  out.k = rep.k;
  out.d = m;
  out.mats.assign(static_cast<size_t>(rep.k), matrix(m));
  for (int i = 0; i < rep.k; ++i)
    for (int j = 0; j < m; ++j) {
      auto coeffs = bwd_span.expand(vec_mat(bwd.vectors[static_cast<size_t>(j)], mid_mats[static_cast<size_t>(i)]));
      if (!coeffs) throw std::logic_error("observable space not invariant");
      for (int s = 0; s < m; ++s) out.mats[static_cast<size_t>(i)](j, s) = (*coeffs)[static_cast<size_t>(s)];
    }
  out.w.assign(static_cast<size_t>(m), rational(0));
  out.w[0] = 1;  // w is the first closure vector
  out.v.resize(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) out.v[static_cast<size_t>(j)] = dot(bwd.vectors[static_cast<size_t>(j)], mid_v);
  out.name = rep.name;
  out.validate();
  out.prov = check_pad_invariance(out) ? provenance::basis : provenance::unknown;
  return out;
}

struct guess_limits {
  int max_depth = 4;
  std::uint64_t trunc_len = 0;  // 0: derived from the horizon
};

struct guess_report {
  bool found = false;
  std::optional<linear_rep> rep;
  std::vector<int> rank_history;  // rank after each explored depth
  bool stability = false;
  bool eventually_zero = false;
  std::string note;
};

namespace detail {

inline std::vector<int> ranks_from_members(const kernel_basis& basis, int max_depth) {
  std::vector<int> hist;
  for (int ell = 0; ell <= max_depth; ++ell) {
    int rank = 0;
    for (const auto& member : basis.members)
      if (member.first <= ell) ++rank;
    hist.push_back(rank);
  }
  return hist;
}

// Diagnostic rank-per-depth scan over all kernel sequences, tolerant of
// non-regular input (no errors, just the observed ranks).
inline std::vector<int> ranks_by_depth(const sequence_oracle& oracle, int k, int depth_cap,
                                       std::uint64_t trunc) {
  std::vector<int> hist;
  const std::uint64_t len = child_len(oracle.horizon, k, depth_cap, trunc);
  if (len < 8) return hist;
  span_builder builder(len);
  for (int ell = 0; ell <= depth_cap; ++ell) {
    const integer count = int_pow(k, static_cast<unsigned>(ell));
    if (count > 4096) break;
    for (integer r = 0; r < count; ++r)
      builder.add(kernel_vector(oracle, k, {ell, r}, len));
    hist.push_back(static_cast<int>(builder.rank()));
  }
  return hist;
}

}  // namespace detail

// Wraps extract_basis + matrices_from_basis with a truncation-doubling
// stability guard; found only when the emitted representation reproduces
// every supplied term exactly.
inline guess_report guess_regular(const sequence_oracle& oracle, int k,
                                  const guess_limits& limits = {}) {
  check_radix(k);
  guess_report report;

  bool all_zero = true;
  for (std::uint64_t n = 0; n < oracle.horizon && all_zero; ++n)
    if (oracle(n) != 0) all_zero = false;
  if (all_zero) {
    report.found = true;
    report.stability = true;
    report.eventually_zero = true;
    report.rep = detail::zero_rep(k);
    report.rank_history = {1};
    report.note = "eventually zero: emitted the one-dimensional zero representation";
    return report;
  }

  int depth = limits.max_depth;
  std::uint64_t trunc = limits.trunc_len;
  if (trunc == 0) {
    while (depth > 0) {
      const integer need = integer(2) * int_pow(k, static_cast<unsigned>(depth) + 1) * 16;
      if (need <= integer(oracle.horizon)) break;
      --depth;
    }
    trunc = oracle.horizon / (2 * static_cast<std::uint64_t>(int_pow(k, static_cast<unsigned>(depth) + 1)));
    if (trunc < 16) {
      report.note = "horizon too small to guess";
      return report;
    }
  }

  kernel_basis first, doubled;
  try {
    first = extract_basis(oracle, k, depth, trunc);
    doubled = extract_basis(oracle, k, depth, 2 * trunc);
  } catch (const rank_growing_error& e) {
    report.note = e.what();
    report.rank_history = detail::ranks_by_depth(oracle, k, depth + 1, trunc);
    return report;
  } catch (const std::exception& e) {
    report.note = e.what();
    return report;
  }

  report.rank_history = detail::ranks_from_members(doubled, depth);
  report.stability = first.members == doubled.members;
  if (!report.stability) {
    report.note = "rank changed under truncation doubling";
    return report;
  }

  linear_rep rep = matrices_from_basis(doubled, oracle);
  const auto produced = eval_prefix(rep, oracle.horizon);
  for (std::uint64_t n = 0; n < oracle.horizon; ++n)
    if (produced[n] != oracle(n)) {
      report.note = "reconstructed representation disagrees with the supplied terms";
      return report;
    }
  report.found = true;
  report.rep = std::move(rep);
  return report;
}

}  // namespace regseq::kernel
