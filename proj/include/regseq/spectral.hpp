#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <vector>

#include "regseq/matrix.hpp"

namespace regseq {

struct spectral_bracket {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> upper_history;  // Gelfand bound per squaring step
};

namespace detail {

struct dmat {
  int d = 0;
  std::vector<double> a;
  double& at(int i, int j) { return a[static_cast<size_t>(i) * d + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * d + j]; }
};

inline dmat to_dmat(const matrix& m) {
  dmat r;
  r.d = m.dim();
  r.a.reserve(m.entries().size());
  for (const auto& x : m.entries()) r.a.push_back(to_double(x));
  return r;
}

inline double dmat_row_sum_norm(const dmat& m) {
  double best = 0.0;
  for (int i = 0; i < m.d; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.d; ++j) s += std::abs(m.at(i, j));
    if (s > best) best = s;
  }
  return best;
}

inline dmat dmat_square(const dmat& m) {
  dmat r;
  r.d = m.d;
  r.a.assign(m.a.size(), 0.0);
  for (int i = 0; i < m.d; ++i)
    for (int l = 0; l < m.d; ++l) {
      const double mil = m.at(i, l);
      if (mil == 0.0) continue;
      for (int j = 0; j < m.d; ++j) r.at(i, j) += mil * m.at(l, j);
    }
  return r;
}

inline double dmat_trace_abs(const dmat& m) {
  double s = 0.0;
  for (int i = 0; i < m.d; ++i) s += m.at(i, i);
  return std::abs(s);
}

}  // namespace detail

// Two-sided estimate of the spectral radius by normalized repeated squaring.
// After j steps the scaled power B ~ a^(2^j) / exp(logscale) is held in unit
// norm, so only the log-scale accumulator grows. Upper is the Gelfand bound
// ||a^m||^(1/m); lower is (|trace(a^m)| / d)^(1/m), both over m = 2^j. The
// lower bound can stall when the dominant eigenvalues are a complex pair
// whose traces cancel.
inline spectral_bracket spectral_radius_bracket(const matrix& a, int iters = 40) {
  if (iters < 1) throw std::invalid_argument("iters must be >= 1");
  spectral_bracket out;
  detail::dmat b = detail::to_dmat(a);
  const int d = b.d;
  const double logd = std::log(static_cast<double>(d));

  double n0 = detail::dmat_row_sum_norm(b);
  if (n0 == 0.0) return out;  // zero matrix
  // m = 1 terms
  out.upper = n0;
  out.upper_history.push_back(n0);
  double tr = detail::dmat_trace_abs(b);
  if (tr > 0.0) out.lower = tr / d;

  double logscale = std::log(n0);
  for (auto& x : b.a) x /= n0;

  double m_log = 0.0;  // log2 of current power of b
  for (int j = 1; j <= iters; ++j) {
    detail::dmat sq = detail::dmat_square(b);
    const double nj = detail::dmat_row_sum_norm(sq);
    if (nj == 0.0) {  // nilpotent
      out.upper = 0.0;
      out.lower = 0.0;
      out.upper_history.push_back(0.0);
      return out;
    }
    m_log += 1.0;
    const double m = std::exp2(m_log);
    logscale = 2.0 * logscale + std::log(nj);
    const double up = std::exp(logscale / m);
    out.upper = up;
    out.upper_history.push_back(up);

    const double trj = detail::dmat_trace_abs(sq);
    if (trj > 0.0) {
      const double lo = std::exp((logscale - std::log(nj) + std::log(trj) - logd) / m);
      if (lo > out.lower) out.lower = lo;
    }
    for (auto& x : sq.a) x /= nj;
    b = std::move(sq);
  }
  if (out.lower > out.upper) out.lower = out.upper;
  return out;
}

struct dominant_pair {
  double lambda_abs = 0.0;
  std::vector<double> left;
  std::vector<double> right;
};

namespace detail {

inline std::optional<std::pair<double, std::vector<double>>> power_iterate(
    const dmat& m, double tol, int max_iters) {
  const int d = m.d;
  std::vector<double> x(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) x[static_cast<size_t>(i)] = 1.0 + 0.01 * i;

  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    std::vector<double> y(static_cast<size_t>(d), 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        y[static_cast<size_t>(i)] += m.at(i, j) * x[static_cast<size_t>(j)];
    double xx = 0.0, xy = 0.0;
    for (int i = 0; i < d; ++i) {
      xx += x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
      xy += x[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
    }
    if (xx == 0.0) return std::nullopt;
    lambda = xy / xx;  // Rayleigh-style estimate; valid sign for real lambda
    double res = 0.0, yn = 0.0;
    for (int i = 0; i < d; ++i) {
      const double r = y[static_cast<size_t>(i)] - lambda * x[static_cast<size_t>(i)];
      res += r * r;
      yn += y[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
    }
    const double xn = std::sqrt(xx);
    if (std::sqrt(res) <= tol * xn && it > 0) {
      double norm = xn == 0.0 ? 1.0 : xn;
      for (auto& v : x) v /= norm;
      return std::make_pair(lambda, x);
    }
    if (yn == 0.0) return std::nullopt;
    const double s = std::sqrt(yn);
    for (int i = 0; i < d; ++i) x[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] / s;
  }
  return std::nullopt;
}

}  // namespace detail

// Power iteration on a and its transpose. Converges only for a real simple
// dominant eigenvalue; complex or tied dominant pairs yield nullopt, which
// callers treat as a value, not an error.
inline std::optional<dominant_pair> dominant_pair_estimate(const matrix& a,
                                                           double tol = 1e-10,
                                                           int max_iters = 5000) {
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  detail::dmat m = detail::to_dmat(a);
  auto right = detail::power_iterate(m, tol, max_iters);
  if (!right) return std::nullopt;
  detail::dmat mt = detail::to_dmat(a.transpose());
  auto left = detail::power_iterate(mt, tol, max_iters);
  if (!left) return std::nullopt;
  dominant_pair out;
  out.lambda_abs = std::abs(right->first);
  out.right = std::move(right->second);
  out.left = std::move(left->second);
  return out;
}

}  // namespace regseq
