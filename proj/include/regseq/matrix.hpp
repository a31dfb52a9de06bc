#pragma once

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "regseq/rational.hpp"

namespace regseq {

using rvec = std::vector<rational>;

// Dense square matrix of exact rationals, row-major.
class matrix {
 public:
  matrix() : dim_(0) {}
  explicit matrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {
    if (dim < 1) throw std::invalid_argument("matrix dim must be positive");
  }
  matrix(std::initializer_list<std::initializer_list<rational>> rows)
      : dim_(static_cast<int>(rows.size())) {
    a_.reserve(static_cast<size_t>(dim_) * dim_);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != dim_)
        throw std::invalid_argument("matrix rows must be square");
      for (const auto& x : row) a_.push_back(x);
    }
  }

  static matrix identity(int dim) {
    matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }
  static matrix diagonal(const rvec& d) {
    matrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<size_t>(i)];
    return m;
  }

  int dim() const { return dim_; }
  rational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
  const rational& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * dim_ + j];
  }
  const std::vector<rational>& entries() const { return a_; }

  bool operator==(const matrix& o) const { return dim_ == o.dim_ && a_ == o.a_; }
  bool operator<(const matrix& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_;
    return a_ < o.a_;
  }

  matrix transpose() const {
    matrix t(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  rational trace() const {
    rational s = 0;
    for (int i = 0; i < dim_; ++i) s += (*this)(i, i);
    return s;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

 private:
  int dim_;
  std::vector<rational> a_;
};

inline matrix mat_mul(const matrix& a, const matrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
  const int d = a.dim();
  matrix c(d);
  for (int i = 0; i < d; ++i)
    for (int l = 0; l < d; ++l) {
      const rational& ail = a(i, l);
      if (ail == 0) continue;
      for (int j = 0; j < d; ++j) c(i, j) += ail * b(l, j);
    }
  return c;
}

inline matrix operator*(const matrix& a, const matrix& b) { return mat_mul(a, b); }

inline matrix operator+(const matrix& a, const matrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
  matrix c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

inline matrix scalar_mul(const rational& s, const matrix& a) {
  matrix c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c(i, j) = s * a(i, j);
  return c;
}

// column = M * column
inline rvec mat_vec(const matrix& m, const rvec& x) {
  const int d = m.dim();
  rvec y(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    rational s = 0;
    for (int j = 0; j < d; ++j)
      if (m(i, j) != 0) s += m(i, j) * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = s;
  }
  return y;
}

// row = row * M
inline rvec vec_mat(const rvec& x, const matrix& m) {
  const int d = m.dim();
  rvec y(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    rational s = 0;
    for (int i = 0; i < d; ++i)
      if (m(i, j) != 0) s += x[static_cast<size_t>(i)] * m(i, j);
    y[static_cast<size_t>(j)] = s;
  }
  return y;
}

inline rational dot(const rvec& a, const rvec& b) {
  rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Submultiplicative matrix norms. ScaledRowSum is the operator norm induced
// by the weighted sup-norm |x| = max_i |x_i| / t_i with strictly positive
// weights t; RowSum is the t = (1,...,1) special case.
struct norm_kind {
  enum class family { frobenius, row_sum, col_sum, scaled_row_sum };
  family fam = family::row_sum;
  rvec weights;  // scaled_row_sum only

  static norm_kind frobenius() { return {family::frobenius, {}}; }
  static norm_kind row_sum() { return {family::row_sum, {}}; }
  static norm_kind col_sum() { return {family::col_sum, {}}; }
  static norm_kind scaled_row_sum(rvec w) {
    for (const auto& t : w)
      if (t <= 0) throw std::invalid_argument("scaled norm weights must be positive");
    return {family::scaled_row_sum, std::move(w)};
  }
};

namespace detail {

// Exact comparable value: the norm itself for the linear kinds, the squared
// norm for Frobenius (so every kind stays inside Q).
inline rational norm_comparable(const matrix& a, const norm_kind& kind) {
  const int d = a.dim();
  switch (kind.fam) {
    case norm_kind::family::frobenius: {
      rational s = 0;
      for (const auto& x : a.entries()) s += x * x;
      return s;
    }
    case norm_kind::family::row_sum: {
      rational best = 0;
      for (int i = 0; i < d; ++i) {
        rational s = 0;
        for (int j = 0; j < d; ++j) s += rat_abs(a(i, j));
        if (s > best) best = s;
      }
      return best;
    }
    case norm_kind::family::col_sum: {
      rational best = 0;
      for (int j = 0; j < d; ++j) {
        rational s = 0;
        for (int i = 0; i < d; ++i) s += rat_abs(a(i, j));
        if (s > best) best = s;
      }
      return best;
    }
    case norm_kind::family::scaled_row_sum: {
      if (static_cast<int>(kind.weights.size()) != d)
        throw std::invalid_argument("scaled norm weight count != dim");
      rational best = 0;
      for (int i = 0; i < d; ++i) {
        rational s = 0;
        for (int j = 0; j < d; ++j)
          s += rat_abs(a(i, j)) * kind.weights[static_cast<size_t>(j)];
        s /= kind.weights[static_cast<size_t>(i)];
        if (s > best) best = s;
      }
      return best;
    }
  }
  throw std::logic_error("unreachable");
}

inline bool norm_is_squared(const norm_kind& kind) {
  return kind.fam == norm_kind::family::frobenius;
}

}  // namespace detail

inline double mat_norm(const matrix& a, const norm_kind& kind) {
  const rational c = detail::norm_comparable(a, kind);
  const double v = to_double(c);
  return detail::norm_is_squared(kind) ? std::sqrt(v) : v;
}

}  // namespace regseq
