#pragma once

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "regseq/linear_rep.hpp"

namespace regseq::io {

using json = nlohmann::json;

inline rational scalar_from_json(const json& j) {
  if (j.is_number_integer()) return rational(integer(j.get<long long>()));
  if (j.is_number_unsigned()) return rational(integer(j.get<unsigned long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("scalar entries must be integers or 'p/q' strings");
}

// Integers that fit in int64 stay JSON numbers; everything else becomes a
// lowest-terms "p/q" (or plain "p") string.
inline json scalar_to_json(const rational& r) {
  if (denominator(r) == 1) {
    const integer& n = numerator(r);
    static const integer lo = integer(std::numeric_limits<long long>::min());
    static const integer hi = integer(std::numeric_limits<long long>::max());
    if (n >= lo && n <= hi) return json(static_cast<long long>(n));
  }
  return json(format_rational(r));
}

inline matrix matrix_from_json(const json& j, int expect_dim = -1) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array");
  const int d = static_cast<int>(j.size());
  if (expect_dim >= 0 && d != expect_dim)
    throw std::invalid_argument("matrix dimension mismatch");
  matrix m(d);
  for (int i = 0; i < d; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw std::invalid_argument("matrix rows must be square");
    for (int c = 0; c < d; ++c) m(i, c) = scalar_from_json(row[static_cast<size_t>(c)]);
  }
  return m;
}

inline json matrix_to_json(const matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline rvec vector_from_json(const json& j, int expect_dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != expect_dim)
    throw std::invalid_argument("vector has wrong length");
  rvec v(static_cast<size_t>(expect_dim));
  for (int i = 0; i < expect_dim; ++i) v[static_cast<size_t>(i)] = scalar_from_json(j[static_cast<size_t>(i)]);
  return v;
}

inline json vector_to_json(const rvec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(scalar_to_json(x));
  return a;
}

inline linear_rep rep_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("rep file must hold a JSON object");
  linear_rep r;
  r.k = j.at("k").get<int>();
  check_radix(r.k);
  r.d = j.at("d").get<int>();
  if (r.d < 1) throw std::invalid_argument("d must be positive");
  const json& mats = j.at("matrices");
  if (!mats.is_array() || static_cast<int>(mats.size()) != r.k)
    throw std::invalid_argument("matrices array must hold exactly k matrices");
  for (const auto& mj : mats) r.mats.push_back(matrix_from_json(mj, r.d));
  r.v = vector_from_json(j.at("v"), r.d);
  r.w = vector_from_json(j.at("w"), r.d);
  if (j.contains("provenance")) r.prov = provenance_from_name(j.at("provenance").get<std::string>());
  if (j.contains("name")) r.name = j.at("name").get<std::string>();
  r.validate();
  return r;
}

inline json rep_to_json(const linear_rep& r) {
  json j;
  j["k"] = r.k;
  j["d"] = r.d;
  json mats = json::array();
  for (const auto& m : r.mats) mats.push_back(matrix_to_json(m));
  j["matrices"] = std::move(mats);
  j["v"] = vector_to_json(r.v);
  j["w"] = vector_to_json(r.w);
  j["provenance"] = provenance_name(r.prov);
  if (!r.name.empty()) j["name"] = r.name;
  return j;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  json j;
  in >> j;
  return j;
}

inline linear_rep load_rep(const std::string& path) {
  return rep_from_json(load_json_file(path));
}

inline void save_rep(const linear_rep& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << rep_to_json(r).dump(2) << "\n";
}

// Matrix-set input: either a rep object (its matrices are used) or a bare
// JSON array of matrices.
inline std::vector<matrix> matrices_from_json(const json& j) {
  if (j.is_object()) return rep_from_json(j).mats;
  if (j.is_array()) {
    std::vector<matrix> mats;
    int dim = -1;
    for (const auto& mj : j) {
      mats.push_back(matrix_from_json(mj, dim));
      dim = mats.back().dim();
    }
    if (mats.empty()) throw std::invalid_argument("matrix set must be non-empty");
    return mats;
  }
  throw std::invalid_argument("matrix set must be a rep object or an array of matrices");
}

// Newline-delimited terms, one integer or "p/q" per line, index implicit
// from zero. Blank lines and '#' comments are skipped.
inline std::vector<rational> load_terms(std::istream& in) {
  std::vector<rational> terms;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(first, last - first + 1);
    if (tok.empty() || tok[0] == '#') continue;
    terms.push_back(parse_rational(tok));
  }
  return terms;
}

inline std::vector<rational> load_terms_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return load_terms(in);
}

}  // namespace regseq::io
