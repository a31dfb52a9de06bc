#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "regseq/linear_rep.hpp"

namespace regseq {

struct catalog_entry {
  std::string name;
  int k;
  int d;
  provenance prov;
  bool takes_parameter;
  std::string description;
};

inline const std::vector<catalog_entry>& catalog_entries() {
  static const std::vector<catalog_entry> entries = {
      {"stern", 2, 2, provenance::basis, false,
       "Stern diatomic sequence s(2n)=s(n), s(2n+1)=s(n)+s(n+1)"},
      {"sum_of_digits_2", 2, 2, provenance::basis, false,
       "number of ones in the binary expansion"},
      {"identity_n", 2, 2, provenance::basis, false, "f(n) = n"},
      {"const_one_2x2", 2, 2, provenance::basis, false,
       "constant 1 via a pair of 2x2 identities"},
      {"paper_spanning_3x3", 2, 3, provenance::spanning, true,
       "constant 1 padded with a spurious diag(x) block (parameter x > 1)"},
  };
  return entries;
}

// Spanning representation of the constant-one sequence whose unreachable
// diag(x) block inflates the joint spectral radius to x.
inline linear_rep catalog_paper_spanning(const rational& x) {
  linear_rep r;
  r.k = 2;
  r.d = 3;
  matrix b{{1, 0, 0}, {0, 1, 0}, {0, 0, x}};
  r.mats = {b, b};
  r.w = {1, 0, 0};
  r.v = {1, 1, 0};
  r.prov = provenance::spanning;
  r.name = "paper_spanning_3x3";
  r.validate();
  return r;
}

inline linear_rep catalog(const std::string& name, const rational& param = 2) {
  linear_rep r;
  if (name == "stern") {
    r.k = 2;
    r.d = 2;
    r.mats = {matrix{{1, 0}, {1, 1}}, matrix{{1, 1}, {0, 1}}};
    r.v = {0, 1};
    r.w = {1, 0};
    r.prov = provenance::basis;
  } else if (name == "sum_of_digits_2") {
    r.k = 2;
    r.d = 2;
    r.mats = {matrix::identity(2), matrix{{1, 1}, {0, 1}}};
    r.v = {0, 1};
    r.w = {1, 0};
    r.prov = provenance::basis;
  } else if (name == "identity_n") {
    r.k = 2;
    r.d = 2;
    r.mats = {matrix{{2, 0}, {0, 1}}, matrix{{2, 1}, {0, 1}}};
    r.v = {0, 1};
    r.w = {1, 0};
    r.prov = provenance::basis;
  } else if (name == "const_one_2x2") {
    r.k = 2;
    r.d = 2;
    r.mats = {matrix::identity(2), matrix::identity(2)};
    r.v = {1, 1};
    r.w = {1, 0};
    r.prov = provenance::basis;
  } else if (name == "paper_spanning_3x3") {
    return catalog_paper_spanning(param);
  } else {
    throw std::invalid_argument("unknown catalog name: '" + name + "'");
  }
  r.name = name;
  r.validate();
  return r;
}

}  // namespace regseq
