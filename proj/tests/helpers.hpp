#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qsatlab/error.hpp"
#include "qsatlab/formula.hpp"

namespace testing {

inline oracle::Cnf to_oracle(const qsatlab::Formula& f) {
  oracle::Cnf out;
  for (const auto& c : f.clauses()) {
    oracle::Clause oc;
    for (const auto& l : c.literals) oc.push_back(static_cast<int>(l.to_dimacs()));
    out.push_back(oc);
  }
  return out;
}

/// m clauses of k distinct variables each, random signs and literal order.
inline qsatlab::Formula random_formula(std::mt19937& rng, std::size_t n, std::size_t k, std::size_t m) {
  std::vector<qsatlab::Clause> clauses;
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<std::size_t> vars(n);
    for (std::size_t i = 0; i < n; ++i) vars[i] = i + 1;
    std::shuffle(vars.begin(), vars.end(), rng);
    qsatlab::Clause clause;
    for (std::size_t i = 0; i < k; ++i) clause.literals.push_back(qsatlab::Literal{vars[i], (rng() & 1U) != 0});
    clauses.push_back(clause);
  }
  return qsatlab::Formula(n, k, clauses);
}

template <class Fn>
qsatlab::ErrorCode error_of(Fn&& fn) {
  try {
    fn();
  } catch (const qsatlab::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return qsatlab::ErrorCode::InvalidArgument;
}

}  // namespace testing
