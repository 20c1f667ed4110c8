#pragma once

// Test-only brute-force oracles. They work on plain DIMACS integer clauses
// and bit arithmetic, never on the library's matrices or evaluation code.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Clause = std::vector<int>;
using Cnf = std::vector<Clause>;

/// Bit i (x_{i+1}) of an evaluation stored MSB-first in an n-bit index.
inline int bit(std::uint32_t index, int var, int n) { return static_cast<int>((index >> (n - var)) & 1U); }

inline bool satisfies(const Cnf& f, std::uint32_t index, int n) {
  for (const auto& c : f) {
    bool any = false;
    for (int lit : c) any = any || (bit(index, lit < 0 ? -lit : lit, n) == 1) != (lit < 0);
    if (!any) return false;
  }
  return true;
}

inline std::vector<std::uint32_t> satisfying(const Cnf& f, int n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < (1U << n); ++i) {
    if (satisfies(f, i, n)) out.push_back(i);
  }
  return out;
}

/// Literal-mode residual at the natural conversion: 1 iff the leading k bits
/// of v differ from v restricted to the clause variables (clause order).
inline int literal_residual(const Clause& c, std::uint32_t v, int n) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int var = c[i] < 0 ? -c[i] : c[i];
    if (bit(v, var, n) != bit(v, static_cast<int>(i) + 1, n)) return 1;
  }
  return 0;
}

/// Diagonal entry j of the literal-mode projector built from v.
inline int literal_diag(const Clause& c, std::uint32_t v, std::uint32_t j, int n) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int var = c[i] < 0 ? -c[i] : c[i];
    if (bit(j, static_cast<int>(i) + 1, n) != bit(v, var, n)) return 1;
  }
  return 0;
}

/// Diagonal entry j of the aligned projector built from v.
inline int aligned_diag(const Clause& c, std::uint32_t v, std::uint32_t j, int n) {
  for (int lit : c) {
    const int var = lit < 0 ? -lit : lit;
    if (bit(j, var, n) != bit(v, var, n)) return 1;
  }
  return 0;
}

inline std::set<int> varset(const Clause& c) {
  std::set<int> s;
  for (int lit : c) s.insert(lit < 0 ? -lit : lit);
  return s;
}

/// Every set of m distinct width-k clauses over n variables, by generating
/// all ordered tuples and de-duplicating canonical forms.
inline std::set<std::set<std::set<int>>> all_formula_sets(int n, int k, int m) {
  std::vector<std::set<int>> clauses;
  const int lits = 2 * n;
  for (std::uint32_t mask = 0; mask < (1U << lits); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::set<int> c;
    std::set<int> vars;
    for (int b = 0; b < lits; ++b) {
      if (mask & (1U << b)) {
        const int var = b / 2 + 1;
        c.insert(b % 2 ? -var : var);
        vars.insert(var);
      }
    }
    if (static_cast<int>(vars.size()) == k) clauses.push_back(c);
  }
  std::set<std::set<std::set<int>>> out;
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    std::set<std::set<int>> f;
    for (auto i : idx) f.insert(clauses[i]);
    if (static_cast<int>(f.size()) == m) out.insert(f);
    int pos = m - 1;
    while (pos >= 0 && ++idx[pos] == clauses.size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

}  // namespace oracle
