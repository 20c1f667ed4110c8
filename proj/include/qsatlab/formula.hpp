#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace qsatlab {

/// Variables are 1-based indices into x1..xn.
struct Literal {
  std::size_t variable = 0;
  bool negated = false;

  /// DIMACS encoding: +v or -v.
  long to_dimacs() const { return negated ? -static_cast<long>(variable) : static_cast<long>(variable); }
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
  std::vector<Literal> literals;

  std::size_t width() const { return literals.size(); }
  /// Variables in order of first occurrence within the clause.
  std::vector<std::size_t> variables() const;
  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Total map x1..xn -> {0,1}; bit i-1 holds v(x_i).
class Evaluation {
 public:
  Evaluation() = default;
  explicit Evaluation(std::vector<std::uint8_t> bits);

  /// Parses a bitstring in x1..xn order, e.g. "101".
  static Evaluation from_bitstring(std::string_view bits);
  /// The evaluation whose bitstring, read with x1 most significant, equals `index`.
  static Evaluation from_index(std::uint64_t index, std::size_t n);

  std::size_t size() const { return bits_.size(); }
  /// Value of variable `var` (1-based).
  std::uint8_t operator()(std::size_t var) const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::string to_bitstring() const;
  std::uint64_t to_index() const;

  friend bool operator==(const Evaluation&, const Evaluation&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// A CNF formula of dimension (k, n): m clauses, each exactly k literals over
/// pairwise distinct variables drawn from x1..xn.
class Formula {
 public:
  Formula() = default;
  /// Validates widths, ranges and per-clause variable distinctness.
  Formula(std::size_t n, std::size_t k, std::vector<Clause> clauses);

  std::size_t num_variables() const { return n_; }
  std::size_t clause_width() const { return k_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  /// 1-based clause access.
  const Clause& clause(std::size_t index) const;

  /// Returns a copy with clause `index` (1-based) removed.
  Formula without_clause(std::size_t index) const;
  /// Returns a copy with clause `index` (1-based) replaced; width and
  /// variable checks are re-run.
  Formula with_clause(std::size_t index, Clause replacement) const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<Clause> clauses_;
};

struct Dimension {
  std::size_t k = 0;
  std::size_t n = 0;
  friend bool operator==(const Dimension&, const Dimension&) = default;
};

constexpr std::size_t kDefaultBruteForceLimit = 20;

Formula parse_dimacs(std::istream& in);
Formula parse_dimacs(std::string_view text);
std::string to_dimacs(const Formula& f);
/// Clause body only, space separated, e.g. "1 -2 0 -1 3 0".
std::string to_dimacs_body(const Formula& f);

Dimension dimension(const Formula& f);

bool evaluate(const Clause& c, const Evaluation& v);
bool evaluate(const Formula& f, const Evaluation& v);

/// Every satisfying evaluation, ascending in the binary value of v(x1)..v(xn).
std::vector<Evaluation> satisfying_evaluations(const Formula& f,
                                               std::size_t max_variables = kDefaultBruteForceLimit);

}  // namespace qsatlab
