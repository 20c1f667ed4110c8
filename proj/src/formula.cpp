#include "qsatlab/formula.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "qsatlab/error.hpp"

namespace qsatlab {

std::vector<std::size_t> Clause::variables() const {
  std::vector<std::size_t> vars;
  vars.reserve(literals.size());
  for (const auto& lit : literals) {
    if (std::find(vars.begin(), vars.end(), lit.variable) == vars.end()) vars.push_back(lit.variable);
  }
  return vars;
}

Evaluation::Evaluation(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw Error(ErrorCode::InvalidArgument, "evaluation bits must be 0 or 1");
  }
}

Evaluation Evaluation::from_bitstring(std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::InvalidArgument, "evaluation bitstring may contain only 0 and 1: '" +
                                                  std::string(bits) + "'");
    }
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Evaluation(std::move(out));
}

Evaluation Evaluation::from_index(std::uint64_t index, std::size_t n) {
  if (n > 63) throw Error(ErrorCode::TooManyVariables, "evaluation index limited to 63 variables");
  std::vector<std::uint8_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>((index >> (n - 1 - i)) & 1U);
  return Evaluation(std::move(out));
}

std::uint8_t Evaluation::operator()(std::size_t var) const {
  if (var == 0 || var > bits_.size()) {
    throw Error(ErrorCode::PartialEvaluation,
                "evaluation of size " + std::to_string(bits_.size()) + " has no value for x" + std::to_string(var));
  }
  return bits_[var - 1];
}

std::string Evaluation::to_bitstring() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

std::uint64_t Evaluation::to_index() const {
  if (bits_.size() > 63) throw Error(ErrorCode::TooManyVariables, "evaluation index limited to 63 variables");
  std::uint64_t idx = 0;
  for (auto b : bits_) idx = (idx << 1) | b;
  return idx;
}

Formula::Formula(std::size_t n, std::size_t k, std::vector<Clause> clauses)
    : n_(n), k_(k), clauses_(std::move(clauses)) {
  if (!clauses_.empty() && k_ == 0) throw Error(ErrorCode::SyntaxError, "clause width must be positive");
  for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
    const auto& lits = clauses_[ci].literals;
    const auto where = " in clause " + std::to_string(ci + 1);
    if (lits.size() != k_) {
      throw Error(ErrorCode::MixedWidth,
                  "width " + std::to_string(lits.size()) + " != k=" + std::to_string(k_) + where);
    }
    for (std::size_t a = 0; a < lits.size(); ++a) {
      if (lits[a].variable == 0 || lits[a].variable > n_) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "variable " + std::to_string(lits[a].variable) + " outside 1.." + std::to_string(n_) + where);
      }
      for (std::size_t b = 0; b < a; ++b) {
        if (lits[a].variable == lits[b].variable) {
          throw Error(ErrorCode::DuplicateVariable, "x" + std::to_string(lits[a].variable) + " repeated" + where);
        }
      }
    }
  }
}

const Clause& Formula::clause(std::size_t index) const {
  if (index == 0 || index > clauses_.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "clause " + std::to_string(index) + " outside 1.." + std::to_string(clauses_.size()));
  }
  return clauses_[index - 1];
}

Formula Formula::without_clause(std::size_t index) const {
  clause(index);
  auto copy = clauses_;
  copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(index - 1));
  return Formula(n_, k_, std::move(copy));
}

Formula Formula::with_clause(std::size_t index, Clause replacement) const {
  clause(index);
  auto copy = clauses_;
  copy[index - 1] = std::move(replacement);
  return Formula(n_, k_, std::move(copy));
}

namespace {

long parse_int(std::string_view tok, std::size_t line) {
  long value = 0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || first == tok.data() + tok.size()) {
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": expected integer, got '" +
                                            std::string(tok) + "'");
  }
  return value;
}

}  // namespace

Formula parse_dimacs(std::istream& in) {
  bool have_header = false;
  std::size_t n = 0;
  std::size_t declared_m = 0;
  std::vector<Clause> clauses;
  Clause current;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    const char lead = line[start];
    if (lead == 'c') continue;
    if (lead == '%') break;  // SATLIB trailer
    std::istringstream toks(line.substr(start));
    if (lead == 'p') {
      if (have_header) throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": duplicate header");
      if (!clauses.empty() || !current.literals.empty()) {
        throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": header after clauses");
      }
      std::string p, fmt, ns, ms, extra;
      toks >> p >> fmt >> ns >> ms;
      if (p != "p" || fmt != "cnf" || ms.empty() || (toks >> extra)) {
        throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": malformed header '" + line + "'");
      }
      const long nv = parse_int(ns, lineno);
      const long mv = parse_int(ms, lineno);
      if (nv < 0 || mv < 0) throw Error(ErrorCode::SyntaxError, "negative header count");
      n = static_cast<std::size_t>(nv);
      declared_m = static_cast<std::size_t>(mv);
      have_header = true;
      continue;
    }
    if (!have_header) throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": clause before header");
    std::string tok;
    while (toks >> tok) {
      const long lit = parse_int(tok, lineno);
      if (lit == 0) {
        if (current.literals.empty()) {
          throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": empty clause");
        }
        clauses.push_back(std::move(current));
        current = Clause{};
        continue;
      }
      const auto var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
      current.literals.push_back(Literal{var, lit < 0});
    }
  }
  if (!have_header) throw Error(ErrorCode::SyntaxError, "missing 'p cnf' header");
  if (!current.literals.empty()) throw Error(ErrorCode::SyntaxError, "last clause not terminated by 0");
  if (clauses.size() != declared_m) {
    throw Error(ErrorCode::SyntaxError, "header declares " + std::to_string(declared_m) + " clauses, body has " +
                                            std::to_string(clauses.size()));
  }
  const std::size_t k = clauses.empty() ? 0 : clauses.front().width();
  return Formula(n, k, std::move(clauses));
}

Formula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

std::string to_dimacs_body(const Formula& f) {
  std::string out;
  for (const auto& c : f.clauses()) {
    for (const auto& lit : c.literals) {
      out += std::to_string(lit.to_dimacs());
      out += ' ';
    }
    out += '0';
    out += ' ';
  }
  if (!out.empty()) out.pop_back();
  return out;
}

std::string to_dimacs(const Formula& f) {
  std::string out = "p cnf " + std::to_string(f.num_variables()) + " " + std::to_string(f.num_clauses()) + "\n";
  for (const auto& c : f.clauses()) {
    for (const auto& lit : c.literals) out += std::to_string(lit.to_dimacs()) + " ";
    out += "0\n";
  }
  return out;
}

Dimension dimension(const Formula& f) { return Dimension{f.clause_width(), f.num_variables()}; }

bool evaluate(const Clause& c, const Evaluation& v) {
  return std::any_of(c.literals.begin(), c.literals.end(),
                     [&](const Literal& lit) { return (v(lit.variable) == 1) != lit.negated; });
}

bool evaluate(const Formula& f, const Evaluation& v) {
  if (v.size() != f.num_variables()) {
    throw Error(ErrorCode::PartialEvaluation, "evaluation covers " + std::to_string(v.size()) +
                                                  " variables, formula has " + std::to_string(f.num_variables()));
  }
  return std::all_of(f.clauses().begin(), f.clauses().end(), [&](const Clause& c) { return evaluate(c, v); });
}

std::vector<Evaluation> satisfying_evaluations(const Formula& f, std::size_t max_variables) {
  const std::size_t n = f.num_variables();
  if (n > max_variables || n > 63) {
    throw Error(ErrorCode::TooManyVariables,
                std::to_string(n) + " variables exceeds brute-force limit " + std::to_string(max_variables));
  }
  std::vector<Evaluation> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    auto v = Evaluation::from_index(idx, n);
    if (evaluate(f, v)) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace qsatlab
