// qsatlab command-line driver. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsatlab/qsatlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string input;
  std::string mode = "literal";
  std::string eval;
  std::string scale = "1,0";
  double epsilon = 0.0;
  double tol = 0.0;
  bool permute = false;
  bool strict = false;
  std::string pair;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  bool random = false;
  std::size_t k = 2;
  std::size_t n = 3;
  std::size_t m = 2;
  bool allow_same_varsets = false;
  std::size_t workers = 0;
  std::string out;
  std::string format;
};

// RAII owners for C handles.
struct Text {
  qsatlab_text_t h = nullptr;
  ~Text() { qsatlab_text_destroy(h); }
  std::string str() const { return h ? std::string(qsatlab_text_data(h), qsatlab_text_size(h)) : std::string(); }
};

struct FormulaHandle {
  qsatlab_formula_t h = nullptr;
  ~FormulaHandle() { qsatlab_formula_destroy(h); }
};

struct Failure {
  int exit_code;
  std::string message;
};

void check(int rc) {
  if (rc == QSATLAB_OK) return;
  std::string msg = qsatlab_last_error();
  if (msg.empty()) msg = qsatlab_error_description(rc);
  throw Failure{rc == QSATLAB_ERROR_GOLDEN_MISMATCH ? kExitFailure : kExitUsage, msg};
}

int format_code(const std::string& format, bool csv_ok) {
  if (format == "json") return QSATLAB_FORMAT_JSON;
  if (format == "text") return QSATLAB_FORMAT_TEXT;
  if (format == "csv" && csv_ok) return QSATLAB_FORMAT_CSV;
  throw Failure{kExitUsage, "unsupported --format '" + format + "' for this subcommand"};
}

int mode_code(const std::string& mode) {
  return mode == "aligned" ? QSATLAB_MODE_ALIGNED : QSATLAB_MODE_LITERAL;
}

std::pair<double, double> parse_scale(const std::string& s) {
  const auto comma = s.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {re, 0.0};
    }
    const std::string a = s.substr(0, comma);
    const std::string b = s.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return {re, im};
  } catch (const std::exception&) {
    throw Failure{kExitUsage, "--scale expects 're,im', got '" + s + "'"};
  }
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(s);
    const long p = std::stol(s.substr(0, comma));
    const long q = std::stol(s.substr(comma + 1));
    if (p <= 0 || q <= 0) throw std::invalid_argument(s);
    return {static_cast<std::size_t>(p), static_cast<std::size_t>(q)};
  } catch (const std::exception&) {
    throw Failure{kExitUsage, "--pair expects 'p,q' with 1-based clause indices, got '" + s + "'"};
  }
}

void load(FormulaHandle& f, const std::string& path) { check(qsatlab_formula_load_dimacs(&f.h, path.c_str())); }

void validate_eval(const FormulaHandle& f, const std::string& eval) {
  std::size_t k = 0, n = 0;
  check(qsatlab_formula_dimension(f.h, &k, &n));
  if (eval.size() != n || eval.find_first_not_of("01") != std::string::npos) {
    throw Failure{kExitUsage, "--eval must be a bitstring of length " + std::to_string(n)};
  }
}

// Output goes to --out through a temporary sibling, or to stdout.
void deliver(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  const std::filesystem::path path(opt.out);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Failure{kExitUsage, "cannot write " + tmp.string()};
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Failure{kExitUsage, "cannot write " + path.string()};
  }
}

int run_parse(const Options& opt) {
  FormulaHandle f;
  load(f, opt.input);
  std::size_t k = 0, n = 0, m = 0;
  check(qsatlab_formula_dimension(f.h, &k, &n));
  check(qsatlab_formula_num_clauses(f.h, &m));
  Text dimacs;
  check(qsatlab_formula_to_dimacs(f.h, &dimacs.h));
  if (format_code(opt.format.empty() ? "text" : opt.format, false) == QSATLAB_FORMAT_JSON) {
    nlohmann::json doc{{"k", k}, {"n", n}, {"m", m}, {"dimacs", dimacs.str()}};
    deliver(opt, doc.dump() + "\n");
  } else {
    deliver(opt, "c dimension (k,n) = (" + std::to_string(k) + "," + std::to_string(n) + ")\n" + dimacs.str());
  }
  return kExitOk;
}

int run_sat(const Options& opt) {
  FormulaHandle f;
  load(f, opt.input);
  Text list;
  check(qsatlab_formula_satisfying(f.h, &list.h));
  if (format_code(opt.format.empty() ? "text" : opt.format, false) == QSATLAB_FORMAT_JSON) {
    nlohmann::json arr = nlohmann::json::array();
    std::istringstream lines(list.str());
    for (std::string line; std::getline(lines, line);) arr.push_back(line);
    deliver(opt, arr.dump() + "\n");
  } else {
    deliver(opt, list.str());
  }
  return kExitOk;
}

int run_build(const Options& opt) {
  FormulaHandle f;
  load(f, opt.input);
  validate_eval(f, opt.eval);
  const auto [re, im] = parse_scale(opt.scale);
  Text out;
  check(qsatlab_build(f.h, opt.eval.c_str(), mode_code(opt.mode), re, im,
                      format_code(opt.format.empty() ? "json" : opt.format, false), &out.h));
  deliver(opt, out.str());
  return kExitOk;
}

int run_check(const Options& opt) {
  FormulaHandle f;
  load(f, opt.input);
  if (!opt.eval.empty()) validate_eval(f, opt.eval);
  const auto [re, im] = parse_scale(opt.scale);
  Text out;
  check(qsatlab_check(f.h, opt.eval.empty() ? nullptr : opt.eval.c_str(), mode_code(opt.mode), re, im, opt.epsilon,
                      opt.tol, format_code(opt.format.empty() ? "json" : opt.format, false), &out.h, nullptr));
  deliver(opt, out.str());
  return kExitOk;
}

int run_example1(const Options& opt) {
  Text out;
  const int rc = qsatlab_example1(format_code(opt.format.empty() ? "text" : opt.format, false), &out.h);
  deliver(opt, out.str());
  check(rc);
  return kExitOk;
}

int run_prop(const Options& opt) {
  FormulaHandle f;
  load(f, opt.input);
  std::size_t p = 0, q = 0;
  if (!opt.pair.empty()) std::tie(p, q) = parse_pair(opt.pair);
  Text out;
  int all_hold = 0;
  check(qsatlab_proposition(f.h, p, q, opt.permute ? 1 : 0,
                            format_code(opt.format.empty() ? "text" : opt.format, false), &out.h, &all_hold));
  deliver(opt, out.str());
  return opt.strict && !all_hold ? kExitFailure : kExitOk;
}

int run_sweep(const Options& opt) {
  qsatlab_sweep_config cfg;
  check(qsatlab_sweep_config_init(&cfg));
  cfg.k = opt.k;
  cfg.n = opt.n;
  cfg.m = opt.m;
  cfg.random = opt.random ? 1 : 0;
  cfg.seed = opt.seed;
  cfg.count = opt.count;
  cfg.require_distinct_varsets = opt.allow_same_varsets ? 0 : 1;
  cfg.permute_literals = opt.permute ? 1 : 0;
  cfg.workers = opt.workers;
  if (opt.random && opt.count == 0) throw Failure{kExitUsage, "--random needs --count > 0"};
  Text summary;
  check(qsatlab_sweep(&cfg, opt.out.empty() ? nullptr : opt.out.c_str(),
                      format_code(opt.format.empty() ? "text" : opt.format, true), &summary.h));
  std::cout << summary.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("QSATLAB_MAX_N")) {
    char* end = nullptr;
    const unsigned long limit = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || qsatlab_set_variable_limit(limit) != QSATLAB_OK) {
      std::cerr << "error: QSATLAB_MAX_N must be an integer in 1..30\n";
      return kExitUsage;
    }
  }

  Options opt;
  CLI::App app{"qsatlab: quantum-assignment projectors and quantum satisfiability of CNF formulas"};
  app.require_subcommand(1);

  const auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", opt.input, "DIMACS CNF file")->required()->check(CLI::ExistingFile);
  };
  const auto add_format = [&](CLI::App* sub, const std::string& choices) {
    sub->add_option("--format", opt.format, "Output format (" + choices + ")");
  };
  const auto add_out = [&](CLI::App* sub) { sub->add_option("--out", opt.out, "Write output to this path"); };
  const auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", opt.mode, "Embedding: literal or aligned")
        ->check(CLI::IsMember({"literal", "aligned"}));
  };
  const auto add_scale = [&](CLI::App* sub) {
    sub->add_option("--scale", opt.scale, "Complex scale a as 're,im' (default 1,0)");
  };

  auto* parse = app.add_subcommand("parse", "Echo the normalized formula and its dimension (k,n)");
  add_input(parse);
  add_format(parse, "text|json");
  add_out(parse);

  auto* sat = app.add_subcommand("sat", "List satisfying evaluations (x1..xn bitstrings)");
  add_input(sat);
  add_format(sat, "text|json");
  add_out(sat);

  auto* build = app.add_subcommand("build", "Dump the quantum-assignment matrices for an evaluation");
  add_input(build);
  build->add_option("--eval", opt.eval, "Evaluation bitstring in x1..xn order")->required();
  add_mode(build);
  add_scale(build);
  add_format(build, "json|text");
  add_out(build);

  auto* chk = app.add_subcommand("check", "Decide quantum satisfiability of the assignments");
  add_input(chk);
  chk->add_option("--eval", opt.eval, "Evaluation bitstring; default: every satisfying evaluation");
  add_mode(chk);
  add_scale(chk);
  chk->add_option("--epsilon", opt.epsilon, "Promise gap (default 1/(8 n^3))")->check(CLI::PositiveNumber);
  chk->add_option("--tol", opt.tol, "Numerical tolerance (default 1e-9)")->check(CLI::PositiveNumber);
  add_format(chk, "json|text");
  add_out(chk);

  auto* ex1 = app.add_subcommand("example1", "Reproduce the worked example and compare with the reference matrices");
  add_format(ex1, "text|json");
  add_out(ex1);

  auto* prop = app.add_subcommand("prop", "Search witnesses that the natural conversion fails");
  add_input(prop);
  prop->add_option("--pair", opt.pair, "Clause pair 'p,q' (default: every pair with distinct variable sets)");
  prop->add_flag("--permute", opt.permute, "Also try every literal order of clause q");
  prop->add_flag("--strict", opt.strict, "Exit 1 if some pair has no witness");
  add_format(prop, "text|json");
  add_out(prop);

  auto* sw = app.add_subcommand("sweep", "Run the proposition and QSAT checks over generated formulas");
  sw->add_option("--k", opt.k, "Clause width")->check(CLI::PositiveNumber);
  sw->add_option("--n", opt.n, "Variable count")->check(CLI::PositiveNumber);
  sw->add_option("--m", opt.m, "Clause count")->check(CLI::PositiveNumber);
  sw->add_flag("--random", opt.random, "Seeded random formulas instead of exhaustive enumeration");
  sw->add_option("--seed", opt.seed, "Random seed");
  sw->add_option("--count", opt.count, "Number of random formulas");
  sw->add_flag("--allow-same-varsets", opt.allow_same_varsets,
               "Keep formulas without a clause pair of distinct variable sets");
  sw->add_flag("--permute", opt.permute, "Try every literal order of clause q");
  sw->add_option("--workers", opt.workers, "Worker threads (0 = all cores)");
  sw->add_option("--out", opt.out, "Directory for sweep.json and sweep.csv");
  add_format(sw, "text|json|csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*parse) return run_parse(opt);
    if (*sat) return run_sat(opt);
    if (*build) return run_build(opt);
    if (*chk) return run_check(opt);
    if (*ex1) return run_example1(opt);
    if (*prop) return run_prop(opt);
    if (*sw) return run_sweep(opt);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  }
  return kExitUsage;
}
