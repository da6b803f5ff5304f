// Command-line front end for the sigma-dimension library.
//
// Exit codes: 0 success, 1 other error, 2 parse error, 3 cap or budget
// exceeded, 4 unit ideal.

#include <sdim/covering.hpp>
#include <sdim/engine.hpp>
#include <sdim/errors.hpp>
#include <sdim/groebner.hpp>
#include <sdim/monomial_sigma.hpp>
#include <sdim/parse.hpp>
#include <sdim/sequence_lab.hpp>
#include <sdim/serialize.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace sdim;

struct Options {
  bool json = false;
  std::vector<std::string> polys;
  std::string input_file;
  std::string family_file;
  std::string monomial;
  std::string set;
  std::string keep;
  std::string sequence_set;
  int vars = 0;
  int imax = -1;
  int depth = -1;
  int order = -1;
  long prime = 0;
  bool count_only = false;
  std::vector<std::string> positional;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> polynomial_texts(const Options& o) {
  std::vector<std::string> texts = o.polys;
  if (!o.input_file.empty()) {
    std::istringstream in(read_file(o.input_file));
    for (std::string line; std::getline(in, line);) {
      if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
      if (line.find_first_not_of(" \t\r") != std::string::npos) texts.push_back(line);
    }
  }
  return texts;
}

int infer_vars(const Options& o, const std::vector<std::string>& texts) {
  if (o.vars > 0) return o.vars;
  int n = 1;
  for (const auto& t : texts) n = std::max(n, max_variable_index(t));
  return n;
}

std::vector<DifferencePolynomial> parse_all(const std::vector<std::string>& texts, int n) {
  std::vector<DifferencePolynomial> out;
  for (const auto& t : texts) {
    try {
      out.push_back(parse_polynomial(t, n));
    } catch (const ParseError& e) {
      throw ParseError("in \"" + t + "\": " + e.reason, e.position);
    }
  }
  return out;
}

IntSet parse_int_set(const std::string& text) {
  std::vector<long> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    try {
      std::size_t used = 0;
      v.push_back(std::stol(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("expected an integer in \"" + text + "\"", pos);
    }
    pos = end + 1;
  }
  return IntSet(std::move(v));
}

// Cell sets may omit the surrounding braces: "(0,1),(2,1)".
std::vector<Cell> parse_cell_arg(const std::string& text) {
  auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '{') return parse_cells(text);
  try {
    return parse_cells("{" + text + "}");
  } catch (const ParseError& e) {
    throw ParseError(e.reason, e.position == 0 ? 0 : e.position - 1);
  }
}

std::uint64_t enumeration_budget() {
  if (const char* env = std::getenv("SDIM_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError("SDIM_BUDGET must be a non-negative integer", 0);
    }
  }
  return kDefaultEnumerationBudget;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string mark(bool exact) { return exact ? "*" : "≤"; }

void print_report(const DimensionReport& r) {
  std::cout << "method: " << to_string(r.method) << "\n";
  std::cout << "i\td_i\n";
  for (const auto& e : r.sequence) std::cout << e.i << "\t" << e.d.str() << " " << mark(e.exact) << "\n";
  if (r.certified_value)
    std::cout << (r.certified_kind == CertifiedKind::exact ? "sdim = " : "sdim <= ") << r.certified_value->str()
              << "\n";
  else
    std::cout << "sdim: none (unit ideal)\n";
  if (r.family) {
    std::cout << "family";
    if (r.family_depth >= 0) std::cout << " (depth " << r.family_depth << ")";
    std::cout << ":\n" << r.family->str();
    if (r.family_value) std::cout << "family sdim = " << r.family_value->str() << "\n";
  }
  if (r.cross_check) std::cout << "cross-check = " << r.cross_check->str() << "\n";
  if (r.linear_tail)
    std::cout << "eventually d_i = " << r.linear_tail->d << "(i+1) + " << r.linear_tail->e << " from i = "
              << r.linear_tail->onset << "\n";
}

void output(const Options& o, const DimensionReport& r) {
  if (o.json)
    emit(to_json(r));
  else
    print_report(r);
}

SigmaFamily load_family(const Options& o) { return parse_family(read_file(o.family_file), o.vars > 0 ? std::optional<int>(o.vars) : std::nullopt); }

int cmd_sdim(const Options& o) {
  SigmaDimOptions opt;
  if (o.imax >= 0) opt.i_max = o.imax;
  if (!o.family_file.empty()) {
    output(o, sigma_dim(load_family(o), opt));
    return 0;
  }
  auto texts = polynomial_texts(o);
  if (!o.monomial.empty()) texts.push_back(o.monomial);
  if (texts.empty()) throw ParseError("no input system given", 0);
  const int n = infer_vars(o, texts);
  auto f = parse_all(texts, n);
  if (!o.monomial.empty() && !f.back().is_monomial()) throw ParseError("--monomial expects a single monomial", 0);
  DimensionReport r = o.prime ? sigma_dim(f, n, opt, PrimeField(static_cast<std::uint32_t>(o.prime)))
                              : sigma_dim(f, n, opt);
  output(o, r);
  return 0;
}

int cmd_cover(const Options& o) {
  if (o.positional.size() != 1) throw ParseError("cover expects one set, e.g. 0,2,3", 0);
  IntSet e = parse_int_set(o.positional[0]);
  Rational c = covering_density(e);
  PeriodicComplement comp = optimal_complement(e);
  if (o.json) {
    emit({{"set", e.elements()}, {"density", to_json(c)}, {"complement", to_json(comp)}});
    return 0;
  }
  std::cout << "E = {" << e.str() << "}\n";
  std::cout << "density = " << c.str() << "\n";
  std::cout << "complement: period " << comp.period << " offsets {";
  for (std::size_t k = 0; k < comp.offsets.size(); ++k) std::cout << (k ? "," : "") << comp.offsets[k];
  std::cout << "}\n";
  return 0;
}

int cmd_tau(const Options& o) {
  if (o.positional.size() != 2) throw ParseError("tau expects a set and a length, e.g. 0,2,3 10", 0);
  IntSet e = parse_int_set(o.positional[0]);
  long i = 0;
  try {
    i = std::stol(o.positional[1]);
  } catch (const std::exception&) {
    throw ParseError("length must be an integer", 0);
  }
  long t = tau_interval(e, i);
  if (o.json)
    emit({{"set", e.elements()}, {"i", i}, {"tau", t}});
  else
    std::cout << "tau({" << e.str() << "}, " << i << ") = " << t << "\n";
  return 0;
}

int cmd_dimseq(const Options& o) {
  if (!o.family_file.empty()) {
    SigmaDimOptions opt;
    if (o.imax >= 0) opt.i_max = o.imax;
    output(o, sigma_dim(load_family(o), opt));
    return 0;
  }
  auto texts = polynomial_texts(o);
  if (texts.empty()) throw ParseError("no input system given", 0);
  const int n = infer_vars(o, texts);
  auto f = parse_all(texts, n);
  const int i_max = o.imax >= 0 ? o.imax : std::max(kDefaultGroebnerDepth, detail::max_order(f));
  DimensionReport r = o.prime ? truncated_dim_sequence(f, i_max, PrimeField(static_cast<std::uint32_t>(o.prime)))
                              : truncated_dim_sequence(f, i_max);
  r.linear_tail = detect_eventual_linear(r);
  output(o, r);
  return 0;
}

int cmd_free(const Options& o) {
  if (o.set.empty()) throw ParseError("free needs --set", 0);
  auto t = parse_cell_arg(o.set);
  json out;
  out["set"] = to_json(t);
  std::string verdict;
  if (!o.family_file.empty()) {
    SigmaFamily fam = load_family(o);
    bool f = is_free(t, fam);
    out["free"] = f;
    out["method"] = "combinatorial";
    verdict = f ? "free" : "not free";
  } else {
    auto texts = polynomial_texts(o);
    if (texts.empty()) throw ParseError("no input system given", 0);
    const int n = infer_vars(o, texts);
    auto f = parse_all(texts, n);
    int depth = o.depth;
    if (depth < 0) {
      depth = 0;
      for (const auto& [s, j] : t) depth = std::max(depth, s);
    }
    out["depth"] = depth;
    auto cert = not_free_certificate(f, t, depth);
    out["method"] = "elimination";
    if (cert) {
      out["free"] = false;
      out["certificate"] = cert->str();
      verdict = "not free: " + cert->str() + " lies in the ideal";
    } else if (detail::all_monomials(detail::nonzero(f))) {
      // Monomial systems are decided exactly by shifted containment.
      std::vector<SigmaMonomial> ms;
      for (const auto& p : detail::nonzero(f)) ms.push_back(p.leading_monomial());
      out["free"] = is_free(t, family_from_monomials(ms, n)) || ms.empty();
      out["method"] = "combinatorial";
      verdict = out["free"].get<bool>() ? "free" : "not free";
    } else {
      out["free"] = nullptr;
      verdict = "inconclusive at depth " + std::to_string(depth);
    }
  }
  if (o.json)
    emit(out);
  else
    std::cout << verdict << "\n";
  return 0;
}

int cmd_monomialize(const Options& o) {
  auto texts = polynomial_texts(o);
  if (texts.empty()) throw ParseError("no input system given", 0);
  const int n = infer_vars(o, texts);
  auto f = parse_all(texts, n);
  const int depth = o.depth >= 0 ? o.depth : std::max(kDefaultGroebnerDepth, detail::max_order(f));
  auto mz = o.prime ? monomialize(f, depth, PrimeField(static_cast<std::uint32_t>(o.prime))) : monomialize(f, depth);
  std::optional<Rational> v;
  if (ColumnAutomaton::fits(mz.family)) v = sigma_dim_family(mz.family);
  if (o.json) {
    json j = to_json(mz.family);
    j["depth"] = mz.depth;
    j["value"] = v ? to_json(*v) : json(nullptr);
    emit(j);
    return 0;
  }
  std::cout << "depth " << mz.depth << "\n" << mz.family.str();
  if (v) std::cout << "family sdim = " << v->str() << "\n";
  return 0;
}

// Window variables up to the requested order plus anything the input mentions.
std::vector<SigmaVariable> ring_variables(const std::vector<DifferencePolynomial>& f, int n, int order) {
  std::set<SigmaVariable> vs;
  for (const auto& p : f)
    for (const auto& v : p.variables()) vs.insert(v);
  if (order >= 0)
    for (const auto& v : window_variables(n, order)) vs.insert(v);
  return {vs.begin(), vs.end()};
}

int cmd_gb(const Options& o) {
  auto texts = polynomial_texts(o);
  if (texts.empty()) throw ParseError("no input system given", 0);
  const int n = infer_vars(o, texts);
  auto f = parse_all(texts, n);
  auto order = MonomialOrder::lex(ring_variables(f, n, o.order));
  GroebnerBasis g = o.prime ? buchberger(f, order, PrimeField(static_cast<std::uint32_t>(o.prime))) : buchberger(f, order);
  if (o.json) {
    json j = to_json(g);
    j["dimension"] = to_json(lm_dimension(g));
    emit(j);
    return 0;
  }
  for (const auto& p : g.generators) std::cout << p.str() << "\n";
  std::cout << "dimension " << lm_dimension(g).str() << "\n";
  return 0;
}

int cmd_eliminate(const Options& o) {
  if (o.keep.empty()) throw ParseError("eliminate needs --keep", 0);
  auto texts = polynomial_texts(o);
  if (texts.empty()) throw ParseError("no input system given", 0);
  const int n = infer_vars(o, texts);
  auto f = parse_all(texts, n);
  auto cells = parse_cell_arg(o.keep);
  std::vector<SigmaVariable> keep;
  for (const auto& [s, j] : cells) keep.push_back({s, j});
  auto vars = ring_variables(f, n, o.order);
  vars.insert(vars.end(), keep.begin(), keep.end());
  auto elim = o.prime ? eliminate(f, vars, keep, PrimeField(static_cast<std::uint32_t>(o.prime)))
                      : eliminate(f, vars, keep);
  if (o.json) {
    emit({{"keep", to_json(cells)}, {"generators", to_json(elim)}});
    return 0;
  }
  for (const auto& p : elim) std::cout << p.str() << "\n";
  if (elim.empty()) std::cout << "0\n";
  return 0;
}

int cmd_solve(const Options& o) {
  if (o.prime <= 0 || o.order < 0) throw ParseError("solve needs --prime P and --order I", 0);
  auto texts = polynomial_texts(o);
  if (texts.empty()) throw ParseError("no input system given", 0);
  const int n = infer_vars(o, texts);
  auto f = parse_all(texts, n);
  auto sols = enumerate_truncated_solutions(f, static_cast<std::uint32_t>(o.prime), o.order, enumeration_budget());
  json out{{"p", sols.p}, {"i", sols.i}, {"n", sols.n}, {"count", sols.size()}};
  std::optional<std::pair<std::size_t, Rational>> proj;
  if (!o.set.empty()) {
    auto t = parse_cell_arg(o.set);
    std::size_t c = projection_count(sols, t);
    std::set<Cell> distinct(t.begin(), t.end());
    mpz_class denom = 1;
    for (std::size_t k = 0; k < distinct.size(); ++k) denom *= sols.p;
    proj.emplace(c, Rational(mpz_class(c), denom));
    out["projection"] = {{"set", to_json(t)}, {"count", c}, {"fraction", to_json(proj->second)}};
  }
  if (o.json) {
    if (!o.count_only) {
      json pts = json::array();
      for (std::size_t k = 0; k < sols.size(); ++k) {
        auto pt = sols.point(k);
        pts.push_back(std::vector<std::uint32_t>(pt.begin(), pt.end()));
      }
      out["points"] = pts;
    }
    emit(out);
    return 0;
  }
  if (!o.count_only)
    for (std::size_t k = 0; k < sols.size(); ++k) {
      auto pt = sols.point(k);
      std::cout << "(";
      for (std::size_t c = 0; c < pt.size(); ++c) std::cout << (c ? "," : "") << pt[c];
      std::cout << ")\n";
    }
  std::cout << "count " << sols.size() << "\n";
  if (proj) std::cout << "projection " << proj->first << " = " << proj->second.str() << " of F_p^|T|\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sigma-dimension of algebraic difference equations"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("polys", o.polys, "difference polynomials, e.g. \"y1*s(y1) - 1\"");
    c->add_option("--input", o.input_file, "file with one polynomial per line");
    c->add_option("--vars", o.vars, "number of sigma-variables (default: largest index used)");
    c->add_option("--prime", o.prime, "work over F_p instead of Q");
    c->add_flag("--json", o.json, "machine-readable output");
  };

  auto* sdim_cmd = app.add_subcommand("sdim", "sigma-dimension of a system, monomial or family");
  common(sdim_cmd);
  sdim_cmd->add_option("--monomial", o.monomial, "a single difference monomial");
  sdim_cmd->add_option("--family", o.family_file, "family file, one member per line");
  sdim_cmd->add_option("--imax", o.imax, "largest truncation order");

  auto* cover_cmd = app.add_subcommand("cover", "covering density and an optimal periodic complement");
  cover_cmd->add_option("set", o.positional, "finite set as a comma list, e.g. 0,2,3")->required();
  cover_cmd->add_flag("--json", o.json, "machine-readable output");

  auto* tau_cmd = app.add_subcommand("tau", "minimum number of translates covering {1..N}");
  tau_cmd->add_option("args", o.positional, "set and length, e.g. 0,2,3 10")->required()->expected(2);
  tau_cmd->add_flag("--json", o.json, "machine-readable output");

  auto* dimseq_cmd = app.add_subcommand("dimseq", "dimension sequence of the shift truncations");
  common(dimseq_cmd);
  dimseq_cmd->add_option("--imax", o.imax, "largest truncation order");
  dimseq_cmd->add_option("--family", o.family_file, "family file, one member per line");

  auto* free_cmd = app.add_subcommand("free", "decide or refute freeness of a set of cells");
  common(free_cmd);
  free_cmd->add_option("--set", o.set, "cells, e.g. {(0,1),(2,1)}")->required();
  free_cmd->add_option("--depth", o.depth, "number of shifts of the system to use");
  free_cmd->add_option("--family", o.family_file, "family file, one member per line");

  auto* mono_cmd = app.add_subcommand("monomialize", "family of leading monomials of a truncation");
  common(mono_cmd);
  mono_cmd->add_option("--depth", o.depth, "truncation order");

  auto* gb_cmd = app.add_subcommand("gb", "reduced Groebner basis under the standard lex order");
  common(gb_cmd);
  gb_cmd->add_option("--order", o.order, "include all variables up to this shift");

  auto* elim_cmd = app.add_subcommand("eliminate", "intersect the ideal with k[keep]");
  common(elim_cmd);
  elim_cmd->add_option("--keep", o.keep, "cells to keep, e.g. {(0,1),(1,1)}")->required();
  elim_cmd->add_option("--order", o.order, "include all variables up to this shift");

  auto* solve_cmd = app.add_subcommand("solve", "enumerate solutions of a truncation over F_p");
  solve_cmd->add_option("polys", o.polys, "difference polynomials");
  solve_cmd->add_option("--input", o.input_file, "file with one polynomial per line");
  solve_cmd->add_option("--vars", o.vars, "number of sigma-variables");
  solve_cmd->add_option("--prime", o.prime, "field size")->required();
  solve_cmd->add_option("--order", o.order, "window order i")->required();
  solve_cmd->add_option("--set", o.set, "project onto these cells");
  solve_cmd->add_flag("--count", o.count_only, "omit the point list");
  solve_cmd->add_flag("--json", o.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (o.vars < 0) throw ParseError("--vars must be positive", 0);
    if (*sdim_cmd) return cmd_sdim(o);
    if (*cover_cmd) return cmd_cover(o);
    if (*tau_cmd) return cmd_tau(o);
    if (*dimseq_cmd) return cmd_dimseq(o);
    if (*free_cmd) return cmd_free(o);
    if (*mono_cmd) return cmd_monomialize(o);
    if (*gb_cmd) return cmd_gb(o);
    if (*elim_cmd) return cmd_eliminate(o);
    if (*solve_cmd) return cmd_solve(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return 3;
  } catch (const UnitIdeal& e) {
    std::cerr << "unit ideal: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
