#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pfw/builtins.hpp"
#include "pfw/error.hpp"
#include "pfw/hilbert.hpp"
#include "pfw/operators.hpp"
#include "pfw/parser.hpp"
#include "pfw/reproduction.hpp"
#include "pfw/semantics.hpp"
#include "pfw/spec_files.hpp"

namespace pfw::cli {

enum Exit : int { Holds = 0, Refuted = 1, Unknown = 2, UsageError = 3 };

inline int exit_code(Verdict v) { return v == Verdict::Holds ? Holds : v == Verdict::Fails ? Refuted : Unknown; }

/// Chains, operators and proofs loaded with --load, looked up before the built-ins.
struct Workspace {
  std::map<std::string, Chain> chains;
  std::map<std::string, UnaryOp> ops;
  std::vector<ProofScript> proofs;

  Chain chain(const std::string& name) const {
    if (auto it = chains.find(name); it != chains.end()) return it->second;
    return builtin_chain(name);
  }

  /// One kind per file, sniffed from the first header word: chain, op or proof.
  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IOError", "cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    std::istringstream lines(text);
    bool any = false;
    for (std::string line; std::getline(lines, line);) {
      if (auto pct = line.find('%'); pct != std::string::npos) line.erase(pct);
      std::istringstream w(line);
      std::string head;
      if (!(w >> head)) continue;
      any = true;
      if (head == "proof") {
        for (auto& p : parse_proof_file(text)) proofs.push_back(std::move(p));
      } else if (head == "chain") {
        for (auto& c : parse_chain_file(text)) add_chain(c);
      } else if (head == "op") {
        for (auto& o : parse_op_file(text, [this](const std::string& n) { return chain(n); })) add_op(o);
      } else {
        throw Error("BadSpec", path + ": expected a chain, op or proof header, got '" + head + "'");
      }
      break;
    }
    if (!any) throw Error("BadSpec", path + " is empty");
  }

private:
  void add_chain(const Chain& c) {
    if (!chains.emplace(c.name(), c).second) throw Error("DuplicateName", "chain " + c.name() + " defined twice");
  }
  void add_op(const UnaryOp& o) {
    if (!ops.emplace(o.name(), o).second) throw Error("DuplicateName", "operator " + o.name() + " defined twice");
  }
};

/// --op: none | auto | min | max | crisp:t | crisp-open:t | piecewise:x v;x v;… | <loaded name>,
/// optionally prefixed with dual: to get the inconsistency operator.
inline std::optional<UnaryOp> resolve_op(const Workspace& ws, const Chain& c, const std::string& spec) {
  if (spec.empty() || spec == "none") return std::nullopt;
  if (spec.rfind("dual:", 0) == 0) {
    auto inner = resolve_op(ws, c, spec.substr(5));
    if (!inner) throw Error("BadOperator", "dual: needs an operator");
    return dual(*inner);
  }
  if (spec == "auto") return unique_op(c);
  if (spec == "min") return min_op(c);
  if (spec == "max") return max_op(c);
  if (spec.rfind("crisp:", 0) == 0) return crisp_op(c, parse_rational(spec.substr(6)));
  if (spec.rfind("crisp-open:", 0) == 0) return crisp_op(c, parse_rational(spec.substr(11)), false);
  if (spec.rfind("piecewise:", 0) == 0) {
    std::vector<std::pair<Rational, Rational>> bps;
    for (const auto& part : detail::split_on(spec.substr(10), ';')) {
      const auto v = detail::parse_rationals(part);
      if (v.size() != 2) throw Error("BadOperator", "breakpoint '" + part + "' should be '<x> <value>'");
      bps.emplace_back(v[0], v[1]);
    }
    return piecewise_op(c, std::move(bps));
  }
  if (auto it = ws.ops.find(spec); it != ws.ops.end()) {
    if (!(it->second.host() == c)) throw Error("HostMismatch", "operator " + spec + " is attached to " + it->second.host().label());
    return it->second;
  }
  throw Error("BadOperator", "unknown operator '" + spec + "'");
}

inline Assignment parse_assignment(const std::string& text) {
  Assignment a;
  for (const auto& part : detail::split_on(text, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw Error("BadAssignment", "expected var=value, got '" + part + "'");
    a[std::string(detail::trim(std::string_view(part).substr(0, eq)))] =
        parse_rational(detail::trim(std::string_view(part).substr(eq + 1)));
  }
  return a;
}

inline std::vector<Formula> parse_list(const std::string& text) {
  std::vector<Formula> out;
  if (detail::trim(text).empty()) return out;
  for (const auto& part : detail::split_on(text, ',')) out.push_back(parse(part));
  return out;
}

struct Options {
  std::string chain = "L3";
  std::string op;
  std::string profile;
  long long grid = 60;
  std::size_t kmax = 8;
  unsigned jobs = 1;
  bool deterministic = false;
  std::string format = "text";
  std::vector<std::string> load;
};

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"pfw: fuzzy logics with consistency operators"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--chain", o.chain, "built-in or loaded chain")->capture_default_str();
  app.add_option("--op", o.op, "none|auto|min|max|crisp:t|crisp-open:t|piecewise:x v;...|dual:<op>|<name>");
  app.add_option("--profile", o.profile, "logic profile, e.g. MTL_o or MTL○≤");
  app.add_option("--grid-denominator", o.grid, "grid for standard chains")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--kmax", o.kmax, "largest power for pdat")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--jobs", o.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", o.deterministic, "single worker, fixed seed");
  app.add_option("--format", o.format, "text|records")->capture_default_str()->check(CLI::IsMember({"text", "records"}));
  app.add_option("--load", o.load, "chain, op or proof file");
  app.fallthrough();

  std::string formula_text, mode = "truth", premises, goal, assign, connective = "&", filter, proof_path, suite_name;
  bool bridge = false;
  std::vector<std::string> bridge_chains;
  auto* c_parse = app.add_subcommand("parse", "parse and render a formula");
  c_parse->add_option("formula", formula_text)->required();
  auto* c_eval = app.add_subcommand("eval", "evaluate a formula under an assignment");
  c_eval->add_option("formula", formula_text)->required();
  c_eval->add_option("--assign", assign, "p=1/2,q=3/4");
  auto* c_taut = app.add_subcommand("taut", "tautology check");
  c_taut->add_option("formula", formula_text)->required();
  auto* c_conseq = app.add_subcommand("conseq", "truth or degree consequence");
  c_conseq->add_option("--mode", mode)->check(CLI::IsMember({"truth", "degree"}));
  c_conseq->add_option("--premises", premises, "comma-separated formulas");
  c_conseq->add_option("--goal", goal)->required();
  auto* c_validate = app.add_subcommand("validate-op", "check the consistency postulates");
  auto* c_enum = app.add_subcommand("enum-ops", "list every valid operator on a finite chain");
  auto* c_quot = app.add_subcommand("quotient", "quotient by a filter");
  c_quot->add_option("--filter", filter, "space-separated filter elements")->required();
  auto* c_lfi = app.add_subcommand("lfi-report", "check the four LFI clauses");
  auto* c_prop = app.add_subcommand("propagation", "does O propagate through a connective");
  c_prop->add_option("--connective", connective)->capture_default_str();
  auto* c_dat = app.add_subcommand("dat", "check O x <= x v ~x");
  auto* c_pdat = app.add_subcommand("pdat", "smallest k with (/\\ O p_i)^k -> phi valid");
  c_pdat->add_option("formula", formula_text)->required();
  auto* c_prove = app.add_subcommand("prove", "verify a proof file");
  c_prove->add_option("file", proof_path)->required();
  c_prove->add_flag("--bridge", bridge, "also check every line semantically");
  c_prove->add_option("--bridge-chains", bridge_chains, "finite chains for --bridge (operators from --op)");
  auto* c_suite = app.add_subcommand("suite", "run a bundled suite");
  c_suite->add_option("name", suite_name)->required()->check(CLI::IsMember({"paper"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return Holds;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return UsageError;
  }

  const bool records = o.format == "records";
  SearchOptions opt;
  opt.grid_denominator = o.grid;
  opt.jobs = o.deterministic ? 1 : o.jobs;
  auto verdict_line = [&](Verdict v) { out << (records ? "verdict " : "") << to_string(v) << "\n"; };

  try {
    Workspace ws;
    for (const auto& path : o.load) ws.load(path);
    auto model = [&](bool need_op) {
      const Chain c = ws.chain(o.chain);
      auto op = resolve_op(ws, c, o.op.empty() && need_op ? "auto" : o.op);
      if (op && op->role() == Role::Inconsistency) return Model(c, dual(*op), *op);
      return op ? Model(c, *op, dual(*op)) : Model(c);
    };

    if (*c_parse) {
      const Formula f = parse(formula_text);
      out << render(f) << "\n" << render_unicode(f) << "\n";
      return Holds;
    }
    if (*c_eval) {
      const Model m = model(false);
      out << to_string(evaluate(m, parse(formula_text), assign.empty() ? Assignment{} : parse_assignment(assign))) << "\n";
      return Holds;
    }
    if (*c_taut || *c_conseq) {
      const Model m = model(false);
      const auto r = *c_taut ? tautology(m, parse(formula_text), opt)
                             : consequence(m, parse_list(premises), parse(goal), mode == "degree" ? Mode::Degree : Mode::Truth, opt);
      out << (records ? r.render_records() : r.render_text());
      return exit_code(r.verdict);
    }
    if (*c_validate) {
      const Model m = model(true);
      const auto r = validate_c(m.chain, *m.circ);
      const auto b = validate_bullet(m.chain, *m.bullet);
      const auto a = validate_algebraic(m.chain, *m.circ);
      out << r.render() << "algebraic " << (a.valid ? "valid" : "invalid") << "\ndual " << (b.valid ? "valid" : "invalid") << "\n";
      return r.valid ? Holds : Refuted;
    }
    if (*c_enum) {
      const Chain c = ws.chain(o.chain);
      const auto ops = enumerate_ops(c);
      out << (records ? "count " : "") << ops.size() << (records ? "" : " operators") << "\n";
      for (const auto& op : ops) {
        for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << to_string(op(c.value(i)));
        out << "\n";
      }
      return Holds;
    }
    if (*c_quot) {
      const Chain c = ws.chain(o.chain);
      const Quotient q = quotient_by_filter(c, make_filter(c, detail::parse_rationals(filter)));
      out << "classes " << q.chain.size() << "\nelements";
      for (const auto& v : q.chain.elements()) out << " " << to_string(v);
      out << "\nprojection";
      for (std::size_t i = 0; i < c.size(); ++i) out << " " << to_string(c.value(i)) << ":" << to_string(q.chain.value(q.projection[i]));
      out << "\nN";
      for (std::size_t z = 0; z + 1 < q.chain.size(); ++z)
        if (q.chain.neg(z) == 0) out << " " << to_string(q.chain.value(z));
      out << "\n";
      return Holds;
    }
    if (*c_lfi) {
      const auto r = check_lfi(model(true));
      out << r.render();
      Verdict v = Verdict::Holds;
      for (const auto& cl : r.clauses)
        if (cl.status == Verdict::Fails) v = Verdict::Fails;
        else if (cl.status == Verdict::Unknown && v == Verdict::Holds) v = Verdict::Unknown;
      return exit_code(v);
    }
    if (*c_prop) {
      const auto r = check_propagation(model(true), parse_connective(connective), o.grid);
      out << r.render();
      return exit_code(r.verdict);
    }
    if (*c_dat) {
      const auto r = check_dat_axiom(model(true));
      verdict_line(r.holds ? Verdict::Holds : Verdict::Fails);
      if (r.witness) out << "witness " << to_string(*r.witness) << "\n";
      return r.holds ? Holds : Refuted;
    }
    if (*c_pdat) {
      const auto r = pdat_search(model(true), parse(formula_text), o.kmax, opt);
      for (const auto& [k, cm] : r.refuted) out << "k=" << k << " refuted: " << cm.render_text();
      if (!r.k) {
        out << "no k <= " << o.kmax << "\n";
        return Refuted;
      }
      out << "k " << *r.k << (r.certified ? " certified" : " (no countermodel found)") << "\n";
      return r.certified ? Holds : Unknown;
    }
    if (*c_prove) {
      std::ifstream in(proof_path);
      if (!in) throw Error("IOError", "cannot read " + proof_path);
      std::stringstream buf;
      buf << in.rdbuf();
      int code = Holds;
      for (auto p : parse_proof_file(buf.str())) {
        if (!o.profile.empty()) p.profile = o.profile;
        const auto v = verify_proof(p);
        out << "proof " << p.name << " in " << load_profile(p.profile).name << "\n" << v.render();
        if (!v.ok) {
          code = Refuted;
          continue;
        }
        if (bridge) {
          std::vector<Model> models;
          for (const auto& name : bridge_chains.empty() ? std::vector<std::string>{o.chain} : bridge_chains) {
            o.chain = name;
            models.push_back(model(false));
          }
          const auto rep = soundness_bridge(p, models);
          out << rep.render();
          if (!rep.ok()) code = Refuted;
        }
      }
      return code;
    }
    if (*c_suite) {
      int failed = 0;
      for (const auto& check : acceptance_suite()) {
        const auto r = check();
        failed += !r.pass;
        out << render_row(r);
      }
      out << (failed ? "FAILED " : "ALL PASSED ") << 12 - failed << "/12\n";
      return failed ? Refuted : Holds;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return UsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return UsageError;
  }
  return UsageError;
}

}  // namespace pfw::cli
