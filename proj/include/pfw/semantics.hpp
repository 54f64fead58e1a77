#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pfw/chain.hpp"
#include "pfw/error.hpp"
#include "pfw/formula.hpp"
#include "pfw/operators.hpp"
#include "pfw/rational.hpp"

namespace pfw {

/// A chain together with the ○ and • it interprets (either may be absent).
struct Model {
  Chain chain;
  std::optional<UnaryOp> circ;
  std::optional<UnaryOp> bullet;

  explicit Model(Chain c, std::optional<UnaryOp> o = std::nullopt, std::optional<UnaryOp> b = std::nullopt)
      : chain(std::move(c)), circ(std::move(o)), bullet(std::move(b)) {
    if (circ && !(circ->host() == chain)) throw Error("HostMismatch", "○ is attached to " + circ->host().label());
    if (bullet && !(bullet->host() == chain)) throw Error("HostMismatch", "• is attached to " + bullet->host().label());
  }

  std::string label() const {
    std::string s = chain.label();
    if (circ) s += " with O=" + (circ->name().empty() ? to_string(circ->kind()) : circ->name());
    if (bullet) s += " with #=" + (bullet->name().empty() ? to_string(bullet->kind()) : bullet->name());
    return s;
  }
};

using Assignment = std::map<std::string, Rational>;

/// A formula flattened into a DAG of shared subterms, evaluated bottom-up.
/// Finite chains run on grid indices; standard chains run on exact rationals.
class Program {
public:
  Program(const Formula& f, std::vector<std::string> vars) : vars_(std::move(vars)) {
    std::unordered_map<Formula, int, FormulaHash> seen;
    root_ = add(f, seen);
  }

  const std::vector<std::string>& vars() const { return vars_; }

  void require_operators(const Model& m) const {
    for (const auto& s : steps_) {
      if (s.kind == Kind::Circ && !m.circ) throw Error("OperatorNotBound", "formula uses O but no consistency operator is attached");
      if (s.kind == Kind::Bullet && !m.bullet)
        throw Error("OperatorNotBound", "formula uses # but no inconsistency operator is attached");
    }
  }

  std::size_t run(const Model& m, const std::vector<std::size_t>& a, std::vector<std::size_t>& v) const {
    const Chain& c = m.chain;
    v.resize(steps_.size());
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      const Step& s = steps_[i];
      switch (s.kind) {
        case Kind::Var: v[i] = a[s.slot]; break;
        case Kind::Zero: v[i] = 0; break;
        case Kind::One: v[i] = c.top(); break;
        case Kind::Not: v[i] = c.neg(v[s.a]); break;
        case Kind::Circ: v[i] = m.circ->at_index(v[s.a]); break;
        case Kind::Bullet: v[i] = m.bullet->at_index(v[s.a]); break;
        case Kind::Delta: v[i] = v[s.a] == c.top() ? c.top() : 0; break;
        case Kind::And: v[i] = std::min(v[s.a], v[s.b]); break;
        case Kind::Or: v[i] = std::max(v[s.a], v[s.b]); break;
        case Kind::Fuse: v[i] = c.mul(v[s.a], v[s.b]); break;
        case Kind::Imp: v[i] = c.imp(v[s.a], v[s.b]); break;
        case Kind::Iff: v[i] = std::min(c.imp(v[s.a], v[s.b]), c.imp(v[s.b], v[s.a])); break;
      }
    }
    return v[root_];
  }

  Rational run_exact(const Model& m, const std::vector<Rational>& a) const {
    const Chain& c = m.chain;
    std::vector<Rational> v(steps_.size());
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      const Step& s = steps_[i];
      switch (s.kind) {
        case Kind::Var: v[i] = a[s.slot]; break;
        case Kind::Zero: v[i] = 0; break;
        case Kind::One: v[i] = 1; break;
        case Kind::Not: v[i] = c.negation(v[s.a]); break;
        case Kind::Circ: v[i] = (*m.circ)(v[s.a]); break;
        case Kind::Bullet: v[i] = (*m.bullet)(v[s.a]); break;
        case Kind::Delta: v[i] = c.delta(v[s.a]); break;
        case Kind::And: v[i] = std::min(v[s.a], v[s.b]); break;
        case Kind::Or: v[i] = std::max(v[s.a], v[s.b]); break;
        case Kind::Fuse: v[i] = c.tnorm(v[s.a], v[s.b]); break;
        case Kind::Imp: v[i] = c.residuum(v[s.a], v[s.b]); break;
        case Kind::Iff: v[i] = std::min(c.residuum(v[s.a], v[s.b]), c.residuum(v[s.b], v[s.a])); break;
      }
    }
    return v[root_];
  }

private:
  struct Step {
    Kind kind;
    int a = -1, b = -1;
    std::size_t slot = 0;
  };

  int add(const Formula& f, std::unordered_map<Formula, int, FormulaHash>& seen) {
    if (auto it = seen.find(f); it != seen.end()) return it->second;
    Step s{f.kind()};
    if (f.kind() == Kind::Var) {
      auto it = std::find(vars_.begin(), vars_.end(), f.name());
      if (it == vars_.end()) throw Error("UnboundVariable", "no value for variable '" + f.name() + "'");
      s.slot = static_cast<std::size_t>(it - vars_.begin());
    } else if (is_unary(f.kind())) {
      s.a = add(f.child(), seen);
    } else if (is_binary(f.kind())) {
      s.a = add(f.lhs(), seen);
      s.b = add(f.rhs(), seen);
    }
    steps_.push_back(s);
    const int id = static_cast<int>(steps_.size()) - 1;
    seen.emplace(f, id);
    return id;
  }

  std::vector<std::string> vars_;
  std::vector<Step> steps_;
  int root_ = 0;
};

/// e(φ) for an evaluation given as variable ↦ value.
inline Rational evaluate(const Model& m, const Formula& f, const Assignment& a) {
  std::vector<std::string> vars;
  std::vector<Rational> vals;
  for (const auto& [name, value] : a) {
    if (!m.chain.contains(value)) throw Error("OutOfCarrier", to_string(value) + " is not an element of " + m.chain.label());
    vars.push_back(name);
    vals.push_back(value);
  }
  Program p(f, vars);
  p.require_operators(m);
  return p.run_exact(m, vals);
}

// Consequence ----------------------------------------------------------------

enum class Mode { Truth, Degree };
enum class Verdict { Holds, Fails, Unknown };

inline std::string to_string(Mode m) { return m == Mode::Truth ? "truth" : "degree"; }
inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

struct SearchOptions {
  long long grid_denominator = 60;
  unsigned jobs = 1;
  std::size_t finite_var_cap = 6;
  std::size_t standard_var_cap = 4;
  std::size_t finite_budget = 5'000'000;   // assignments enumerated exhaustively at most
  std::size_t standard_budget = 400'000;   // grid assignments enumerated exhaustively at most
  std::size_t samples = 20'000;            // random assignments when beyond a cap or budget
  std::uint64_t seed = 1;
};

struct ConsequenceResult {
  Verdict verdict = Verdict::Holds;
  Mode mode = Mode::Truth;
  std::string chain;
  std::vector<std::pair<std::string, Rational>> assignment;  // countermodel, when verdict == Fails
  std::optional<Rational> witness_a;                         // degree mode: min of premise values
  std::optional<Rational> goal_value;
  long long grid_denominator = 0;  // 0 for finite chains
  std::size_t checked = 0;
  bool sampled = false;

  std::string render_records() const {
    std::string out = "verdict " + to_string(verdict) + "\nmode " + to_string(mode) + "\n";
    if (!chain.empty()) out += "chain " + chain + "\n";
    if (verdict == Verdict::Fails) {
      out += "assignment";
      for (const auto& [v, q] : assignment) out += " " + v + "=" + to_string(q);
      out += "\n";
      if (witness_a) out += "witness_a=" + to_string(*witness_a) + "\n";
      if (goal_value) out += "goal_value=" + to_string(*goal_value) + "\n";
    }
    if (grid_denominator) out += "grid_denominator " + std::to_string(grid_denominator) + "\n";
    out += "checked_count " + std::to_string(checked) + "\n";
    if (sampled) out += "sampled true\n";
    return out;
  }

  std::string render_text() const {
    std::string out = to_string(verdict);
    if (verdict == Verdict::Fails) {
      out += ": countermodel on " + chain + ":";
      for (const auto& [v, q] : assignment) out += " " + v + "=" + to_string(q);
      if (witness_a) out += ", a=" + to_string(*witness_a);
      if (goal_value) out += ", goal=" + to_string(*goal_value);
    } else if (verdict == Verdict::Unknown) {
      out += ": no countermodel among " + std::to_string(checked) + " evaluations" +
             (grid_denominator ? " (grid 1/" + std::to_string(grid_denominator) + ")" : std::string()) +
             (sampled ? ", sampled" : "");
    } else {
      out += " (" + std::to_string(checked) + " evaluations)";
    }
    return out + "\n";
  }
};

namespace detail {

inline std::vector<std::string> query_vars(const std::vector<Formula>& premises, const Formula& goal) {
  std::set<std::string> vs = variables(goal);
  for (const auto& p : premises) {
    auto more = variables(p);
    vs.insert(more.begin(), more.end());
  }
  return {vs.begin(), vs.end()};
}

/// Values tried for each variable on a standard chain: the grid {k/D}, chain
/// landmarks, and the operators' breakpoints.
inline std::vector<Rational> standard_candidates(const Model& m, long long den) {
  std::vector<Rational> vals = m.chain.landmarks();
  for (long long k = 0; k <= den; ++k) vals.push_back(rat(k, den));
  for (const auto* op : {m.circ ? &*m.circ : nullptr, m.bullet ? &*m.bullet : nullptr})
    if (op)
      for (const auto& p : op->map().points()) vals.push_back(p);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

/// Scans assignment codes [0, total) and returns the smallest code for which `bad`
/// holds. Workers split the range; the minimum wins, so the answer is schedule-independent.
template <class Bad>
std::optional<std::uint64_t> first_bad(std::uint64_t total, unsigned jobs, const Bad& bad) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  auto work = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t t = lo; t < hi && t < best.load(std::memory_order_relaxed); ++t)
      if (bad(t)) {
        std::uint64_t cur = best.load();
        while (t < cur && !best.compare_exchange_weak(cur, t)) {
        }
        return;
      }
  };
  if (jobs == 1) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j * chunk, std::min(total, (j + 1) * chunk));
    for (auto& t : pool) t.join();
  }
  if (best == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return best.load();
}

inline bool saturating_pow(std::uint64_t base, std::size_t exp, std::uint64_t limit, std::uint64_t& out) {
  out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > limit / base) return false;
    out *= base;
  }
  return out <= limit;
}

}  // namespace detail

/// Countermodel search over one model. Truth mode looks for premises all 1 and the
/// goal below 1; degree mode for a := min(premises) > goal.
inline ConsequenceResult consequence(const Model& m, const std::vector<Formula>& premises, const Formula& goal,
                                     Mode mode, const SearchOptions& opt = {}) {
  const auto vars = detail::query_vars(premises, goal);
  std::vector<Program> prem;
  for (const auto& p : premises) prem.emplace_back(p, vars);
  Program target(goal, vars);
  for (const auto& p : prem) p.require_operators(m);
  target.require_operators(m);

  ConsequenceResult r;
  r.mode = mode;
  r.chain = m.label();
  const std::size_t k = vars.size();

  if (m.chain.is_finite()) {
    const Chain& c = m.chain;
    const std::uint64_t n = c.size();
    auto decode = [&](std::uint64_t code, std::vector<std::size_t>& a) {
      a.assign(k, 0);
      for (std::size_t i = k; i-- > 0;) {
        a[i] = static_cast<std::size_t>(code % n);
        code /= n;
      }
    };
    auto bad_assignment = [&](const std::vector<std::size_t>& a, std::vector<std::size_t>& scratch) {
      std::size_t low = c.top();
      for (const auto& p : prem) low = std::min(low, p.run(m, a, scratch));
      const std::size_t g = target.run(m, a, scratch);
      return mode == Mode::Truth ? (low == c.top() && g != c.top()) : low > g;
    };
    auto record = [&](const std::vector<std::size_t>& a) {
      std::vector<std::size_t> scratch;
      std::size_t low = c.top();
      for (const auto& p : prem) low = std::min(low, p.run(m, a, scratch));
      r.verdict = Verdict::Fails;
      for (std::size_t i = 0; i < k; ++i) r.assignment.emplace_back(vars[i], c.value(a[i]));
      if (mode == Mode::Degree) r.witness_a = c.value(low);
      r.goal_value = c.value(target.run(m, a, scratch));
    };
    std::uint64_t total = 0;
    if (k <= opt.finite_var_cap && detail::saturating_pow(n, k, opt.finite_budget, total)) {
      auto hit = detail::first_bad(total, opt.jobs, [&](std::uint64_t code) {
        thread_local std::vector<std::size_t> a, scratch;
        decode(code, a);
        return bad_assignment(a, scratch);
      });
      r.checked = hit ? static_cast<std::size_t>(*hit + 1) : static_cast<std::size_t>(total);
      if (hit) {
        std::vector<std::size_t> a;
        decode(*hit, a);
        record(a);
      }
      return r;
    }
    r.sampled = true;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    std::vector<std::size_t> a(k), scratch;
    for (std::size_t s = 0; s < opt.samples; ++s) {
      for (auto& x : a) x = pick(rng);
      ++r.checked;
      if (bad_assignment(a, scratch)) {
        record(a);
        return r;
      }
    }
    r.verdict = Verdict::Unknown;
    return r;
  }

  // Standard chain: exact evaluation on grid/landmark candidates. A countermodel is a
  // proof of failure; absence of one is only `unknown` (unless there is nothing to vary).
  const auto cand = detail::standard_candidates(m, opt.grid_denominator);
  r.grid_denominator = opt.grid_denominator;
  const std::uint64_t n = cand.size();
  auto bad_values = [&](const std::vector<Rational>& a) {
    Rational low = 1;
    for (const auto& p : prem) low = std::min(low, p.run_exact(m, a));
    const Rational g = target.run_exact(m, a);
    return mode == Mode::Truth ? (low == 1 && g != 1) : low > g;
  };
  auto record = [&](const std::vector<Rational>& a) {
    Rational low = 1;
    for (const auto& p : prem) low = std::min(low, p.run_exact(m, a));
    r.verdict = Verdict::Fails;
    for (std::size_t i = 0; i < k; ++i) r.assignment.emplace_back(vars[i], a[i]);
    if (mode == Mode::Degree) r.witness_a = low;
    r.goal_value = target.run_exact(m, a);
  };
  auto decode = [&](std::uint64_t code, std::vector<Rational>& a) {
    a.assign(k, 0);
    for (std::size_t i = k; i-- > 0;) {
      a[i] = cand[static_cast<std::size_t>(code % n)];
      code /= n;
    }
  };
  std::uint64_t total = 0;
  if (k <= opt.standard_var_cap && detail::saturating_pow(n, k, opt.standard_budget, total)) {
    auto hit = detail::first_bad(total, opt.jobs, [&](std::uint64_t code) {
      thread_local std::vector<Rational> a;
      decode(code, a);
      return bad_values(a);
    });
    r.checked = hit ? static_cast<std::size_t>(*hit + 1) : static_cast<std::size_t>(total);
    if (hit) {
      std::vector<Rational> a;
      decode(*hit, a);
      record(a);
    } else {
      r.verdict = k == 0 ? Verdict::Holds : Verdict::Unknown;
    }
    return r;
  }
  r.sampled = true;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
  std::vector<Rational> a(k);
  for (std::size_t s = 0; s < opt.samples; ++s) {
    for (auto& x : a) x = cand[pick(rng)];
    ++r.checked;
    if (bad_values(a)) {
      record(a);
      return r;
    }
  }
  r.verdict = Verdict::Unknown;
  return r;
}

/// Over several models: the first countermodel wins; otherwise holds only if every
/// model answered holds.
inline ConsequenceResult consequence(const std::vector<Model>& models, const std::vector<Formula>& premises,
                                     const Formula& goal, Mode mode, const SearchOptions& opt = {}) {
  ConsequenceResult agg;
  agg.mode = mode;
  for (const auto& m : models) {
    ConsequenceResult r = consequence(m, premises, goal, mode, opt);
    agg.checked += r.checked;
    agg.sampled = agg.sampled || r.sampled;
    agg.grid_denominator = std::max(agg.grid_denominator, r.grid_denominator);
    if (r.verdict == Verdict::Fails) {
      r.checked = agg.checked;
      return r;
    }
    if (r.verdict == Verdict::Unknown) agg.verdict = Verdict::Unknown;
  }
  return agg;
}

inline ConsequenceResult truth_consequence(const std::vector<Model>& models, const std::vector<Formula>& premises,
                                           const Formula& goal, const SearchOptions& opt = {}) {
  return consequence(models, premises, goal, Mode::Truth, opt);
}

inline ConsequenceResult degree_consequence(const std::vector<Model>& models, const std::vector<Formula>& premises,
                                            const Formula& goal, const SearchOptions& opt = {}) {
  return consequence(models, premises, goal, Mode::Degree, opt);
}

/// ⊨ φ on the model (truth mode, no premises).
inline ConsequenceResult tautology(const Model& m, const Formula& f, const SearchOptions& opt = {}) {
  return consequence(m, {}, f, Mode::Truth, opt);
}

// Meta-checks -----------------------------------------------------------------------

struct ClauseResult {
  std::string id;
  Verdict status = Verdict::Holds;  // Holds = the clause is satisfied
  std::string detail;
};

struct LfiReport {
  std::array<ClauseResult, 4> clauses;
  bool is_lfi() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.status == Verdict::Holds; });
  }
  std::string render() const {
    std::string out;
    for (const auto& c : clauses)
      out += "clause " + c.id + " " + (c.status == Verdict::Holds ? "pass" : c.status == Verdict::Fails ? "fail" : "unknown") +
             (c.detail.empty() ? "" : "  " + c.detail) + "\n";
    out += std::string("lfi ") + (is_lfi() ? "yes" : "no") + "\n";
    return out;
  }
};

namespace detail {

inline std::string describe_countermodel(const ConsequenceResult& r) {
  std::string s;
  for (const auto& [v, q] : r.assignment) s += (s.empty() ? "" : " ") + v + "=" + to_string(q);
  if (r.witness_a) s += " a=" + to_string(*r.witness_a);
  return s;
}

/// A clause of the form "Γ ⊬ ψ for some φ, ψ": satisfied iff a degree countermodel exists.
inline ClauseResult non_explosion_clause(const Model& m, std::string id, const std::vector<Formula>& premises,
                                         const SearchOptions& opt) {
  ClauseResult c;
  c.id = std::move(id);
  const auto r = consequence(m, premises, var("q"), Mode::Degree, opt);
  if (r.verdict == Verdict::Fails) {
    c.status = Verdict::Holds;
    c.detail = "countermodel " + describe_countermodel(r);
  } else {
    c.status = r.verdict == Verdict::Holds ? Verdict::Fails : Verdict::Unknown;
    c.detail = r.verdict == Verdict::Holds ? "explosive" : "no countermodel found";
  }
  return c;
}

/// Pieces of the identity, ¬ and ○ on a common refinement of their breakpoints.
inline std::vector<Rational> common_points(const Model& m, const Piecewise& op) {
  std::vector<Rational> pts = m.chain.landmarks();
  for (const auto& p : op.points()) pts.push_back(p);
  const NSet n = m.chain.n_set();
  if (n.shape != NSet::Shape::Empty) pts.push_back(n.bound);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace detail

/// Gentle explosion pointwise: x ∧ ¬x ∧ ○(x) = 0 for every x. Returns a violating x if any.
inline std::optional<Rational> gentle_explosion_violation(const Model& m) {
  if (!m.circ) throw Error("OperatorNotBound", "gentle explosion needs a consistency operator");
  const Chain& c = m.chain;
  if (c.is_finite()) {
    for (std::size_t i = 0; i < c.size(); ++i)
      if (std::min({i, c.neg(i), m.circ->at_index(i)}) != 0) return c.value(i);
    return std::nullopt;
  }
  // Each of x, ¬x, ○x is affine on every open piece of the common refinement, and all
  // are ≥ 0; their minimum vanishes on a whole open interval iff one of them does
  // (x itself never does on (0,1)).
  const auto pts = detail::common_points(m, m.circ->map());
  const Piecewise o = m.circ->map().refined(pts);
  const Piecewise neg = negation_map(c).refined(pts);
  auto g = [&](const Rational& x) { return std::min({x, c.negation(x), (*m.circ)(x)}); };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (g(pts[i]) != 0) return pts[i];
    if (i + 1 == pts.size()) break;
    const auto& sn = neg.segments()[i];
    const auto& so = o.segments()[i];
    const bool zero_neg = sn.from_right == 0 && sn.to_left == 0;
    const bool zero_op = so.from_right == 0 && so.to_left == 0;
    if (!zero_neg && !zero_op) return (pts[i] + pts[i + 1]) / 2;
  }
  return std::nullopt;
}

/// Clauses (i)–(iv) of the LFI definition for degree-preserving consequence on one model.
inline LfiReport check_lfi(const Model& m, const SearchOptions& opt = {}) {
  if (!m.circ) throw Error("OperatorNotBound", "LFI checks need a consistency operator");
  const Formula p = var("p");
  LfiReport rep;
  rep.clauses[0] = detail::non_explosion_clause(m, "i", {p, neg(p)}, opt);
  rep.clauses[1] = detail::non_explosion_clause(m, "ii", {circ(p), p}, opt);
  rep.clauses[2] = detail::non_explosion_clause(m, "iii", {circ(p), neg(p)}, opt);
  ClauseResult iv;
  iv.id = "iv";
  if (auto bad = gentle_explosion_violation(m)) {
    iv.status = Verdict::Fails;
    iv.detail = "x=" + to_string(*bad) + " has x/\\~x/\\O x > 0";
  } else {
    iv.detail = "x/\\~x/\\O x = 0 everywhere";
  }
  rep.clauses[3] = iv;
  return rep;
}

enum class Connective { And, Fuse, Imp, Not, Zero };

inline Connective parse_connective(const std::string& s) {
  if (s == "/\\" || s == "and" || s == "∧" || s == "meet") return Connective::And;
  if (s == "&" || s == "fuse" || s == "⊗") return Connective::Fuse;
  if (s == "->" || s == "imp" || s == "→") return Connective::Imp;
  if (s == "~" || s == "not" || s == "¬") return Connective::Not;
  if (s == "0" || s == "zero") return Connective::Zero;
  throw Error("UnknownConnective", "unknown connective '" + s + "' (use /\\, &, ->, ~ or 0)");
}

inline std::string to_string(Connective c) {
  switch (c) {
    case Connective::And: return "/\\";
    case Connective::Fuse: return "&";
    case Connective::Imp: return "->";
    case Connective::Not: return "~";
    case Connective::Zero: return "0";
  }
  return "?";
}

/// The (Prop*) instance for a connective, e.g. (O p /\ O q) -> O (p & q).
inline Formula propagation_formula(Connective c) {
  const Formula p = var("p"), q = var("q");
  switch (c) {
    case Connective::And: return imp(meet(circ(p), circ(q)), circ(meet(p, q)));
    case Connective::Fuse: return imp(meet(circ(p), circ(q)), circ(fuse(p, q)));
    case Connective::Imp: return imp(meet(circ(p), circ(q)), circ(imp(p, q)));
    case Connective::Not: return imp(circ(p), circ(neg(p)));
    case Connective::Zero: return circ(zero());
  }
  return one();
}

struct PropagationResult {
  Verdict verdict = Verdict::Holds;
  std::optional<std::pair<Rational, Rational>> pair;  // (x, y); unary connectives use x only
  std::optional<Rational> value;                       // formula value at the counterexample
  std::size_t checked = 0;
  bool analytic = false;  // holds by the case analysis for valid operators

  std::string render() const {
    std::string out = "verdict " + to_string(verdict) + "\n";
    if (pair) out += "pair " + to_string(pair->first) + " " + to_string(pair->second) + "\nvalue " + to_string(*value) + "\n";
    out += "checked_count " + std::to_string(checked) + "\n";
    if (analytic) out += "analytic true\n";
    return out;
  }
};

/// Probes (○x ∧ ○y) ≤ ○(x # y). Finite chains: all pairs. Standard chains: first the
/// structural points (landmarks, operator breakpoints, and trisections between them)
/// with y < x, then y = x, then y > x; then every pair of the exact grid.
inline PropagationResult check_propagation(const Model& m, Connective conn, long long grid_denominator = 60) {
  if (!m.circ) throw Error("OperatorNotBound", "propagation needs a consistency operator");
  const Chain& c = m.chain;
  const UnaryOp& o = *m.circ;
  PropagationResult r;
  const bool valid = validate_c(c, o).valid;
  r.analytic = valid && (conn != Connective::Fuse || o.kind() == OpKind::Min || o.kind() == OpKind::Max);
  const Formula f = propagation_formula(conn);
  const bool unary = conn == Connective::Not || conn == Connective::Zero;

  auto probe = [&](const Rational& x, const Rational& y) {
    ++r.checked;
    Rational lhs = unary ? o(x) : std::min(o(x), o(y)), rhs;
    switch (conn) {
      case Connective::And: rhs = o(c.meet(x, y)); break;
      case Connective::Fuse: rhs = o(c.tnorm(x, y)); break;
      case Connective::Imp: rhs = o(c.residuum(x, y)); break;
      case Connective::Not: rhs = o(c.negation(x)); break;
      case Connective::Zero: lhs = 1; rhs = o(0); break;
    }
    if (lhs <= rhs) return false;
    r.verdict = Verdict::Fails;
    r.pair = {x, y};
    r.value = evaluate(m, f, unary ? Assignment{{"p", x}} : Assignment{{"p", x}, {"q", y}});
    return true;
  };

  if (conn == Connective::Zero) {
    probe(0, 0);
    return r;
  }
  if (c.is_finite()) {
    for (const auto& x : c.elements())
      for (const auto& y : unary ? std::vector<Rational>{x} : c.elements())
        if (probe(x, y)) return r;
    return r;
  }

  std::vector<Rational> base = c.landmarks();
  for (const auto& p : o.map().points()) base.push_back(p);
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  std::vector<Rational> pts = base;
  for (std::size_t i = 0; i + 1 < base.size(); ++i) {
    const Rational len = base[i + 1] - base[i];
    pts.push_back(base[i] + len / 3);
    pts.push_back(base[i] + 2 * len / 3);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  if (unary) {
    for (const auto& x : pts)
      if (probe(x, x)) return r;
  } else {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (probe(pts[i], pts[j])) return r;
    for (const auto& x : pts)
      if (probe(x, x)) return r;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (probe(pts[i], pts[j])) return r;
  }
  for (long long a = 0; a <= grid_denominator; ++a) {
    const Rational x = rat(a, grid_denominator);
    if (unary) {
      if (probe(x, x)) return r;
      continue;
    }
    for (long long b = 0; b <= grid_denominator; ++b)
      if (probe(x, rat(b, grid_denominator))) return r;
  }
  r.verdict = r.analytic ? Verdict::Holds : Verdict::Unknown;
  return r;
}

struct DatResult {
  bool holds = true;
  std::optional<Rational> witness;
};

/// (○EM) semantically: ○(x) ≤ x ∨ ¬x for every x.
inline DatResult check_dat_axiom(const Model& m) {
  if (!m.circ) throw Error("OperatorNotBound", "(OEM) needs a consistency operator");
  const Chain& c = m.chain;
  const UnaryOp& o = *m.circ;
  auto slack = [&](const Rational& x) { return c.join(x, c.negation(x)) - o(x); };
  if (c.is_finite()) {
    for (const auto& x : c.elements())
      if (slack(x) < 0) return {false, x};
    return {};
  }
  // slack is affine on each open piece of the common refinement: check points and
  // both one-sided limits, then walk toward a negative limit for an exact witness.
  const auto pts = detail::common_points(m, o.map());
  const Piecewise d = Piecewise::from_function(pts, slack);
  for (std::size_t i = 0; i < d.points().size(); ++i) {
    if (d.values()[i] < 0) return {false, d.points()[i]};
    if (i + 1 == d.points().size()) break;
    const auto& s = d.segments()[i];
    const Rational lo = d.points()[i], hi = d.points()[i + 1];
    if (s.from_right < 0) {
      Rational x = (lo + hi) / 2;
      while (slack(x) >= 0) x = lo + (x - lo) / 2;
      return {false, x};
    }
    if (s.to_left < 0) {
      Rational x = (lo + hi) / 2;
      while (slack(x) >= 0) x = hi - (hi - x) / 2;
      return {false, x};
    }
  }
  return {};
}

struct PdatResult {
  std::optional<std::size_t> k;  // smallest k with no countermodel
  bool certified = false;        // true when that k was verified exhaustively
  std::vector<std::pair<std::size_t, ConsequenceResult>> refuted;  // k' < k with their countermodels
};

/// Smallest k ≤ k_max such that (⋀ ○p_i)^k → φ is valid on the model, p_i the variables of φ.
inline PdatResult pdat_search(const Model& m, const Formula& phi, std::size_t k_max = 8, const SearchOptions& opt = {}) {
  if (!is_classical_language(phi)) throw Error("NotClassical", "PDAT search needs a formula without O, # and D");
  if (!check_dat_axiom(m).holds) throw Error("DatAxiomFails", "the operator violates O x <= x \\/ ~x");
  std::vector<Formula> guards;
  for (const auto& v : variables(phi)) guards.push_back(circ(var(v)));
  const Formula guard = conjunction(guards);
  PdatResult out;
  for (std::size_t k = 1; k <= k_max; ++k) {
    auto r = tautology(m, imp(power(guard, k), phi), opt);
    if (r.verdict == Verdict::Fails) {
      out.refuted.emplace_back(k, std::move(r));
      continue;
    }
    out.k = k;
    out.certified = r.verdict == Verdict::Holds;
    return out;
  }
  return out;
}

/// Classical tautology check on the two-element Boolean algebra.
inline bool classical_taut(const Formula& phi) {
  if (!is_classical_language(phi)) throw Error("NotClassical", "classical tautology check needs a formula without O, # and D");
  const auto vs = variables(phi);
  if (vs.size() > 20) throw Error("TooManyVariables", std::to_string(vs.size()) + " variables exceed the limit of 20");
  static const Chain b2 = Chain::finite_family(Family::Godel, 2, "B2");
  const Model m(b2);
  Program p(phi, {vs.begin(), vs.end()});
  std::vector<std::size_t> a(vs.size()), scratch;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << vs.size()); ++code) {
    for (std::size_t i = 0; i < vs.size(); ++i) a[i] = (code >> (vs.size() - 1 - i)) & 1u;
    if (p.run(m, a, scratch) != 1) return false;
  }
  return true;
}

struct BridgeResult {
  bool agree = true;
  Verdict degree = Verdict::Holds;
  Verdict truth = Verdict::Holds;
};

/// Γ ⊨≤ φ versus ⊨ ⋀Γ → φ on one model.
inline BridgeResult bridge_check(const Model& m, const std::vector<Formula>& premises, const Formula& goal,
                                 const SearchOptions& opt = {}) {
  Formula conj = one();
  for (std::size_t i = 0; i < premises.size(); ++i) conj = i == 0 ? premises[0] : meet(conj, premises[i]);
  BridgeResult b;
  b.degree = consequence(m, premises, goal, Mode::Degree, opt).verdict;
  b.truth = consequence(m, {}, imp(conj, goal), Mode::Truth, opt).verdict;
  b.agree = b.degree == b.truth;
  return b;
}

struct DeductionResult {
  bool holds = false;            // Γ, φ ⊨ ψ
  std::optional<std::size_t> n;  // least n ≤ |A| with Γ ⊨ φⁿ → ψ
  bool agree = false;
};

/// Local deduction on a finite model: Γ ∪ {φ} ⊨ ψ iff Γ ⊨ φⁿ → ψ for some n.
inline DeductionResult local_deduction_check(const Model& m, const std::vector<Formula>& gamma, const Formula& phi,
                                             const Formula& psi, const SearchOptions& opt = {}) {
  if (!m.chain.is_finite()) throw Error("StandardChainUnsupported", "bounded deduction checks need a finite chain");
  DeductionResult d;
  auto with_phi = gamma;
  with_phi.push_back(phi);
  d.holds = consequence(m, with_phi, psi, Mode::Truth, opt).verdict == Verdict::Holds;
  for (std::size_t n = 0; n <= m.chain.size(); ++n)
    if (consequence(m, gamma, imp(power(phi, n), psi), Mode::Truth, opt).verdict == Verdict::Holds) {
      d.n = n;
      break;
    }
  d.agree = d.holds == d.n.has_value();
  return d;
}

}  // namespace pfw
