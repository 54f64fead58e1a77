#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pfw/chain.hpp"
#include "pfw/error.hpp"
#include "pfw/piecewise.hpp"
#include "pfw/rational.hpp"

namespace pfw {

enum class Role { Consistency, Inconsistency };
enum class OpKind { Min, Max, Crisp, Piecewise, Table };

inline std::string to_string(Role r) { return r == Role::Consistency ? "consistency" : "inconsistency"; }

inline std::string to_string(OpKind k) {
  switch (k) {
    case OpKind::Min: return "min";
    case OpKind::Max: return "max";
    case OpKind::Crisp: return "crisp";
    case OpKind::Piecewise: return "piecewise";
    case OpKind::Table: return "table";
  }
  return "?";
}

/// A ○ or • operator attached to a chain. Finite hosts store one grid index per
/// element; standard hosts store a piecewise rational-linear map.
class UnaryOp {
public:
  static UnaryOp from_indices(const Chain& host, std::vector<std::size_t> table, Role role, OpKind kind,
                              std::string name = {}) {
    if (!host.is_finite()) throw Error("StandardChainUnsupported", "index tables need a finite chain");
    if (table.size() != host.size())
      throw Error("SizeMismatch", "operator table has " + std::to_string(table.size()) + " entries, chain has " +
                                      std::to_string(host.size()));
    for (auto v : table)
      if (v >= host.size()) throw Error("OutOfCarrier", "operator value index out of range");
    UnaryOp op(host, role, kind, std::move(name));
    op.table_ = std::move(table);
    return op;
  }

  static UnaryOp from_values(const Chain& host, const std::vector<Rational>& values, Role role,
                             OpKind kind = OpKind::Table, std::string name = {}) {
    if (!host.is_finite()) throw Error("StandardChainUnsupported", "explicit value tables need a finite chain");
    std::vector<std::size_t> idx;
    for (const auto& v : values) idx.push_back(host.index_of(v));
    return from_indices(host, std::move(idx), role, kind, std::move(name));
  }

  static UnaryOp from_piecewise(const Chain& host, Piecewise map, Role role, OpKind kind, std::string name = {}) {
    if (host.is_finite()) {
      std::vector<std::size_t> idx;
      for (const auto& x : host.elements()) idx.push_back(host.index_of(map(x)));
      return from_indices(host, std::move(idx), role, kind, std::move(name));
    }
    UnaryOp op(host, role, kind, std::move(name));
    op.map_ = std::move(map);
    return op;
  }

  Rational operator()(const Rational& x) const {
    if (host_.is_finite()) return host_.value(table_[host_.index_of(x)]);
    return map_(x);
  }

  std::size_t at_index(std::size_t i) const { return table_[i]; }
  const std::vector<std::size_t>& table() const { return table_; }
  const Piecewise& map() const { return map_; }
  const Chain& host() const { return host_; }
  Role role() const { return role_; }
  OpKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  void rename(std::string n) { name_ = std::move(n); }

  /// ○(x) ∈ {0,1} everywhere.
  bool is_crisp() const {
    if (host_.is_finite())
      return std::all_of(table_.begin(), table_.end(), [&](std::size_t v) { return v == 0 || v == host_.top(); });
    return map_.takes_only({Rational(0), Rational(1)});
  }

  std::string describe() const {
    std::string out = (name_.empty() ? to_string(kind_) : name_) + " " + (role_ == Role::Consistency ? "O" : "#") +
                      " on " + host_.label() + ": ";
    if (host_.is_finite()) {
      for (std::size_t i = 0; i < table_.size(); ++i)
        out += (i ? " " : "") + to_string(host_.value(i)) + "->" + to_string(host_.value(table_[i]));
      return out;
    }
    return out + map_.describe();
  }

  friend bool operator==(const UnaryOp& a, const UnaryOp& b) {
    if (!(a.host_ == b.host_) || a.role_ != b.role_) return false;
    return a.host_.is_finite() ? a.table_ == b.table_ : a.map_ == b.map_;
  }

private:
  UnaryOp(const Chain& host, Role role, OpKind kind, std::string name)
      : host_(host), role_(role), kind_(kind), name_(std::move(name)) {}

  Chain host_;
  Role role_;
  OpKind kind_;
  std::string name_;
  std::vector<std::size_t> table_;
  Piecewise map_;
};

// Construction -----------------------------------------------------------------

/// ¬ of a standard chain as a piecewise map.
inline Piecewise negation_map(const Chain& c) {
  return Piecewise::from_function(c.landmarks(), [&](const Rational& x) { return c.negation(x); });
}

/// Pointwise minimal operator: ○(x) = 1 iff x ∈ {0,1}.
inline UnaryOp min_op(const Chain& c) {
  if (c.is_finite()) {
    std::vector<std::size_t> t(c.size(), 0);
    t.front() = t.back() = c.top();
    return UnaryOp::from_indices(c, std::move(t), Role::Consistency, OpKind::Min, "min");
  }
  return UnaryOp::from_piecewise(c, Piecewise({0, 1}, {1, 1}, {{0, 0}}), Role::Consistency, OpKind::Min, "min");
}

/// Pointwise maximal operator: ○(x) = 1 iff x ∈ {0,1} ∪ N(A).
inline UnaryOp max_op(const Chain& c) {
  if (c.is_finite()) {
    std::vector<std::size_t> t(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (i == 0 || i == c.top() || c.neg(i) == 0) t[i] = c.top();
    return UnaryOp::from_indices(c, std::move(t), Role::Consistency, OpKind::Max, "max");
  }
  const NSet n = c.n_set();
  switch (n.shape) {
    case NSet::Shape::ClosedFrom:
      return UnaryOp::from_piecewise(c, Piecewise({0, n.bound, 1}, {1, 1, 1}, {{0, 0}, {1, 1}}), Role::Consistency,
                                     OpKind::Max, "max");
    case NSet::Shape::OpenFrom:
      if (n.bound == 0) return UnaryOp::from_piecewise(c, Piecewise::constant(1), Role::Consistency, OpKind::Max, "max");
      return UnaryOp::from_piecewise(c, Piecewise({0, n.bound, 1}, {1, 0, 1}, {{0, 0}, {1, 1}}), Role::Consistency,
                                     OpKind::Max, "max");
    default: break;
  }
  UnaryOp op = min_op(c);
  return UnaryOp::from_piecewise(c, op.map(), Role::Consistency, OpKind::Max, "max");
}

/// ○(x) = 1 for x = 0 and for x ≥ t (x > t when open), 0 elsewhere.
inline UnaryOp crisp_op(const Chain& c, const Rational& t, bool closed = true) {
  const NSet n = c.n_set();
  if (t < 0 || t > 1) throw Error("ThresholdOutsideN", to_string(t) + " is outside [0,1]");
  if (c.is_finite()) {
    std::vector<std::size_t> tab(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Rational& x = c.value(i);
      if (i == 0 || x == 1 || (closed ? x >= t : x > t)) {
        if (i != 0 && x != 1 && !n.contains(x))
          throw Error("ThresholdOutsideN", to_string(x) + " would get O = 1 but is not in N(A) = " + n.describe());
        tab[i] = c.top();
      }
    }
    return UnaryOp::from_indices(c, std::move(tab), Role::Consistency, OpKind::Crisp,
                                 std::string("crisp:") + to_string(t) + (closed ? "" : ":open"));
  }
  // On [0,1] the 1-region [t,1) or (t,1) must sit inside N(A).
  bool inside = t == 1;
  if (!inside) {
    inside = n.shape != NSet::Shape::Empty && t >= n.bound;
  }
  if (!inside) throw Error("ThresholdOutsideN", to_string(t) + " is not a threshold inside N(A) = " + n.describe());
  Piecewise map = t == 1 ? Piecewise({0, 1}, {1, 1}, {{0, 0}})
                  : t == 0 ? Piecewise::constant(1)
                           : Piecewise({0, t, 1}, {1, Rational(closed ? 1 : 0), 1}, {{0, 0}, {1, 1}});
  return UnaryOp::from_piecewise(c, std::move(map), Role::Consistency, OpKind::Crisp,
                                 std::string("crisp:") + to_string(t) + (closed ? "" : ":open"));
}

enum class Interpolation { Step, Linear };

/// ○ = 0 on (0,1)∖N(A), 1 at {0,1}, and on N(A) interpolated through `breakpoints`
/// (0 below the first breakpoint, the last value after the last one).
inline UnaryOp piecewise_op(const Chain& c, std::vector<std::pair<Rational, Rational>> breakpoints,
                            Interpolation interp = Interpolation::Linear) {
  const NSet n = c.n_set();
  if (breakpoints.empty()) {
    UnaryOp op = min_op(c);
    return c.is_finite() ? UnaryOp::from_indices(c, op.table(), Role::Consistency, OpKind::Piecewise, "piecewise")
                         : UnaryOp::from_piecewise(c, op.map(), Role::Consistency, OpKind::Piecewise, "piecewise");
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const auto& [x, v] = breakpoints[i];
    if (x != 1 && !n.contains(x))
      throw Error("BreakpointOutsideN", to_string(x) + " is not in N(A) ∪ {1} with N(A) = " + n.describe());
    if (v < 0 || v > 1) throw Error("InvalidValue", "operator value " + to_string(v) + " outside [0,1]");
    if (x == 1 && v != 1) throw Error("InvalidValue", "the value at 1 must be 1");
    if (i > 0 && breakpoints[i - 1].first == x) throw Error("NotNondecreasing", "duplicate breakpoint " + to_string(x));
    if (i > 0 && breakpoints[i - 1].second > v)
      throw Error("NotNondecreasing", "value drops from " + to_string(breakpoints[i - 1].second) + " to " +
                                          to_string(v) + " at " + to_string(x));
  }
  auto inner = [&, interp](const Rational& x) -> Rational {
    if (x == 0 || x == 1) return 1;
    if (!n.contains(x) || x < breakpoints.front().first) return 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
      const auto& [x0, v0] = breakpoints[i];
      const auto& [x1, v1] = breakpoints[i + 1];
      if (x >= x0 && x < x1)
        return interp == Interpolation::Step ? v0 : v0 + (v1 - v0) * (x - x0) / (x1 - x0);
    }
    return breakpoints.back().second;
  };
  std::vector<Rational> pts = c.is_finite() ? std::vector<Rational>{} : c.landmarks();
  for (const auto& bp : breakpoints) pts.push_back(bp.first);
  if (!c.is_finite() && n.shape != NSet::Shape::Empty) pts.push_back(n.bound);
  Piecewise map = c.is_finite() ? Piecewise() : Piecewise::from_function(pts, inner);
  if (c.is_finite()) {
    std::vector<std::size_t> idx;
    for (const auto& x : c.elements()) idx.push_back(c.index_of(inner(x)));
    return UnaryOp::from_indices(c, std::move(idx), Role::Consistency, OpKind::Piecewise, "piecewise");
  }
  return UnaryOp::from_piecewise(c, std::move(map), Role::Consistency, OpKind::Piecewise, "piecewise");
}

/// ○φ := Δ(φ ∨ ¬φ).
inline UnaryOp op_from_delta(const Chain& c) {
  auto f = [&](const Rational& x) { return c.delta(c.join(x, c.negation(x))); };
  if (c.is_finite()) {
    std::vector<Rational> vals;
    for (const auto& x : c.elements()) vals.push_back(f(x));
    return UnaryOp::from_values(c, vals, Role::Consistency, OpKind::Table, "from-delta");
  }
  return UnaryOp::from_piecewise(c, Piecewise::from_function(c.landmarks(), f), Role::Consistency, OpKind::Table,
                                 "from-delta");
}

/// Δx := x ∧ ○x.
inline Rational delta_from_op(const Chain& c, const UnaryOp& op, const Rational& x) {
  if (!(op.host() == c)) throw Error("HostMismatch", "operator is attached to " + op.host().label());
  return c.meet(op(x), x);
}

/// •(x) := ¬○(x), and symmetrically ○(x) := ¬•(x).
inline UnaryOp dual(const UnaryOp& op) {
  const Chain& c = op.host();
  const Role role = op.role() == Role::Consistency ? Role::Inconsistency : Role::Consistency;
  const std::string name = "dual(" + (op.name().empty() ? to_string(op.kind()) : op.name()) + ")";
  if (c.is_finite()) {
    std::vector<std::size_t> t;
    for (auto v : op.table()) t.push_back(c.neg(v));
    return UnaryOp::from_indices(c, std::move(t), role, op.kind(), name);
  }
  return UnaryOp::from_piecewise(c, op.map().then(negation_map(c)), role, op.kind(), name);
}

// Validation -------------------------------------------------------------------

struct ValidationReport {
  bool valid = true;
  std::string clause;             // e.g. "c1", "o3", "b2"
  std::vector<Rational> witness;  // elements exhibiting the violation
  std::size_t checked = 0;
  bool certified = true;  // false only if a pass rests on sampling alone

  std::string render() const {
    std::string out = "verdict " + std::string(valid ? "valid" : "invalid") + "\n";
    if (!valid) {
      out += "clause " + clause + "\nwitness";
      for (const auto& w : witness) out += " " + to_string(w);
      out += "\n";
    }
    return out;
  }
};

namespace detail {

inline void require_host(const Chain& c, const UnaryOp& op) {
  if (!(op.host() == c)) throw Error("HostMismatch", "operator is attached to " + op.host().label() + ", not " + c.label());
}

/// Shared core of (c1)–(c3) and (•1)–(•3): on chains these say
/// - off N(A) ∪ {0,1} the operator is `forced` (0 for ○, 1 for •),
/// - at 0 and 1 it is `ends` (1 for ○, 0 for •),
/// - on N(A) ∪ {1} it is monotone (nondecreasing for ○, nonincreasing for •).
inline ValidationReport validate_chain_form(const Chain& c, const UnaryOp& op, const std::string& prefix) {
  const bool cons = op.role() == Role::Consistency;
  const Rational forced = cons ? 0 : 1, ends = cons ? 1 : 0;
  ValidationReport r;
  auto fail = [&](int clause, std::vector<Rational> w) {
    r.valid = false;
    r.clause = prefix + std::to_string(clause);
    r.witness = std::move(w);
    return r;
  };
  // `ordered(a, b)` for a ≤ b in N(A) ∪ {1}.
  auto ordered = [&](const Rational& a, const Rational& b) { return cons ? a <= b : a >= b; };

  if (c.is_finite()) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      ++r.checked;
      if (std::min(i, c.neg(i)) != 0 && c.value(op.at_index(i)) != forced) return fail(1, {c.value(i)});
    }
    r.checked += 2;
    if (c.value(op.at_index(0)) != ends) return fail(2, {Rational(0)});
    if (c.value(op.at_index(c.top())) != ends) return fail(2, {Rational(1)});
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c.neg(i) != 0) continue;
      for (std::size_t j = i; j < c.size(); ++j) {
        ++r.checked;
        if (!ordered(c.value(op.at_index(i)), c.value(op.at_index(j)))) return fail(3, {c.value(i), c.value(j)});
      }
    }
    return r;
  }

  // Standard chain: refine so that N(A)'s bound is a breakpoint; then every open
  // segment lies entirely in N(A) or entirely outside it, and the checks below are exact.
  const NSet n = c.n_set();
  std::vector<Rational> extra = c.landmarks();
  if (n.shape != NSet::Shape::Empty) extra.push_back(n.bound);
  const Piecewise m = op.map().refined(extra);
  const auto& pts = m.points();
  auto in_n_open = [&](std::size_t seg) { return n.contains((pts[seg] + pts[seg + 1]) / 2); };

  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    ++r.checked;
    const auto& s = m.segments()[i];
    if (!in_n_open(i) && (s.from_right != forced || s.to_left != forced))
      return fail(1, {(pts[i] + pts[i + 1]) / 2});
  }
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    ++r.checked;
    if (!n.contains(pts[i]) && m.values()[i] != forced) return fail(1, {pts[i]});
  }
  r.checked += 2;
  if (m(0) != ends) return fail(2, {Rational(0)});
  if (m(1) != ends) return fail(2, {Rational(1)});

  // Monotonicity on N(A) ∪ {1}: within segments, and across each breakpoint.
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!in_n_open(i)) continue;
    ++r.checked;
    const auto& s = m.segments()[i];
    const Rational len = pts[i + 1] - pts[i];
    if (!ordered(s.from_right, s.to_left)) return fail(3, {pts[i] + len / 3, pts[i] + 2 * len / 3});
    // Left endpoint (if in N) against the segment.
    if (n.contains(pts[i]) && !ordered(m.values()[i], s.from_right)) {
      Rational y = pts[i] + len / 2;
      while (ordered(m.values()[i], m(y))) y = pts[i] + (y - pts[i]) / 2;
      return fail(3, {pts[i], y});
    }
    // Segment against its right endpoint (always in N(A) ∪ {1}).
    if (!ordered(s.to_left, m.values()[i + 1])) {
      Rational x = pts[i + 1] - len / 2;
      while (ordered(m(x), m.values()[i + 1])) x = pts[i + 1] - (pts[i + 1] - x) / 2;
      return fail(3, {x, pts[i + 1]});
    }
  }
  // Exact grid sweep as an independent second look.
  const long long grid = 1000;
  std::optional<Rational> prev;
  for (long long k = 0; k <= grid; ++k) {
    const Rational x = rat(k, grid);
    ++r.checked;
    const Rational v = m(x);
    const bool in_dom = n.contains(x) || x == 1;
    if (x != 0 && !in_dom && v != forced) return fail(1, {x});
    if (in_dom) {
      if (prev && !ordered(m(*prev), v)) return fail(3, {*prev, x});
      prev = x;
    }
  }
  return r;
}

}  // namespace detail

/// (c1)–(c3).
inline ValidationReport validate_c(const Chain& c, const UnaryOp& op) {
  detail::require_host(c, op);
  if (op.role() != Role::Consistency) throw Error("RoleMismatch", "validate_c expects a consistency operator");
  return detail::validate_chain_form(c, op, "c");
}

/// (•1)–(•3).
inline ValidationReport validate_bullet(const Chain& c, const UnaryOp& op) {
  detail::require_host(c, op);
  if (op.role() != Role::Inconsistency) throw Error("RoleMismatch", "validate_bullet expects an inconsistency operator");
  return detail::validate_chain_form(c, op, "b");
}

/// (○1)–(○3) as quasi-equations, quantified over all x, y, z of a finite chain.
inline ValidationReport validate_algebraic(const Chain& c, const UnaryOp& op) {
  detail::require_host(c, op);
  if (!c.is_finite())
    throw Error("StandardChainUnsupported", "quasi-equations are checked on finite chains; use validate_c");
  ValidationReport r;
  const std::size_t top = c.top();
  auto o = [&](std::size_t i) { return op.at_index(i); };
  auto fail = [&](std::string clause, std::vector<std::size_t> w) {
    r.valid = false;
    r.clause = std::move(clause);
    for (auto i : w) r.witness.push_back(c.value(i));
    return r;
  };
  for (std::size_t x = 0; x < c.size(); ++x) {
    ++r.checked;
    if (std::min({x, c.neg(x), o(x)}) != 0) return fail("o1", {x});
  }
  r.checked += 2;
  if (o(0) != top) return fail("o2", {0});
  if (o(top) != top) return fail("o2", {top});
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y) {
      const std::size_t lhs = std::min(c.neg(c.neg(x)), c.imp(x, y));
      const std::size_t rhs = c.imp(o(x), o(y));
      for (std::size_t z = 0; z < c.size(); ++z) {
        ++r.checked;
        if (std::max(lhs, z) == top && std::max(rhs, z) != top) return fail("o3", {x, y, z});
      }
    }
  return r;
}

// Enumeration --------------------------------------------------------------------

/// Every valid ○ on a finite chain (n ≤ 7), in lexicographic order of value tables.
inline std::vector<UnaryOp> enumerate_ops(const Chain& c) {
  if (!c.is_finite()) throw Error("StandardChainUnsupported", "enumeration needs a finite chain");
  if (c.size() > 7) throw Error("TooLarge", "enumeration is capped at 7 elements");
  // ○ is forced off N(A); on N(A) (an up-set below 1) it is any nondecreasing map.
  std::vector<std::size_t> base(c.size(), 0), free;
  base.front() = base.back() = c.top();
  for (std::size_t i = 1; i + 1 < c.size(); ++i)
    if (c.neg(i) == 0) free.push_back(i);
  std::vector<UnaryOp> out;
  std::vector<std::size_t> vals(free.size(), 0);
  while (true) {
    auto t = base;
    for (std::size_t k = 0; k < free.size(); ++k) t[free[k]] = vals[k];
    out.push_back(UnaryOp::from_indices(c, std::move(t), Role::Consistency, OpKind::Table));
    // Next nondecreasing sequence in lexicographic order.
    std::size_t k = free.size();
    while (k > 0 && vals[k - 1] == c.top()) --k;
    if (k == 0) break;
    ++vals[k - 1];
    for (std::size_t j = k; j < free.size(); ++j) vals[j] = vals[k - 1];
  }
  return out;
}

/// The operator chosen by `--op auto`: the unique valid ○ when there is exactly one.
inline UnaryOp unique_op(const Chain& c) {
  if (c.n_set().empty()) {
    UnaryOp op = min_op(c);
    op.rename("unique");
    return op;
  }
  if (c.is_finite() && c.size() <= 7) {
    auto all = enumerate_ops(c);
    if (all.size() == 1) return all.front();
    throw Error("AmbiguousOperator", std::to_string(all.size()) + " consistency operators exist on " + c.label());
  }
  throw Error("AmbiguousOperator", "N(A) = " + c.n_set().describe() + " admits many consistency operators");
}

}  // namespace pfw
