#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pfw/error.hpp"

namespace pfw {

enum class Kind {
  Var,
  Zero,    // 0̄
  One,     // 1̄ (defined: ¬0̄)
  Not,     // ¬ (defined: φ→0̄)
  Circ,    // ○ consistency
  Bullet,  // • inconsistency
  Delta,   // Δ projection
  And,     // ∧
  Fuse,    // & (strong conjunction)
  Or,      // ∨ (defined)
  Imp,     // →
  Iff,     // ↔ (defined)
};

inline bool is_unary(Kind k) {
  return k == Kind::Not || k == Kind::Circ || k == Kind::Bullet || k == Kind::Delta;
}
inline bool is_binary(Kind k) {
  return k == Kind::And || k == Kind::Fuse || k == Kind::Or || k == Kind::Imp || k == Kind::Iff;
}

/// Immutable propositional formula. Copies share structure; equality is structural.
class Formula {
public:
  struct Node {
    Kind kind;
    std::string name;  // Var only
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t hash = 0;
    std::size_t size = 1;
  };

  Formula() : Formula(make(Kind::Zero, {}, nullptr, nullptr)) {}

  static Formula var(std::string name) { return Formula(make(Kind::Var, std::move(name), nullptr, nullptr)); }
  static Formula zero() { return Formula(make(Kind::Zero, {}, nullptr, nullptr)); }
  static Formula one() { return Formula(make(Kind::One, {}, nullptr, nullptr)); }
  static Formula unary(Kind k, const Formula& f) { return Formula(make(k, {}, f.node_, nullptr)); }
  static Formula binary(Kind k, const Formula& a, const Formula& b) {
    return Formula(make(k, {}, a.node_, b.node_));
  }

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  Formula child() const { return Formula(node_->lhs); }
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }
  std::size_t hash() const { return node_->hash; }
  /// Number of nodes in the tree.
  std::size_t size() const { return node_->size; }

  friend bool operator==(const Formula& a, const Formula& b) { return same(a.node_.get(), b.node_.get()); }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  /// Total order, used for deterministic containers.
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a.node_.get(), b.node_.get()) < 0; }

private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<const Node> make(Kind k, std::string name, std::shared_ptr<const Node> l,
                                          std::shared_ptr<const Node> r) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->name = std::move(name);
    std::size_t h = std::hash<int>{}(static_cast<int>(k)) * 0x9e3779b97f4a7c15ULL;
    if (k == Kind::Var) h ^= std::hash<std::string>{}(n->name) + 0x7f4a7c15;
    if (l) {
      h = (h ^ l->hash) * 0x100000001b3ULL;
      n->size += l->size;
    }
    if (r) {
      h = (h ^ (r->hash + 0x632be59bd9b4e019ULL)) * 0x100000001b3ULL;
      n->size += r->size;
    }
    n->hash = h;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  static bool same(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->kind != b->kind || a->size != b->size) return false;
    if (a->kind == Kind::Var) return a->name == b->name;
    return same(a->lhs.get(), b->lhs.get()) && same(a->rhs.get(), b->rhs.get());
  }

  static int compare(const Node* a, const Node* b) {
    if (a == b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (a->kind == Kind::Var) return a->name.compare(b->name);
    if (int c = compare(a->lhs.get(), b->lhs.get())) return c;
    return compare(a->rhs.get(), b->rhs.get());
  }

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Builders.
inline Formula var(std::string name) { return Formula::var(std::move(name)); }
inline Formula zero() { return Formula::zero(); }
inline Formula one() { return Formula::one(); }
inline Formula neg(const Formula& f) { return Formula::unary(Kind::Not, f); }
inline Formula circ(const Formula& f) { return Formula::unary(Kind::Circ, f); }
inline Formula bullet(const Formula& f) { return Formula::unary(Kind::Bullet, f); }
inline Formula delta(const Formula& f) { return Formula::unary(Kind::Delta, f); }
inline Formula meet(const Formula& a, const Formula& b) { return Formula::binary(Kind::And, a, b); }
inline Formula fuse(const Formula& a, const Formula& b) { return Formula::binary(Kind::Fuse, a, b); }
inline Formula join(const Formula& a, const Formula& b) { return Formula::binary(Kind::Or, a, b); }
inline Formula imp(const Formula& a, const Formula& b) { return Formula::binary(Kind::Imp, a, b); }
inline Formula iff(const Formula& a, const Formula& b) { return Formula::binary(Kind::Iff, a, b); }

/// φⁿ: 1̄ for n = 0, otherwise the left-nested &-chain of n copies.
inline Formula power(const Formula& f, std::size_t n) {
  if (n == 0) return one();
  Formula out = f;
  for (std::size_t i = 1; i < n; ++i) out = fuse(out, f);
  return out;
}

/// ⋀ of a list, left-nested; the empty conjunction is 1̄.
inline Formula conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return one();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = meet(out, fs[i]);
  return out;
}

inline void collect_vars(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Kind::Var) {
    out.insert(f.name());
  } else if (is_unary(f.kind())) {
    collect_vars(f.child(), out);
  } else if (is_binary(f.kind())) {
    collect_vars(f.lhs(), out);
    collect_vars(f.rhs(), out);
  }
}

inline std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  collect_vars(f, out);
  return out;
}

inline bool contains_kind(const Formula& f, Kind k) {
  if (f.kind() == k) return true;
  if (is_unary(f.kind())) return contains_kind(f.child(), k);
  if (is_binary(f.kind())) return contains_kind(f.lhs(), k) || contains_kind(f.rhs(), k);
  return false;
}

/// Formula over {0̄, 1̄, ¬, ∧, &, ∨, →, ↔} only, i.e. without ○, • or Δ.
inline bool is_classical_language(const Formula& f) {
  return !contains_kind(f, Kind::Circ) && !contains_kind(f, Kind::Bullet) && !contains_kind(f, Kind::Delta);
}

/// Expands the defined connectives ¬, 1̄, ∨, ↔ into {0̄, ∧, &, →}.
inline Formula normalize(const Formula& f) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Zero:
      return f;
    case Kind::One:
      return imp(zero(), zero());
    case Kind::Not:
      return imp(normalize(f.child()), zero());
    case Kind::Circ:
    case Kind::Bullet:
    case Kind::Delta:
      return Formula::unary(f.kind(), normalize(f.child()));
    case Kind::And:
    case Kind::Fuse:
    case Kind::Imp:
      return Formula::binary(f.kind(), normalize(f.lhs()), normalize(f.rhs()));
    case Kind::Or: {
      const Formula a = normalize(f.lhs());
      const Formula b = normalize(f.rhs());
      return meet(imp(imp(a, b), b), imp(imp(b, a), a));
    }
    case Kind::Iff: {
      const Formula a = normalize(f.lhs());
      const Formula b = normalize(f.rhs());
      return meet(imp(a, b), imp(b, a));
    }
  }
  return f;
}

using Binding = std::map<std::string, Formula>;

inline Formula substitute(const Formula& f, const Binding& b) {
  switch (f.kind()) {
    case Kind::Var: {
      auto it = b.find(f.name());
      return it == b.end() ? f : it->second;
    }
    case Kind::Zero:
    case Kind::One:
      return f;
    default:
      break;
  }
  if (is_unary(f.kind())) return Formula::unary(f.kind(), substitute(f.child(), b));
  return Formula::binary(f.kind(), substitute(f.lhs(), b), substitute(f.rhs(), b));
}

/// A formula read as a pattern: Var nodes named in `metavars` match any subformula.
struct Schema {
  Formula pattern;
  std::set<std::string> metavars;
};

namespace detail {

inline bool match_into(const Formula& s, const Formula& f, const std::set<std::string>& metavars, Binding& b) {
  if (s.kind() == Kind::Var && metavars.count(s.name())) {
    auto [it, inserted] = b.emplace(s.name(), f);
    return inserted || it->second == f;
  }
  if (s.kind() != f.kind()) return false;
  switch (s.kind()) {
    case Kind::Var:
      return s.name() == f.name();
    case Kind::Zero:
    case Kind::One:
      return true;
    default:
      break;
  }
  if (is_unary(s.kind())) return match_into(s.child(), f.child(), metavars, b);
  return match_into(s.lhs(), f.lhs(), metavars, b) && match_into(s.rhs(), f.rhs(), metavars, b);
}

}  // namespace detail

/// Syntactic first-order matching. On success substitute(s.pattern, binding) == f.
inline std::optional<Binding> match_schema(const Schema& s, const Formula& f, Binding seed = {}) {
  if (!detail::match_into(s.pattern, f, s.metavars, seed)) return std::nullopt;
  return seed;
}

/// Matching that treats defined connectives as their definitions: both sides are
/// normalized first. Bindings are normalized formulas.
inline std::optional<Binding> match_modulo_definitions(const Schema& s, const Formula& f, Binding seed = {}) {
  for (auto& [name, value] : seed) value = normalize(value);
  return match_schema(Schema{normalize(s.pattern), s.metavars}, normalize(f), std::move(seed));
}

inline bool equal_modulo_definitions(const Formula& a, const Formula& b) {
  return a == b || normalize(a) == normalize(b);
}

// Rendering. Precedence, tightest first: unary; &; /\; \/; -> and <->.
namespace detail {

inline int level(Kind k) {
  switch (k) {
    case Kind::Fuse: return 1;
    case Kind::And: return 2;
    case Kind::Or: return 3;
    case Kind::Imp:
    case Kind::Iff: return 4;
    default: return 0;
  }
}

struct Symbols {
  const char* zero;
  const char* one;
  const char* neg;
  const char* circ;
  const char* bullet;
  const char* delta;
  const char* meet;
  const char* fuse;
  const char* join;
  const char* imp;
  const char* iff;
};

inline constexpr Symbols kAscii{"0", "1", "~", "O ", "# ", "D ", " /\\ ", " & ", " \\/ ", " -> ", " <-> "};
inline constexpr Symbols kUnicode{"0̄", "1̄", "¬", "○", "•", "Δ", " ∧ ", " & ", " ∨ ", " → ", " ↔ "};

inline void render_into(const Formula& f, const Symbols& sym, std::string& out);

inline void render_operand(const Formula& f, bool paren, const Symbols& sym, std::string& out) {
  if (paren) out += '(';
  render_into(f, sym, out);
  if (paren) out += ')';
}

inline void render_into(const Formula& f, const Symbols& sym, std::string& out) {
  switch (f.kind()) {
    case Kind::Var: out += f.name(); return;
    case Kind::Zero: out += sym.zero; return;
    case Kind::One: out += sym.one; return;
    case Kind::Not:
    case Kind::Circ:
    case Kind::Bullet:
    case Kind::Delta: {
      out += f.kind() == Kind::Not ? sym.neg : f.kind() == Kind::Circ ? sym.circ
                                             : f.kind() == Kind::Bullet ? sym.bullet
                                                                         : sym.delta;
      render_operand(f.child(), is_binary(f.child().kind()), sym, out);
      return;
    }
    default: break;
  }
  const int lv = level(f.kind());
  const Formula a = f.lhs(), b = f.rhs();
  const char* op = f.kind() == Kind::Fuse  ? sym.fuse
                   : f.kind() == Kind::And ? sym.meet
                   : f.kind() == Kind::Or  ? sym.join
                   : f.kind() == Kind::Imp ? sym.imp
                                           : sym.iff;
  if (lv == 4) {
    // Right-associative; the two arrows never share an unparenthesized chain.
    render_operand(a, level(a.kind()) >= 4, sym, out);
    out += op;
    render_operand(b, level(b.kind()) > 4 || (level(b.kind()) == 4 && b.kind() != f.kind()), sym, out);
  } else {
    // Left-associative.
    render_operand(a, level(a.kind()) > lv, sym, out);
    out += op;
    render_operand(b, level(b.kind()) >= lv, sym, out);
  }
}

}  // namespace detail

/// Canonical ASCII form; parse(render(f)) == f.
inline std::string render(const Formula& f) {
  std::string out;
  detail::render_into(f, detail::kAscii, out);
  return out;
}

inline std::string render_unicode(const Formula& f) {
  std::string out;
  detail::render_into(f, detail::kUnicode, out);
  return out;
}

}  // namespace pfw
