#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pfw/error.hpp"
#include "pfw/rational.hpp"

namespace pfw {

enum class Family { Lukasiewicz, Godel, Product };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::Lukasiewicz: return "lukasiewicz";
    case Family::Godel: return "godel";
    case Family::Product: return "product";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "lukasiewicz" || s == "L" || s == "Ł") return Family::Lukasiewicz;
  if (s == "godel" || s == "G") return Family::Godel;
  if (s == "product" || s == "P" || s == "Π") return Family::Product;
  throw Error("UnknownFamily", "unknown t-norm family '" + s + "'");
}

/// One summand [lo, hi] of a standard ordinal sum.
struct Component {
  Family family;
  Rational lo;
  Rational hi;

  friend bool operator==(const Component&, const Component&) = default;
};

/// The set N(A) = {x ∈ A∖{1} : ¬x = 0}.
struct NSet {
  enum class Shape { Empty, ClosedFrom, OpenFrom, Explicit };
  Shape shape = Shape::Empty;
  Rational bound = 0;              // a in [a,1) or (a,1)
  std::vector<Rational> elements;  // Explicit only, ascending

  bool contains(const Rational& x) const {
    switch (shape) {
      case Shape::Empty: return false;
      case Shape::ClosedFrom: return x >= bound && x < 1;
      case Shape::OpenFrom: return x > bound && x < 1;
      case Shape::Explicit: return std::binary_search(elements.begin(), elements.end(), x);
    }
    return false;
  }
  bool empty() const { return shape == Shape::Empty || (shape == Shape::Explicit && elements.empty()); }

  std::string describe() const {
    switch (shape) {
      case Shape::Empty: return "{}";
      case Shape::ClosedFrom: return "[" + to_string(bound) + ",1)";
      case Shape::OpenFrom: return "(" + to_string(bound) + ",1)";
      case Shape::Explicit: {
        std::string s = "{";
        for (std::size_t i = 0; i < elements.size(); ++i) s += (i ? "," : "") + to_string(elements[i]);
        return s + "}";
      }
    }
    return "?";
  }
};

struct SmtlVerdict {
  bool smtl;
  std::optional<Rational> witness;  // some x with x ∧ ¬x ≠ 0
};

/// A linearly ordered MTL-algebra on a subset of [0,1] ∩ ℚ.
///
/// Finite chains live on the grid {i/(n-1)} and keep index tables for ⊗ and →.
/// Standard chains are ordinal sums of Ł, G and Π components with rational
/// endpoints; their operations are evaluated exactly.
class Chain {
public:
  using Index = std::uint16_t;

  // Construction ------------------------------------------------------------

  static Chain finite_family(Family family, std::size_t n, std::string name = {}) {
    if (n < 2) throw Error("SizeMismatch", "a chain needs at least 2 elements");
    if (family == Family::Product)
      throw Error("UnsupportedFamily", "finite product chains do not exist beyond B2");
    std::vector<Index> mul(n * n);
    const std::size_t top = n - 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        mul[i * n + j] = static_cast<Index>(family == Family::Godel ? std::min(i, j) : (i + j > top ? i + j - top : 0));
    return from_table(n, std::move(mul), std::move(name), to_string(family) + " n=" + std::to_string(n));
  }

  /// Explicit n×n table of grid values; must be a commutative, associative, monotone monoid with unit 1.
  static Chain finite_table(const std::vector<std::vector<Rational>>& table, std::string name = {}) {
    const std::size_t n = table.size();
    if (n < 2) throw Error("SizeMismatch", "a chain needs at least 2 elements");
    std::vector<Index> mul(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (table[i].size() != n)
        throw Error("SizeMismatch", "row " + std::to_string(i) + " has " + std::to_string(table[i].size()) +
                                        " entries, expected " + std::to_string(n));
      for (std::size_t j = 0; j < n; ++j) mul[i * n + j] = grid_index(table[i][j], n);
    }
    return from_table(n, std::move(mul), std::move(name), "table n=" + std::to_string(n));
  }

  /// Weak nilpotent minimum: x ⊗ y = 0 if y ≤ n(x), else min(x, y).
  static Chain finite_wnm(const std::vector<Rational>& negation, std::string name = {}) {
    const std::size_t n = negation.size();
    if (n < 2) throw Error("SizeMismatch", "a chain needs at least 2 elements");
    std::vector<Index> neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = grid_index(negation[i], n);
    if (neg[0] != n - 1 || neg[n - 1] != 0)
      throw Error("NegationNotDecreasing", "a WNM negation needs n(0) = 1 and n(1) = 0");
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (neg[i + 1] > neg[i])
        throw Error("NegationNotDecreasing", "n(" + to_string(grid(i, n)) + ") < n(" + to_string(grid(i + 1, n)) + ")");
    std::vector<Index> mul(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mul[i * n + j] = static_cast<Index>(j <= neg[i] ? 0 : std::min(i, j));
    return from_table(n, std::move(mul), std::move(name), "wnm n=" + std::to_string(n));
  }

  /// Ordinal sum of finite Ł/G chains glued at shared idempotent endpoints.
  static Chain finite_ordinal_sum(const std::vector<std::pair<Family, std::size_t>>& parts, std::string name = {}) {
    if (parts.empty()) throw Error("SizeMismatch", "an ordinal sum needs at least one component");
    std::vector<std::pair<std::size_t, std::size_t>> spans;  // [first, last] index of each component
    std::size_t n = 1;
    for (const auto& [family, size] : parts) {
      if (size < 2) throw Error("SizeMismatch", "ordinal-sum components need at least 2 elements");
      spans.emplace_back(n - 1, n - 1 + size - 1);
      n += size - 1;
    }
    std::vector<Index> mul(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t value = std::min(i, j);
        for (std::size_t c = 0; c < spans.size(); ++c) {
          const auto [lo, hi] = spans[c];
          if (i >= lo && i <= hi && j >= lo && j <= hi) {
            if (parts[c].first == Family::Lukasiewicz) {
              const std::size_t u = i - lo, v = j - lo, top = hi - lo;
              value = lo + (u + v > top ? u + v - top : 0);
            }
            break;
          }
        }
        mul[i * n + j] = static_cast<Index>(value);
      }
    std::string desc = "ordinal_sum";
    for (const auto& [family, size] : parts) desc += " " + to_string(family) + ":" + std::to_string(size);
    return from_table(n, std::move(mul), std::move(name), desc);
  }

  /// Standard chain on [0,1]; components must tile [0,1] with matching endpoints.
  static Chain standard(std::vector<Component> components, std::string name = {}) {
    if (components.empty()) throw Error("GapOrOverlap", "no components given");
    if (components.front().lo != 0) throw Error("GapOrOverlap", "first component must start at 0");
    if (components.back().hi != 1) throw Error("GapOrOverlap", "last component must end at 1");
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (components[i].lo >= components[i].hi)
        throw Error("GapOrOverlap", "component " + std::to_string(i) + " is empty or reversed");
      if (i + 1 < components.size() && components[i].hi != components[i + 1].lo)
        throw Error("GapOrOverlap", "components " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                        " do not share an endpoint");
    }
    Chain c;
    c.finite_ = false;
    c.components_ = std::move(components);
    c.name_ = std::move(name);
    c.description_ = "standard";
    for (const auto& comp : c.components_)
      c.description_ += " " + to_string(comp.family) + "[" + to_string(comp.lo) + "," + to_string(comp.hi) + "]";
    return c;
  }

  // Shape -------------------------------------------------------------------

  bool is_finite() const { return finite_; }
  std::size_t size() const { return n_; }
  const std::string& name() const { return name_; }
  const std::string& description() const { return description_; }
  const std::string& label() const { return name_.empty() ? description_ : name_; }
  const std::vector<Rational>& elements() const { return elements_; }
  const std::vector<Component>& components() const { return components_; }

  bool contains(const Rational& x) const {
    if (x < 0 || x > 1) return false;
    if (!finite_) return true;
    return find_index(x).has_value();
  }

  std::optional<std::size_t> find_index(const Rational& x) const {
    if (!finite_ || x < 0 || x > 1) return std::nullopt;
    const Rational scaled = x * static_cast<long long>(n_ - 1);
    if (boost::multiprecision::denominator(scaled) != 1) return std::nullopt;
    return static_cast<std::size_t>(boost::multiprecision::numerator(scaled));
  }

  std::size_t index_of(const Rational& x) const {
    auto i = find_index(x);
    if (!i) throw Error("OutOfCarrier", to_string(x) + " is not an element of " + label());
    return *i;
  }

  const Rational& value(std::size_t i) const { return elements_[i]; }

  // Index-level operations (finite chains only).
  std::size_t mul(std::size_t i, std::size_t j) const { return mul_[i * n_ + j]; }
  std::size_t imp(std::size_t i, std::size_t j) const { return imp_[i * n_ + j]; }
  std::size_t neg(std::size_t i) const { return imp_[i * n_]; }
  std::size_t top() const { return n_ - 1; }

  // Value-level operations ----------------------------------------------------

  Rational tnorm(const Rational& x, const Rational& y) const {
    check(x);
    check(y);
    if (finite_) return elements_[mul(index_of(x), index_of(y))];
    const Rational& lo_arg = x <= y ? x : y;
    const Rational& hi_arg = x <= y ? y : x;
    const Component& comp = components_[locate(hi_arg)];
    if (lo_arg < comp.lo) return lo_arg;
    const Rational width = comp.hi - comp.lo;
    const Rational u = (x - comp.lo) / width, v = (y - comp.lo) / width;
    Rational w;
    switch (comp.family) {
      case Family::Lukasiewicz: w = std::max(Rational(0), u + v - 1); break;
      case Family::Godel: w = std::min(u, v); break;
      case Family::Product: w = u * v; break;
    }
    return comp.lo + width * w;
  }

  /// max{z : x ⊗ z ≤ y}.
  Rational residuum(const Rational& x, const Rational& y) const {
    check(x);
    check(y);
    if (finite_) return elements_[imp(index_of(x), index_of(y))];
    if (x <= y) return 1;
    const Component& comp = components_[locate(x)];
    if (y < comp.lo) return y;
    const Rational width = comp.hi - comp.lo;
    const Rational u = (x - comp.lo) / width, v = (y - comp.lo) / width;
    Rational w;
    switch (comp.family) {
      case Family::Lukasiewicz: w = std::min(Rational(1), 1 - u + v); break;
      case Family::Godel: w = v; break;
      case Family::Product: w = v / u; break;
    }
    return comp.lo + width * w;
  }

  Rational negation(const Rational& x) const { return residuum(x, 0); }
  Rational delta(const Rational& x) const {
    check(x);
    return x == 1 ? Rational(1) : Rational(0);
  }
  Rational meet(const Rational& x, const Rational& y) const {
    check(x);
    check(y);
    return std::min(x, y);
  }
  Rational join(const Rational& x, const Rational& y) const {
    check(x);
    check(y);
    return std::max(x, y);
  }

  // Structure -----------------------------------------------------------------

  NSet n_set() const {
    NSet out;
    if (finite_) {
      out.shape = NSet::Shape::Explicit;
      for (std::size_t i = 0; i + 1 < n_; ++i)
        if (neg(i) == 0) out.elements.push_back(elements_[i]);
      return out;
    }
    const Component& first = components_.front();
    if (first.family == Family::Lukasiewicz) {
      if (first.hi == 1) return out;
      out.shape = NSet::Shape::ClosedFrom;
      out.bound = first.hi;
    } else {
      out.shape = NSet::Shape::OpenFrom;
      out.bound = 0;
    }
    return out;
  }

  SmtlVerdict smtl() const {
    if (finite_) {
      for (std::size_t i = 0; i < n_; ++i)
        if (std::min(i, neg(i)) != 0) return {false, elements_[i]};
      return {true, std::nullopt};
    }
    const Component& first = components_.front();
    if (first.family != Family::Lukasiewicz) return {true, std::nullopt};
    return {false, first.hi / 2};
  }

  bool is_smtl() const { return smtl().smtl; }

  /// Points where the unary operations of a standard chain may change shape:
  /// 0, 1, component endpoints, and the fixpoint of ¬ inside a leading Ł component.
  std::vector<Rational> landmarks() const {
    std::vector<Rational> pts;
    if (finite_) return elements_;
    pts.push_back(0);
    for (const auto& comp : components_) pts.push_back(comp.hi);
    if (components_.front().family == Family::Lukasiewicz) pts.push_back(components_.front().hi / 2);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

  friend bool operator==(const Chain& a, const Chain& b) {
    if (a.finite_ != b.finite_) return false;
    if (a.finite_) return a.n_ == b.n_ && a.mul_ == b.mul_;
    return a.components_ == b.components_;
  }

  static Rational grid(std::size_t i, std::size_t n) { return Rational(Integer(i), Integer(n - 1)); }

  /// Builds from a multiplication table on {0..n-1}; validates the monoid laws and derives →.
  static Chain from_table(std::size_t n, std::vector<Index> mul, std::string name, std::string description) {
    Chain c;
    c.finite_ = true;
    c.n_ = n;
    c.mul_ = std::move(mul);
    c.name_ = std::move(name);
    c.description_ = std::move(description);
    for (std::size_t i = 0; i < n; ++i) c.elements_.push_back(grid(i, n));
    if (auto violation = c.monoid_violation()) throw Error("TableNotTnorm", *violation);
    c.imp_.resize(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t best = 0;
        for (std::size_t z = 0; z < n; ++z)
          if (c.mul(x, z) <= y) best = z;
        c.imp_[x * n + y] = static_cast<Index>(best);
      }
    return c;
  }

  void rename(std::string name) { name_ = std::move(name); }

private:
  Chain() = default;

  static Index grid_index(const Rational& v, std::size_t n) {
    const Rational scaled = v * static_cast<long long>(n - 1);
    if (v < 0 || v > 1 || boost::multiprecision::denominator(scaled) != 1)
      throw Error("OutOfCarrier", to_string(v) + " is not on the grid {i/" + std::to_string(n - 1) + "}");
    return static_cast<Index>(boost::multiprecision::numerator(scaled));
  }

  std::optional<std::string> monoid_violation() const {
    auto at = [&](std::size_t i) { return to_string(elements_[i]); };
    const std::size_t top = n_ - 1;
    for (std::size_t x = 0; x < n_; ++x) {
      if (mul(x, top) != x) return "unit law fails at x=" + at(x);
      for (std::size_t y = 0; y < n_; ++y) {
        if (mul(x, y) != mul(y, x)) return "not commutative at (" + at(x) + "," + at(y) + ")";
        if (y + 1 < n_ && mul(x, y) > mul(x, y + 1))
          return "not monotone at (" + at(x) + "," + at(y) + "," + at(y + 1) + ")";
        for (std::size_t z = 0; z < n_; ++z)
          if (mul(mul(x, y), z) != mul(x, mul(y, z)))
            return "not associative at (" + at(x) + "," + at(y) + "," + at(z) + ")";
      }
    }
    return std::nullopt;
  }

  void check(const Rational& x) const {
    if (x < 0 || x > 1) throw Error("OutOfCarrier", to_string(x) + " is outside [0,1]");
  }

  /// Component with lo < x ≤ hi (component 0 for x = 0).
  std::size_t locate(const Rational& x) const {
    for (std::size_t i = 0; i < components_.size(); ++i)
      if (x <= components_[i].hi) return i;
    return components_.size() - 1;
  }

  bool finite_ = true;
  std::size_t n_ = 0;
  std::vector<Index> mul_;
  std::vector<Index> imp_;
  std::vector<Rational> elements_;
  std::vector<Component> components_;
  std::string name_;
  std::string description_;
};

// Law verification ------------------------------------------------------------

struct LawReport {
  bool holds = true;
  std::string law;                // first violated law
  std::vector<Rational> witness;  // elements exhibiting the violation
  std::size_t checked = 0;        // number of tuples examined
};

/// Exhaustive check of the MTL-chain laws on a finite chain: associativity,
/// commutativity, unit, monotonicity, adjointness, prelinearity.
inline LawReport verify_laws(const Chain& c) {
  LawReport r;
  if (!c.is_finite()) throw Error("StandardChainUnsupported", "exhaustive law check needs a finite chain");
  const std::size_t n = c.size(), top = c.top();
  auto fail = [&](std::string law, std::vector<std::size_t> idx) {
    r.holds = false;
    r.law = std::move(law);
    for (auto i : idx) r.witness.push_back(c.value(i));
  };
  for (std::size_t x = 0; x < n; ++x) {
    ++r.checked;
    if (c.mul(x, top) != x) return fail("unit", {x}), r;
    for (std::size_t y = 0; y < n; ++y) {
      ++r.checked;
      if (c.mul(x, y) != c.mul(y, x)) return fail("commutativity", {x, y}), r;
      if (std::max(c.imp(x, y), c.imp(y, x)) != top) return fail("prelinearity", {x, y}), r;
      for (std::size_t z = 0; z < n; ++z) {
        ++r.checked;
        if (c.mul(c.mul(x, y), z) != c.mul(x, c.mul(y, z))) return fail("associativity", {x, y, z}), r;
        if (y <= z && c.mul(x, y) > c.mul(x, z)) return fail("monotonicity", {x, y, z}), r;
        if ((c.mul(x, y) <= z) != (x <= c.imp(y, z))) return fail("adjointness", {x, y, z}), r;
      }
    }
  }
  return r;
}

/// Uniformly random rational in [0,1] with denominator at most `max_den`.
inline Rational random_unit_rational(std::mt19937_64& rng, long long max_den) {
  std::uniform_int_distribution<long long> den_dist(1, max_den);
  const long long den = den_dist(rng);
  std::uniform_int_distribution<long long> num_dist(0, den);
  return rat(num_dist(rng), den);
}

/// Exact adjointness x⊗y ≤ z ⇔ x ≤ y→z on `samples` pseudo-random rational triples.
inline LawReport verify_adjointness_sampled(const Chain& c, std::size_t samples, std::uint64_t seed = 1) {
  LawReport r;
  std::mt19937_64 rng(seed);
  auto pick = [&]() -> Rational {
    if (c.is_finite()) {
      std::uniform_int_distribution<std::size_t> d(0, c.size() - 1);
      return c.value(d(rng));
    }
    // Mix landmark points in so component boundaries get exercised.
    std::uniform_int_distribution<int> coin(0, 9);
    if (coin(rng) == 0) {
      const auto marks = c.landmarks();
      std::uniform_int_distribution<std::size_t> d(0, marks.size() - 1);
      return marks[d(rng)];
    }
    return random_unit_rational(rng, 240);
  };
  for (std::size_t i = 0; i < samples; ++i) {
    const Rational x = pick(), y = pick(), z = pick();
    ++r.checked;
    if ((c.tnorm(x, y) <= z) != (x <= c.residuum(y, z))) {
      r.holds = false;
      r.law = "adjointness";
      r.witness = {x, y, z};
      return r;
    }
  }
  return r;
}

// Filters and quotients --------------------------------------------------------

/// Up-closed, ⊗-closed subset of a finite chain containing 1 (stored as indices, ascending).
struct Filter {
  std::vector<std::size_t> members;
};

inline Filter make_filter(const Chain& c, const std::vector<Rational>& elements) {
  if (!c.is_finite()) throw Error("NotAFilter", "filters are supported on finite chains only");
  std::vector<bool> in(c.size(), false);
  for (const auto& e : elements) in[c.index_of(e)] = true;
  if (!in[c.top()]) throw Error("NotAFilter", "a filter must contain 1");
  for (std::size_t x = 0; x < c.size(); ++x) {
    if (!in[x]) continue;
    for (std::size_t y = x; y < c.size(); ++y)
      if (!in[y]) throw Error("NotAFilter", "not up-closed: " + to_string(c.value(x)) + " in F but " +
                                                to_string(c.value(y)) + " not");
    for (std::size_t y = 0; y < c.size(); ++y)
      if (in[y] && !in[c.mul(x, y)])
        throw Error("NotAFilter", "not closed under ⊗: " + to_string(c.value(x)) + " ⊗ " + to_string(c.value(y)) +
                                      " = " + to_string(c.value(c.mul(x, y))) + " not in F");
  }
  Filter f;
  for (std::size_t x = 0; x < c.size(); ++x)
    if (in[x]) f.members.push_back(x);
  return f;
}

struct Quotient {
  Chain chain;
  std::vector<std::size_t> projection;  // element index of c -> class index of the quotient
};

/// C/≡_F where x ≡ y iff x→y ∈ F and y→x ∈ F. The result is revalidated as an MTL-chain.
inline Quotient quotient_by_filter(const Chain& c, const Filter& f) {
  if (!c.is_finite()) throw Error("NotAFilter", "quotients are supported on finite chains only");
  std::vector<bool> in(c.size(), false);
  for (auto m : f.members) in[m] = true;
  auto equiv = [&](std::size_t x, std::size_t y) { return in[c.imp(x, y)] && in[c.imp(y, x)]; };

  // On a chain every class is an interval, so classes are runs of consecutive elements.
  std::vector<std::size_t> proj(c.size());
  std::size_t classes = 0;
  std::vector<std::size_t> leader;  // first element of each class
  for (std::size_t x = 0; x < c.size(); ++x) {
    if (x > 0 && equiv(leader.back(), x)) {
      proj[x] = classes - 1;
    } else {
      leader.push_back(x);
      proj[x] = classes++;
    }
  }
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y)
      if ((proj[x] == proj[y]) != equiv(x, y))
        throw Error("NotAFilter", "induced relation is not a congruence on a chain");
  if (classes < 2) throw Error("NotAFilter", "filter collapses the chain to a single point");

  std::vector<Chain::Index> mul(classes * classes);
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y) {
      const std::size_t cls = proj[c.mul(x, y)];
      auto& slot = mul[proj[x] * classes + proj[y]];
      if (x == leader[proj[x]] && y == leader[proj[y]]) slot = static_cast<Chain::Index>(cls);
    }
  // Well-definedness of ⊗ and → on classes.
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y)
      if (mul[proj[x] * classes + proj[y]] != proj[c.mul(x, y)])
        throw Error("NotAFilter", "⊗ is not compatible with the induced relation");
  Chain q = Chain::from_table(classes, std::move(mul), c.name().empty() ? "" : c.name() + "/F",
                              "quotient of " + c.label());
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y)
      if (q.imp(proj[x], proj[y]) != proj[c.imp(x, y)])
        throw Error("NotAFilter", "→ is not compatible with the induced relation");
  return Quotient{std::move(q), std::move(proj)};
}

}  // namespace pfw
