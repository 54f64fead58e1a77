#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfw/error.hpp"
#include "pfw/formula.hpp"
#include "pfw/operators.hpp"
#include "pfw/parser.hpp"
#include "pfw/semantics.hpp"

namespace pfw {

// Profiles ------------------------------------------------------------------------

enum class Base { MTL, SMTL, IMTL, WNM, NM, BL, SBL, L, P, G };

/// Which operator extension sits on top of the base logic.
enum class OpFamily {
  None,
  Nn,          // L^¬¬
  Circ,        // L○
  CircNn,      // L○¬¬
  CircNnPlus,  // L○¬¬ axiomatized by (B1)–(B4) and (○Nec)
  CircC,
  CircMin,
  CircMax,
  CircDat,
  Bullet,
  BulletNn,
  BulletC,
  BulletMin,
  BulletMax,
};

inline std::string to_string(Base b) {
  switch (b) {
    case Base::MTL: return "MTL";
    case Base::SMTL: return "SMTL";
    case Base::IMTL: return "IMTL";
    case Base::WNM: return "WNM";
    case Base::NM: return "NM";
    case Base::BL: return "BL";
    case Base::SBL: return "SBL";
    case Base::L: return "L";
    case Base::P: return "P";
    case Base::G: return "G";
  }
  return "?";
}

inline std::string family_suffix(OpFamily f) {
  switch (f) {
    case OpFamily::None: return "";
    case OpFamily::Nn: return "_nn";
    case OpFamily::Circ: return "_o";
    case OpFamily::CircNn: return "_o_nn";
    case OpFamily::CircNnPlus: return "_o_nn+";
    case OpFamily::CircC: return "_o_c";
    case OpFamily::CircMin: return "_o_min";
    case OpFamily::CircMax: return "_o_max";
    case OpFamily::CircDat: return "_o_dat";
    case OpFamily::Bullet: return "_b";
    case OpFamily::BulletNn: return "_b_nn";
    case OpFamily::BulletC: return "_b_c";
    case OpFamily::BulletMin: return "_b_min";
    case OpFamily::BulletMax: return "_b_max";
  }
  return "";
}

inline bool is_circ_family(OpFamily f) { return f >= OpFamily::Circ && f <= OpFamily::CircDat; }
inline bool is_bullet_family(OpFamily f) { return f >= OpFamily::Bullet; }
inline bool is_nn_family(OpFamily f) {
  return f == OpFamily::Nn || f == OpFamily::CircNn || f == OpFamily::CircNnPlus || f == OpFamily::BulletNn;
}
inline bool is_bl_extension(Base b) {
  return b == Base::BL || b == Base::SBL || b == Base::L || b == Base::P || b == Base::G;
}

/// Metavariables used by every built-in schema.
inline const std::set<std::string>& schema_metavars() {
  static const std::set<std::string> mv{"phi", "psi", "chi", "delta"};
  return mv;
}

inline Schema schema(std::string_view text) { return parse_schema(text, schema_metavars()); }

struct AxiomDef {
  std::string id;
  Schema schema;
};

/// An inference rule: premises and conclusion in plain form. An ∨-form rule is also
/// accepted with a side disjunct δ added to every premise and to the conclusion.
struct RuleDef {
  std::string id;
  std::vector<Formula> premises;
  Formula conclusion;
  bool or_form = false;
  std::vector<bool> restricted;  // per premise: must be a theorem (empty dependency set)

  bool any_restricted() const { return std::find(restricted.begin(), restricted.end(), true) != restricted.end(); }
  std::string flavor() const { return any_restricted() ? "restricted" : or_form ? "or-form" : "plain"; }

  std::string describe() const {
    std::string s = id + ": ";
    for (std::size_t i = 0; i < premises.size(); ++i) {
      if (i) s += ", ";
      if (restricted[i]) s += "|- ";
      s += render(or_form ? join(premises[i], var("delta")) : premises[i]);
    }
    return s + " / " + render(or_form ? join(conclusion, var("delta")) : conclusion) + "  [" + flavor() + "]";
  }
};

struct Profile {
  std::string name;
  Base base = Base::MTL;
  bool delta = false;
  OpFamily family = OpFamily::None;
  bool degree = false;
  std::vector<AxiomDef> axioms;
  std::vector<RuleDef> rules;

  bool has_circ() const { return is_circ_family(family); }
  bool has_bullet() const { return is_bullet_family(family); }
  bool has_delta() const { return delta; }
  Mode mode() const { return degree ? Mode::Degree : Mode::Truth; }

  const AxiomDef* axiom(const std::string& id) const {
    for (const auto& a : axioms)
      if (a.id == id) return &a;
    return nullptr;
  }
  const RuleDef* rule(const std::string& id) const {
    for (const auto& r : rules)
      if (r.id == id) return &r;
    return nullptr;
  }
  /// The modus ponens rule of the profile ("MP", or "MP-r" in degree companions).
  const RuleDef& modus_ponens() const { return *rule(degree ? "MP-r" : "MP"); }

  std::string describe() const {
    std::string out = "profile " + name + "\nmode " + to_string(mode()) + "\n";
    for (const auto& a : axioms) out += "axiom " + a.id + ": " + render(a.schema.pattern) + "\n";
    for (const auto& r : rules) out += "rule " + r.describe() + "\n";
    return out;
  }
};

namespace detail {

inline const std::map<std::string, std::string>& axiom_texts() {
  static const std::map<std::string, std::string> t{
      {"A1", "(phi -> psi) -> ((psi -> chi) -> (phi -> chi))"},
      {"A2", "phi & psi -> phi"},
      {"A3", "phi & psi -> psi & phi"},
      {"A4", "phi /\\ psi -> phi"},
      {"A5", "phi /\\ psi -> psi /\\ phi"},
      {"A6", "phi & (phi -> psi) -> phi /\\ psi"},
      {"A7a", "(phi -> (psi -> chi)) -> (phi & psi -> chi)"},
      {"A7b", "(phi & psi -> chi) -> (phi -> (psi -> chi))"},
      {"A8", "((phi -> psi) -> chi) -> (((psi -> phi) -> chi) -> chi)"},
      {"A9", "0 -> phi"},
      {"Inv", "~~phi -> phi"},
      {"C", "~phi \\/ ((phi -> phi & psi) -> psi)"},
      {"Con", "phi -> phi & phi"},
      {"Div", "phi /\\ psi -> phi & (phi -> psi)"},
      {"PC", "phi /\\ ~phi -> 0"},
      {"WNM", "(phi & psi -> 0) \\/ (phi /\\ psi -> phi & psi)"},
      {"D1", "D phi \\/ ~D phi"},
      {"D2", "D (phi \\/ psi) -> D phi \\/ D psi"},
      {"D3", "D phi -> phi"},
      {"D4", "D phi -> D D phi"},
      {"D5", "D (phi -> psi) -> (D phi -> D psi)"},
      {"oA1", "~(phi /\\ ~phi /\\ O phi)"},
      {"oA2", "O 1"},
      {"oA3", "O 0"},
      {"B1", "~O phi \\/ phi \\/ ~phi"},
      {"B2", "O (phi <-> psi) -> (O phi <-> O psi)"},
      {"B3", "O (phi \\/ psi) -> O phi \\/ psi"},
      {"B4", "O 0"},
      {"c", "O phi \\/ ~O phi"},
      {"oA4", "phi \\/ ~phi \\/ ~O phi"},
      {"oMaxBL", "(~~phi -> phi) \\/ O phi"},
      {"oEM", "O phi -> phi \\/ ~phi"},
      {"bA1", "~(phi /\\ ~phi) \\/ # phi"},
      {"bA2", "~# 1"},
      {"bA3", "~# 0"},
      {"bc", "# phi \\/ ~# phi"},
      {"bmax", "phi \\/ ~phi \\/ # phi"},
  };
  return t;
}

inline AxiomDef make_axiom(const std::string& id) { return {id, schema(axiom_texts().at(id))}; }

inline RuleDef make_rule(std::string id, std::vector<std::string> premises, const std::string& conclusion, bool or_form) {
  RuleDef r;
  r.id = std::move(id);
  for (const auto& p : premises) r.premises.push_back(schema(p).pattern);
  r.conclusion = schema(conclusion).pattern;
  r.or_form = or_form;
  r.restricted.assign(r.premises.size(), false);
  return r;
}

inline std::vector<std::string> base_axioms(Base b) {
  switch (b) {
    case Base::MTL: return {};
    case Base::SMTL: return {"PC"};
    case Base::IMTL: return {"Inv"};
    case Base::WNM: return {"WNM"};
    case Base::NM: return {"Inv", "WNM"};
    case Base::BL: return {"Div"};
    case Base::SBL: return {"Div", "PC"};
    case Base::L: return {"Div", "Inv"};
    case Base::P: return {"Div", "C"};
    case Base::G: return {"Con"};
  }
  return {};
}

struct NameCursor {
  std::string s;
  std::size_t i = 0;
  bool eat(std::string_view t) {
    if (s.compare(i, t.size(), t) != 0) return false;
    i += t.size();
    return true;
  }
};

inline std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
  return s;
}

}  // namespace detail

struct ProfileKey {
  Base base = Base::MTL;
  bool delta = false;
  OpFamily family = OpFamily::None;
  bool degree = false;

  std::string name() const { return to_string(base) + (delta ? "_D" : "") + family_suffix(family) + (degree ? "<=" : ""); }
};

/// Accepts ASCII names such as `MTL_o_min<=` and the Unicode spellings `MTL○min≤`,
/// `Ł○¬¬`, `MTLΔ`, `(BL○max)≤`.
inline ProfileKey parse_profile_name(std::string_view raw) {
  std::string s;
  for (char ch : raw)
    if (ch != '(' && ch != ')' && ch != ' ') s += ch;
  for (auto [from, to] : std::initializer_list<std::pair<std::string_view, std::string_view>>{
           {"Ł", "L"}, {"Π", "P"}, {"Δ", "_D"}, {"○", "_o"}, {"•", "_b"}, {"¬¬", "nn"}, {"≤", "<="}, {"⁺", "+"}})
    s = detail::replace_all(s, from, to);
  detail::NameCursor c{s};
  ProfileKey k;
  bool base_found = false;
  for (Base b : {Base::SMTL, Base::IMTL, Base::MTL, Base::WNM, Base::NM, Base::SBL, Base::BL, Base::L, Base::P, Base::G})
    if (c.eat(to_string(b))) {
      k.base = b;
      base_found = true;
      break;
    }
  auto fail = [&] { return Error("UnknownProfile", "no built-in profile named '" + std::string(raw) + "'"); };
  if (!base_found) throw fail();
  k.delta = c.eat("_D");
  if (c.eat("_o")) {
    c.eat("_");
    k.family = c.eat("nn+")   ? OpFamily::CircNnPlus
               : c.eat("nn")  ? OpFamily::CircNn
               : c.eat("min") ? OpFamily::CircMin
               : c.eat("max") ? OpFamily::CircMax
               : c.eat("dat") ? OpFamily::CircDat
               : c.eat("c")   ? OpFamily::CircC
                              : OpFamily::Circ;
  } else if (c.eat("_b")) {
    c.eat("_");
    k.family = c.eat("nn")    ? OpFamily::BulletNn
               : c.eat("min") ? OpFamily::BulletMin
               : c.eat("max") ? OpFamily::BulletMax
               : c.eat("c")   ? OpFamily::BulletC
                              : OpFamily::Bullet;
  } else if (c.eat("_nn") || c.eat("nn")) {
    k.family = OpFamily::Nn;
  }
  k.degree = c.eat("<=");
  if (c.i != s.size()) throw fail();
  return k;
}

inline Profile build_profile(const ProfileKey& k) {
  using detail::make_axiom;
  using detail::make_rule;
  Profile p;
  p.name = k.name();
  p.base = k.base;
  p.delta = k.delta;
  p.family = k.family;
  p.degree = k.degree;
  for (const char* id : {"A1", "A2", "A3", "A4", "A5", "A6", "A7a", "A7b", "A8", "A9"}) p.axioms.push_back(make_axiom(id));
  for (const auto& id : detail::base_axioms(k.base)) p.axioms.push_back(make_axiom(id));

  std::vector<RuleDef> extra;
  if (k.delta) {
    for (const char* id : {"D1", "D2", "D3", "D4", "D5"}) p.axioms.push_back(make_axiom(id));
    extra.push_back(make_rule("DNec", {"phi"}, "D phi", false));
  }
  auto add = [&](std::initializer_list<const char*> ids) {
    for (const char* id : ids) p.axioms.push_back(make_axiom(id));
  };
  const RuleDef nn = make_rule("NN", {"~~phi"}, "phi", true);
  const RuleDef cong = make_rule("Cong", {"phi <-> psi"}, "O phi <-> O psi", true);
  const RuleDef coh = make_rule("Coh", {"~~phi /\\ (phi -> psi)"}, "O phi -> O psi", true);
  const RuleDef bcong = make_rule("Cong'", {"phi <-> psi"}, "# phi <-> # psi", true);
  const RuleDef bcoh = make_rule("Coh'", {"~~phi /\\ (phi -> psi)"}, "# psi -> # phi", true);
  if (k.family == OpFamily::Nn) extra.push_back(nn);
  if (k.family == OpFamily::CircNnPlus) {
    add({"B1", "B2", "B3", "B4"});
    extra.push_back(nn);
    extra.push_back(make_rule("ONec", {"phi"}, "O phi", false));
  } else if (is_circ_family(k.family)) {
    add({"oA1", "oA2", "oA3"});
    extra.push_back(cong);
    extra.push_back(coh);
    switch (k.family) {
      case OpFamily::CircNn: extra.push_back(nn); break;
      case OpFamily::CircC: add({"c"}); break;
      case OpFamily::CircMin: add({"oA4"}); break;
      case OpFamily::CircMax:
        extra.push_back(make_rule("NNo", {"~~phi"}, "O phi", true));
        if (is_bl_extension(k.base)) add({"oMaxBL"});
        break;
      case OpFamily::CircDat: add({"oEM"}); break;
      default: break;
    }
  } else if (is_bullet_family(k.family)) {
    add({"bA1", "bA2", "bA3"});
    extra.push_back(bcong);
    extra.push_back(bcoh);
    switch (k.family) {
      case OpFamily::BulletNn: extra.push_back(nn); break;
      case OpFamily::BulletC: add({"bc"}); break;
      case OpFamily::BulletMax: add({"bmax"}); break;
      case OpFamily::BulletMin: extra.push_back(make_rule("bNN", {"~~phi"}, "~# phi", true)); break;
      default: break;
    }
  }

  RuleDef mp = make_rule("MP", {"phi", "phi -> psi"}, "psi", false);
  if (!k.degree) {
    p.rules.push_back(mp);
    for (auto& r : extra) p.rules.push_back(std::move(r));
    return p;
  }
  mp.id = "MP-r";
  mp.restricted = {false, true};
  p.rules.push_back(mp);
  p.rules.push_back(make_rule("Adj", {"phi", "psi"}, "phi /\\ psi", false));
  for (auto& r : extra) {
    r.id += "-r";
    r.restricted.assign(r.premises.size(), true);
    p.rules.push_back(std::move(r));
  }
  return p;
}

inline Profile load_profile(std::string_view name) { return build_profile(parse_profile_name(name)); }

inline std::vector<std::string> builtin_profile_names() {
  std::vector<std::string> out;
  for (Base b : {Base::MTL, Base::SMTL, Base::IMTL, Base::WNM, Base::NM, Base::BL, Base::SBL, Base::L, Base::P, Base::G})
    for (int f = static_cast<int>(OpFamily::None); f <= static_cast<int>(OpFamily::BulletMax); ++f)
      for (bool degree : {false, true}) out.push_back(ProfileKey{b, false, static_cast<OpFamily>(f), degree}.name());
  out.push_back("MTL_D");
  out.push_back("MTL_D<=");
  return out;
}

// Theorem store ---------------------------------------------------------------------

struct Theorem {
  std::string name;
  Schema schema;
  std::function<bool(const Profile&)> registered_in;
  std::string where;
};

/// Named theorem schemas a proof may cite with `thm <name>`. A theorem is usable only
/// in the profiles it was registered for; registration is explicit, never inferred.
class TheoremStore {
public:
  void add(std::string name, std::string_view text, std::function<bool(const Profile&)> in, std::string where) {
    entries_.push_back({std::move(name), schema(text), std::move(in), std::move(where)});
  }
  const Theorem* find(const std::string& name) const {
    for (const auto& t : entries_)
      if (t.name == name) return &t;
    return nullptr;
  }
  const std::vector<Theorem>& entries() const { return entries_; }

  static TheoremStore seeded() {
    TheoremStore s;
    auto any = [](const Profile&) { return true; };
    for (auto [name, text] : std::initializer_list<std::pair<const char*, const char*>>{
             {"id", "phi -> phi"},
             {"weaken", "phi -> (psi -> phi)"},
             {"dn-intro", "phi -> ~~phi"},
             {"contrapose", "(phi -> psi) -> (~psi -> ~phi)"},
             {"demorgan", "~(phi /\\ psi) <-> (~phi \\/ ~psi)"},
             {"demorgan-r", "~phi \\/ ~psi -> ~(phi /\\ psi)"},
             {"or-intro-l", "phi -> phi \\/ psi"},
             {"or-intro-r", "psi -> phi \\/ psi"},
             {"or-comm", "phi \\/ psi -> psi \\/ phi"},
             {"or-assoc-l", "phi \\/ (psi \\/ chi) -> phi \\/ psi \\/ chi"},
             {"or-assoc-r", "phi \\/ psi \\/ chi -> phi \\/ (psi \\/ chi)"},
             {"or-mono-l", "(phi -> psi) -> (phi \\/ chi -> psi \\/ chi)"},
             {"or-mono-r", "(phi -> psi) -> (chi \\/ phi -> chi \\/ psi)"},
             {"or-syllogism", "phi \\/ psi -> (~psi -> phi)"},
             {"iff-intro", "(phi -> psi) -> ((psi -> phi) -> (phi <-> psi))"},
             {"prelinearity", "(phi -> psi) \\/ (psi -> phi)"},
         })
      s.add(name, text, any, "MTL");
    auto nn = [](const Profile& p) { return p.family == OpFamily::CircNn || p.family == OpFamily::CircNnPlus; };
    for (const char* id : {"B1", "B2", "B3", "B4"}) s.add(id, detail::axiom_texts().at(id), nn, "L_o_nn");
    s.add("oEM", detail::axiom_texts().at("oEM"),
          [nn](const Profile& p) { return nn(p) || p.family == OpFamily::CircMin; }, "L_o_nn, L_o_min");
    s.add("c", detail::axiom_texts().at("c"),
          [nn](const Profile& p) { return nn(p) || p.family == OpFamily::CircMin || p.family == OpFamily::CircMax; },
          "L_o_nn, L_o_min, L_o_max");
    return s;
  }

private:
  std::vector<Theorem> entries_;
};

inline const TheoremStore& default_theorems() {
  static const TheoremStore s = TheoremStore::seeded();
  return s;
}

// Proof scripts ---------------------------------------------------------------------

struct Justification {
  enum class Kind { Axiom, Premise, Mp, Rule, Theorem } kind = Kind::Axiom;
  std::string id;                 // axiom, rule or theorem name
  std::vector<std::size_t> refs;  // line numbers (premise: the premise index)
};

struct ProofLine {
  std::size_t number = 0;
  Formula formula;
  Justification just;
  std::size_t source_line = 0;
};

struct ProofScript {
  std::string name;
  std::string profile;
  std::vector<ProofLine> lines;
};

namespace detail {

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::size_t parse_ref(const std::string& w, std::size_t src) {
  if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw Error("ProofSyntax", "line " + std::to_string(src) + ": expected a line number, got '" + w + "'");
  return std::stoul(w);
}

inline Justification parse_justification(std::string_view text, std::size_t src) {
  const auto w = words(text);
  auto bad = [&](const std::string& why) { return Error("ProofSyntax", "line " + std::to_string(src) + ": " + why); };
  if (w.empty()) throw bad("missing justification");
  Justification j;
  if (w[0] == "axiom" || w[0] == "thm") {
    if (w.size() != 2) throw bad("expected '" + w[0] + " <name>'");
    j.kind = w[0] == "axiom" ? Justification::Kind::Axiom : Justification::Kind::Theorem;
    j.id = w[1];
  } else if (w[0] == "premise") {
    if (w.size() != 2) throw bad("expected 'premise <k>'");
    j.kind = Justification::Kind::Premise;
    j.refs = {parse_ref(w[1], src)};
  } else if (w[0] == "mp") {
    if (w.size() != 3) throw bad("expected 'mp <i> <j>'");
    j.kind = Justification::Kind::Mp;
    j.refs = {parse_ref(w[1], src), parse_ref(w[2], src)};
  } else if (w[0] == "rule") {
    if (w.size() < 2) throw bad("expected 'rule <id> <i...>'");
    j.kind = Justification::Kind::Rule;
    j.id = w[1];
    for (std::size_t i = 2; i < w.size(); ++i) j.refs.push_back(parse_ref(w[i], src));
  } else {
    throw bad("unknown justification '" + w[0] + "'");
  }
  return j;
}

}  // namespace detail

/// Proof files: `proof <name> in <profile>` followed by numbered lines
/// `n. <formula> | <justification>`. `%` starts a comment.
inline std::vector<ProofScript> parse_proof_file(std::string_view text) {
  std::vector<ProofScript> out;
  std::istringstream in{std::string(text)};
  std::size_t src = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++src;
    if (auto pct = raw.find('%'); pct != std::string::npos) raw.erase(pct);
    const std::string line(detail::trim(raw));
    if (line.empty()) continue;
    const auto w = detail::words(line);
    if (w[0] == "proof") {
      if (w.size() != 4 || w[2] != "in")
        throw Error("ProofSyntax", "line " + std::to_string(src) + ": expected 'proof <name> in <profile>'");
      out.push_back({w[1], w[3], {}});
      continue;
    }
    if (out.empty()) throw Error("ProofSyntax", "line " + std::to_string(src) + ": proof line before any 'proof' header");
    const auto dot = line.find('.');
    const auto bar = line.rfind('|');
    if (dot == std::string::npos || bar == std::string::npos || bar < dot)
      throw Error("ProofSyntax", "line " + std::to_string(src) + ": expected 'n. <formula> | <justification>'");
    ProofLine pl;
    pl.source_line = src;
    pl.number = detail::parse_ref(std::string(detail::trim(std::string_view(line).substr(0, dot))), src);
    if (pl.number != out.back().lines.size() + 1)
      throw Error("ProofSyntax", "line " + std::to_string(src) + ": expected line number " +
                                     std::to_string(out.back().lines.size() + 1));
    try {
      pl.formula = parse(std::string_view(line).substr(dot + 1, bar - dot - 1));
    } catch (const ParseError& e) {
      throw Error("ProofSyntax", "line " + std::to_string(src) + ": " + e.what());
    }
    pl.just = detail::parse_justification(std::string_view(line).substr(bar + 1), src);
    out.back().lines.push_back(std::move(pl));
  }
  return out;
}

inline ProofScript parse_proof(std::string_view text) {
  auto all = parse_proof_file(text);
  if (all.size() != 1) throw Error("ProofSyntax", "expected exactly one proof, found " + std::to_string(all.size()));
  return all.front();
}

// Verification ------------------------------------------------------------------------

struct VerifyResult {
  bool ok = true;
  std::size_t line = 0;  // first invalid line when !ok
  std::string error;     // SchemaMismatch, BadRuleArity, RestrictedRuleOnHypothesis, ...
  std::string reason;
  std::vector<std::set<std::size_t>> deps;  // per line: premise indices it depends on
  std::map<std::size_t, Formula> hypotheses;

  std::string render() const {
    if (ok) return "verdict valid\nlines " + std::to_string(deps.size()) + "\n";
    return "verdict invalid\nline " + std::to_string(line) + "\nerror " + error + "\nreason " + reason + "\n";
  }
};

namespace detail {

inline bool rule_matches(const RuleDef& r, const std::vector<Formula>& premises, const Formula& conclusion) {
  for (int variant = 0; variant < (r.or_form ? 2 : 1); ++variant) {
    const bool with_delta = variant == 1;
    auto lift = [&](const Formula& f) { return with_delta ? join(f, var("delta")) : f; };
    std::optional<Binding> b = Binding{};
    for (std::size_t i = 0; i < premises.size() && b; ++i)
      b = match_modulo_definitions(Schema{lift(r.premises[i]), schema_metavars()}, premises[i], *b);
    if (b && match_modulo_definitions(Schema{lift(r.conclusion), schema_metavars()}, conclusion, *b)) return true;
  }
  return false;
}

}  // namespace detail

/// Checks every line in order and stops at the first invalid one.
inline VerifyResult verify_proof(const ProofScript& p, const TheoremStore& store = default_theorems()) {
  const Profile prof = load_profile(p.profile);
  VerifyResult r;
  auto fail = [&](const ProofLine& l, std::string error, std::string reason) {
    r.ok = false;
    r.line = l.number;
    r.error = std::move(error);
    r.reason = std::move(reason);
    return r;
  };
  for (const auto& l : p.lines) {
    const Formula& f = l.formula;
    if ((contains_kind(f, Kind::Circ) && !prof.has_circ()) || (contains_kind(f, Kind::Bullet) && !prof.has_bullet()) ||
        (contains_kind(f, Kind::Delta) && !prof.has_delta()))
      return fail(l, "LanguageMismatch", "formula uses a connective outside the language of " + prof.name);
    std::set<std::size_t> deps;
    const auto& j = l.just;
    switch (j.kind) {
      case Justification::Kind::Axiom: {
        const AxiomDef* a = prof.axiom(j.id);
        if (!a) return fail(l, "UnknownAxiom", "axiom " + j.id + " is not part of " + prof.name);
        if (!match_modulo_definitions(a->schema, f))
          return fail(l, "SchemaMismatch", "not an instance of " + j.id + ": " + render(a->schema.pattern));
        break;
      }
      case Justification::Kind::Theorem: {
        const Theorem* t = store.find(j.id);
        if (!t) return fail(l, "UnknownTheorem", "no registered theorem named " + j.id);
        if (!t->registered_in(prof))
          return fail(l, "UnregisteredTheorem", j.id + " is registered for " + t->where + ", not " + prof.name);
        if (!match_modulo_definitions(t->schema, f))
          return fail(l, "SchemaMismatch", "not an instance of theorem " + j.id + ": " + render(t->schema.pattern));
        break;
      }
      case Justification::Kind::Premise: {
        const std::size_t k = j.refs[0];
        auto [it, fresh] = r.hypotheses.emplace(k, f);
        if (!fresh && !(it->second == f))
          return fail(l, "PremiseConflict", "premise " + std::to_string(k) + " was stated as " + render(it->second));
        deps.insert(k);
        break;
      }
      case Justification::Kind::Mp:
      case Justification::Kind::Rule: {
        const RuleDef* rule = j.kind == Justification::Kind::Mp ? &prof.modus_ponens() : prof.rule(j.id);
        if (!rule) return fail(l, "UnknownRule", "rule " + j.id + " is not part of " + prof.name);
        if (j.refs.size() != rule->premises.size())
          return fail(l, "BadRuleArity", rule->id + " takes " + std::to_string(rule->premises.size()) + " premises, got " +
                                             std::to_string(j.refs.size()));
        std::vector<Formula> prem;
        for (std::size_t i = 0; i < j.refs.size(); ++i) {
          const std::size_t ref = j.refs[i];
          if (ref == 0 || ref >= l.number)
            return fail(l, "BadReference", "line " + std::to_string(ref) + " is not an earlier line");
          if (rule->restricted[i] && !r.deps[ref - 1].empty())
            return fail(l, "RestrictedRuleOnHypothesis",
                        rule->id + " needs line " + std::to_string(ref) + " to be a theorem, but it depends on premises");
          prem.push_back(p.lines[ref - 1].formula);
          deps.insert(r.deps[ref - 1].begin(), r.deps[ref - 1].end());
        }
        if (!detail::rule_matches(*rule, prem, f)) {
          std::string refs;
          for (auto ref : j.refs) refs += " " + std::to_string(ref);
          return fail(l, "SchemaMismatch", "does not follow by " + rule->id + " from lines" + refs);
        }
        break;
      }
    }
    r.deps.push_back(std::move(deps));
  }
  return r;
}

// Semantic cross-check ---------------------------------------------------------------

/// Why a model cannot serve as a chain of the profile's logic, or nullopt if it can.
inline std::optional<std::string> profile_mismatch(const Profile& p, const Model& m) {
  const Chain& c = m.chain;
  if (!c.is_finite()) return "soundness checks need a finite chain, " + c.label() + " is standard";
  const Binding fresh{{"phi", var("p")}, {"psi", var("q")}, {"chi", var("r")}};
  for (const auto& id : detail::base_axioms(p.base))
    if (tautology(Model(c), substitute(p.axiom(id)->schema.pattern, fresh)).verdict != Verdict::Holds)
      return c.label() + " is not a " + to_string(p.base) + "-chain (axiom " + id + " fails)";
  if (is_nn_family(p.family) && !c.n_set().empty()) return c.label() + " has elements x < 1 with ~x = 0";
  if (p.has_circ()) {
    if (!m.circ) return "profile " + p.name + " needs a consistency operator";
    if (!validate_c(c, *m.circ).valid) return "the consistency operator is not valid on " + c.label();
    const UnaryOp& o = *m.circ;
    switch (p.family) {
      case OpFamily::CircC:
        if (!o.is_crisp()) return "the consistency operator is not crisp";
        break;
      case OpFamily::CircMin:
        if (o.table() != min_op(c).table()) return "the consistency operator is not the minimal one";
        break;
      case OpFamily::CircMax:
        if (o.table() != max_op(c).table()) return "the consistency operator is not the maximal one";
        break;
      case OpFamily::CircDat:
        if (!check_dat_axiom(m).holds) return "the consistency operator violates O x <= x \\/ ~x";
        break;
      default: break;
    }
  }
  if (p.has_bullet()) {
    if (!m.bullet) return "profile " + p.name + " needs an inconsistency operator";
    if (!validate_bullet(c, *m.bullet).valid) return "the inconsistency operator is not valid on " + c.label();
    const UnaryOp& b = *m.bullet;
    switch (p.family) {
      case OpFamily::BulletC:
        if (!b.is_crisp()) return "the inconsistency operator is not crisp";
        break;
      case OpFamily::BulletMin:
        if (b.table() != dual(max_op(c)).table()) return "the inconsistency operator is not the minimal one";
        break;
      case OpFamily::BulletMax:
        if (b.table() != dual(min_op(c)).table()) return "the inconsistency operator is not the maximal one";
        break;
      default: break;
    }
  }
  return std::nullopt;
}

struct BridgeViolation {
  std::size_t line = 0;
  std::string chain;
  ConsequenceResult result;
};

struct SoundnessReport {
  std::size_t lines_checked = 0;
  std::size_t models = 0;
  std::vector<BridgeViolation> violations;

  bool ok() const { return violations.empty(); }
  std::string render() const {
    std::string out = std::string("verdict ") + (ok() ? "sound" : "violated") + "\nmodels " + std::to_string(models) +
                      "\nlines_checked " + std::to_string(lines_checked) + "\n";
    for (const auto& v : violations) out += "violation line " + std::to_string(v.line) + " on " + v.chain + ": " + v.result.render_text();
    return out;
  }
};

/// For every line with dependency set D, checks premises(D) ⊨ line on every model, in
/// the profile's mode (truth or degree).
inline SoundnessReport soundness_bridge(const ProofScript& p, const std::vector<Model>& models,
                                        const TheoremStore& store = default_theorems()) {
  const VerifyResult v = verify_proof(p, store);
  if (!v.ok) throw Error("ProofInvalid", "proof " + p.name + " fails at line " + std::to_string(v.line) + ": " + v.reason);
  const Profile prof = load_profile(p.profile);
  for (const auto& m : models)
    if (auto why = profile_mismatch(prof, m)) throw Error("ChainProfileMismatch", *why);
  SoundnessReport rep;
  rep.models = models.size();
  for (const auto& m : models)
    for (std::size_t i = 0; i < p.lines.size(); ++i) {
      std::vector<Formula> premises;
      for (auto k : v.deps[i]) premises.push_back(v.hypotheses.at(k));
      auto res = consequence(m, premises, p.lines[i].formula, prof.mode());
      ++rep.lines_checked;
      if (res.verdict != Verdict::Holds) rep.violations.push_back({p.lines[i].number, m.label(), std::move(res)});
    }
  return rep;
}

// Translations between the ○ and • languages.

/// t: replaces ○φ by ¬•φ.
inline Formula circ_to_bullet(const Formula& f) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Zero:
    case Kind::One: return f;
    case Kind::Circ: return neg(bullet(circ_to_bullet(f.child())));
    default: break;
  }
  if (is_unary(f.kind())) return Formula::unary(f.kind(), circ_to_bullet(f.child()));
  return Formula::binary(f.kind(), circ_to_bullet(f.lhs()), circ_to_bullet(f.rhs()));
}

/// t′: replaces •φ by ¬○φ.
inline Formula bullet_to_circ(const Formula& f) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Zero:
    case Kind::One: return f;
    case Kind::Bullet: return neg(circ(bullet_to_circ(f.child())));
    default: break;
  }
  if (is_unary(f.kind())) return Formula::unary(f.kind(), bullet_to_circ(f.child()));
  return Formula::binary(f.kind(), bullet_to_circ(f.lhs()), bullet_to_circ(f.rhs()));
}

}  // namespace pfw
