#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "pfw/builtins.hpp"
#include "pfw/fixtures.hpp"
#include "pfw/hilbert.hpp"
#include "pfw/operators.hpp"
#include "pfw/parser.hpp"
#include "pfw/semantics.hpp"

using namespace pfw;

namespace {

Rational oracle_eval(const Model& m, const Formula& f, const Assignment& a) {
  const Chain& c = m.chain;
  auto sub = [&](const Formula& g) { return oracle_eval(m, g, a); };
  switch (f.kind()) {
    case Kind::Var: return a.at(f.name());
    case Kind::Zero: return 0;
    case Kind::One: return 1;
    case Kind::Not: return c.negation(sub(f.child()));
    case Kind::Circ: return (*m.circ)(sub(f.child()));
    case Kind::Bullet: return (*m.bullet)(sub(f.child()));
    case Kind::Delta: return c.delta(sub(f.child()));
    case Kind::And: return c.meet(sub(f.lhs()), sub(f.rhs()));
    case Kind::Fuse: return c.tnorm(sub(f.lhs()), sub(f.rhs()));
    case Kind::Or: return c.join(sub(f.lhs()), sub(f.rhs()));
    case Kind::Imp: return c.residuum(sub(f.lhs()), sub(f.rhs()));
    case Kind::Iff: {
      const Rational x = sub(f.lhs()), y = sub(f.rhs());
      return c.meet(c.residuum(x, y), c.residuum(y, x));
    }
  }
  return 0;
}

void for_each_assignment(const Chain& c, const std::vector<std::string>& vars,
                         const std::function<bool(const Assignment&)>& f) {
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = c.value(idx[i]);
    if (!f(a)) return;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == c.size()) idx[i++] = 0;
    if (i == idx.size()) return;
  }
}

/// Brute-force truth (or degree) consequence on a finite model.
bool oracle_holds(const Model& m, const std::vector<Formula>& premises, const Formula& goal, Mode mode) {
  std::set<std::string> vs = variables(goal);
  for (const auto& p : premises) {
    auto more = variables(p);
    vs.insert(more.begin(), more.end());
  }
  bool ok = true;
  for_each_assignment(m.chain, {vs.begin(), vs.end()}, [&](const Assignment& a) {
    Rational low = 1;
    for (const auto& p : premises) low = std::min(low, oracle_eval(m, p, a));
    const Rational g = oracle_eval(m, goal, a);
    ok = mode == Mode::Truth ? (low != 1 || g == 1) : low <= g;
    return ok;
  });
  return ok;
}

const Binding& fresh() {
  static const Binding b{{"phi", var("p")}, {"psi", var("q")}, {"chi", var("r")}, {"delta", var("s")}};
  return b;
}

/// Every finite chain of size ≤ 6 with every operator, paired with its dual; W15 with its
/// single operator.
const std::vector<Model>& model_pool() {
  static const std::vector<Model> pool = [] {
    std::vector<Model> out;
    for (const char* name : {"B2", "L3", "G3", "L4", "G4", "L5", "G5", "NM6", "L3G3"}) {
      const Chain c = builtin_chain(name);
      for (const auto& op : enumerate_ops(c)) out.emplace_back(c, op, dual(op));
    }
    const Chain w = builtin_chain("W15");
    out.emplace_back(w, min_op(w), dual(min_op(w)));
    return out;
  }();
  return pool;
}

std::vector<Model> applicable(const Profile& p, std::size_t max_size = 16) {
  std::vector<Model> out;
  for (const auto& m : model_pool())
    if (m.chain.size() <= max_size && !profile_mismatch(p, m)) out.push_back(m);
  return out;
}

/// Tautology check memoized per (model, formula): many profiles share axioms.
bool taut_cached(const Model& m, const Formula& f) {
  static std::map<std::pair<std::string, std::string>, bool> memo;
  std::string id = m.chain.label();
  for (const auto* op : {m.circ ? &*m.circ : nullptr, m.bullet ? &*m.bullet : nullptr}) {
    id += "|";
    if (op)
      for (auto v : op->table()) id += std::to_string(v) + ",";
  }
  const auto key = std::make_pair(id, render(f));
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  return memo[key] = oracle_holds(m, {}, f, Mode::Truth);
}

std::vector<std::string> truth_profiles() {
  std::vector<std::string> out;
  for (const auto& n : builtin_profile_names())
    if (n.find("<=") == std::string::npos) out.push_back(n);
  return out;
}

}  // namespace

TEST(Profiles, UnicodeAliasesResolveToCanonicalNames) {
  EXPECT_EQ(load_profile("MTL○min≤").name, "MTL_o_min<=");
  EXPECT_EQ(load_profile("Ł○¬¬").name, "L_o_nn");
  EXPECT_EQ(load_profile("MTL○¬¬⁺").name, "MTL_o_nn+");
  EXPECT_EQ(load_profile("MTLΔ").name, "MTL_D");
  EXPECT_EQ(load_profile("(BL○max)≤").name, "BL_o_max<=");
  EXPECT_EQ(load_profile("Π•c").name, "P_b_c");
  EXPECT_EQ(load_profile("MTL•").name, "MTL_b");
  EXPECT_EQ(load_profile("SMTL¬¬").name, "SMTL_nn");
  for (const auto& n : builtin_profile_names()) EXPECT_EQ(load_profile(n).name, n);
}

TEST(Profiles, UnknownNamesAreRejected) {
  for (const char* bad : {"", "XYZ", "MTL_q", "MTL_o_zz", "MTL_b_dat", "MTL<=<=", "MTLo"}) {
    try {
      load_profile(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), "UnknownProfile") << bad;
    }
  }
}

TEST(Profiles, AxiomAndRuleInventory) {
  const Profile mtl = load_profile("MTL");
  EXPECT_EQ(mtl.axioms.size(), 10u);
  EXPECT_EQ(mtl.rules.size(), 1u);
  EXPECT_EQ(load_profile("NM").axioms.size(), 12u);
  EXPECT_TRUE(load_profile("P").axiom("C"));
  EXPECT_TRUE(load_profile("SBL").axiom("PC"));
  EXPECT_FALSE(load_profile("BL").axiom("PC"));

  const Profile lo = load_profile("MTL_o");
  for (const char* id : {"oA1", "oA2", "oA3"}) EXPECT_TRUE(lo.axiom(id)) << id;
  ASSERT_TRUE(lo.rule("Cong"));
  EXPECT_TRUE(lo.rule("Cong")->or_form);
  EXPECT_TRUE(lo.rule("Coh")->or_form);

  const Profile plus = load_profile("MTL_o_nn+");
  for (const char* id : {"B1", "B2", "B3", "B4"}) EXPECT_TRUE(plus.axiom(id)) << id;
  EXPECT_TRUE(plus.rule("ONec") && plus.rule("NN"));
  EXPECT_FALSE(plus.axiom("oA1"));

  EXPECT_TRUE(load_profile("BL_o_max").axiom("oMaxBL"));
  EXPECT_FALSE(load_profile("MTL_o_max").axiom("oMaxBL"));
  EXPECT_TRUE(load_profile("MTL_o_max").rule("NNo"));
  EXPECT_TRUE(load_profile("MTL_b_min").rule("bNN"));
  EXPECT_TRUE(load_profile("MTL_b_max").axiom("bmax"));
  EXPECT_TRUE(load_profile("MTL_D").rule("DNec"));
}

TEST(Profiles, DegreeCompanionsRestrictEveryRuleButAdjunction) {
  for (const auto& n : truth_profiles()) {
    const Profile t = load_profile(n), d = load_profile(n + "<=");
    EXPECT_EQ(d.axioms.size(), t.axioms.size());
    EXPECT_EQ(d.mode(), Mode::Degree);
    ASSERT_TRUE(d.rule("MP-r"));
    EXPECT_EQ(d.rule("MP-r")->restricted, (std::vector<bool>{false, true}));
    ASSERT_TRUE(d.rule("Adj"));
    EXPECT_FALSE(d.rule("Adj")->any_restricted());
    EXPECT_FALSE(d.rule("MP"));
    for (const auto& r : t.rules) {
      if (r.id == "MP") continue;
      const RuleDef* rr = d.rule(r.id + "-r");
      ASSERT_TRUE(rr) << n << " " << r.id;
      EXPECT_EQ(rr->restricted, std::vector<bool>(r.premises.size(), true));
    }
  }
}

TEST(Proofs, AllFixturesVerify) {
  const auto proofs = parse_proof_file(fixtures::kProofs);
  EXPECT_GE(proofs.size(), 20u);
  for (const auto& p : proofs) {
    const auto r = verify_proof(p);
    EXPECT_TRUE(r.ok) << p.name << ": line " << r.line << " " << r.error << " " << r.reason;
    EXPECT_EQ(r.deps.size(), p.lines.size());
  }
}

TEST(Proofs, DependencySetsFollowPremises) {
  const auto p = parse_proof_file(fixtures::kProofs);
  auto find = [&](const std::string& name) {
    for (const auto& s : p)
      if (s.name == name) return s;
    throw std::runtime_error(name);
  };
  const auto r = verify_proof(find("transitivity"));
  ASSERT_TRUE(r.ok);
  EXPECT_EQ(r.deps[2], (std::set<std::size_t>{}));
  EXPECT_EQ(r.deps[3], (std::set<std::size_t>{1}));
  EXPECT_EQ(r.deps[4], (std::set<std::size_t>{1, 2}));
  EXPECT_EQ(r.hypotheses.size(), 2u);
  const auto b = verify_proof(find("b1-to-a1"));
  ASSERT_TRUE(b.ok);
  for (const auto& d : b.deps) EXPECT_TRUE(d.empty());
}

TEST(Proofs, MutationsAreRejectedAtTheIntendedLine) {
  for (const auto& m : fixtures::mutations()) {
    const auto r = verify_proof(parse_proof(m.text));
    EXPECT_FALSE(r.ok) << m.name;
    EXPECT_EQ(r.line, m.line) << m.name;
    EXPECT_EQ(r.error, m.error) << m.name << ": " << r.reason;
  }
}

TEST(Proofs, CheckerErrorKinds) {
  auto err = [](std::string_view text) { return verify_proof(parse_proof(text)); };
  EXPECT_EQ(err("proof x in MTL\n1. p | premise 1\n2. q | mp 1 5\n").error, "BadReference");
  EXPECT_EQ(err("proof x in MTL\n1. p | rule Cong 1\n").error, "UnknownRule");
  EXPECT_EQ(err("proof x in MTL\n1. O p | premise 1\n").error, "LanguageMismatch");
  EXPECT_EQ(err("proof x in MTL_o\n1. D p | premise 1\n").error, "LanguageMismatch");
  EXPECT_EQ(err("proof x in MTL\n1. p -> p | thm nope\n").error, "UnknownTheorem");
  EXPECT_EQ(err("proof x in MTL_o\n1. O 0 | thm B4\n").error, "UnregisteredTheorem");
  EXPECT_EQ(err("proof x in MTL\n1. p | premise 1\n2. q | premise 1\n").error, "PremiseConflict");
  EXPECT_EQ(err("proof x in MTL\n1. p -> q | axiom A9\n").error, "SchemaMismatch");
  // The ¬¬ rule is stated in ∨-form, so both shapes are accepted; a mismatched side disjunct is not.
  EXPECT_TRUE(err("proof x in MTL_nn\n1. ~~p | premise 1\n2. p | rule NN 1\n").ok);
  EXPECT_EQ(err("proof x in MTL_nn\n1. ~~p \\/ q | premise 1\n2. p \\/ r | rule NN 1\n").error, "SchemaMismatch");
}

TEST(Proofs, SyntaxErrors) {
  for (const char* bad : {"1. p | premise 1\n", "proof x MTL\n", "proof x in MTL\n2. p | premise 1\n",
                          "proof x in MTL\n1. p premise 1\n", "proof x in MTL\n1. p & | premise 1\n",
                          "proof x in MTL\n1. p | by 1\n", "proof x in MTL\n1. p | mp a b\n"}) {
    try {
      parse_proof_file(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), "ProofSyntax") << bad;
    }
  }
  const auto p = parse_proof_file("% comment\nproof x in MTL % trailing\n1. p | premise 1 % note\n");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].lines.size(), 1u);
  EXPECT_THROW(parse_proof("proof a in MTL\nproof b in MTL\n"), Error);
}

TEST(Soundness, AxiomsAreTautologiesOnApplicableChains) {
  for (const auto& n : truth_profiles()) {
    const Profile p = load_profile(n);
    const auto models = applicable(p, 6);
    for (const auto& m : models)
      for (const auto& a : p.axioms)
        EXPECT_TRUE(taut_cached(m, substitute(a.schema.pattern, fresh()))) << n << " " << a.id << " on " << m.label();
  }
  for (const char* n : {"MTL_o_nn+", "WNM_o_nn", "WNM_b_nn", "MTL_nn"}) {
    const Profile p = load_profile(n);
    const Chain w = builtin_chain("W15");
    const Model m(w, min_op(w), dual(min_op(w)));
    ASSERT_FALSE(profile_mismatch(p, m)) << n;
    for (const auto& a : p.axioms)
      EXPECT_TRUE(oracle_holds(m, {}, substitute(a.schema.pattern, fresh()), Mode::Truth)) << n << " " << a.id;
  }
}

TEST(Soundness, RulesPreserveTruthInBothShapes) {
  for (const auto& n : truth_profiles()) {
    const Profile p = load_profile(n);
    const auto models = applicable(p, 5);
    for (const auto& r : p.rules)
      for (int shape = 0; shape < (r.or_form ? 2 : 1); ++shape) {
        auto lift = [&](const Formula& f) { return substitute(shape ? join(f, var("delta")) : f, fresh()); };
        std::vector<Formula> prem;
        for (const auto& f : r.premises) prem.push_back(lift(f));
        for (const auto& m : models)
          EXPECT_TRUE(oracle_holds(m, prem, lift(r.conclusion), Mode::Truth)) << n << " " << r.id << " on " << m.label();
      }
  }
}

TEST(Soundness, AdjunctionPreservesDegrees) {
  const Profile p = load_profile("MTL<=");
  const RuleDef& adj = *p.rule("Adj");
  for (const auto& m : applicable(p, 6)) {
    std::vector<Formula> prem;
    for (const auto& f : adj.premises) prem.push_back(substitute(f, fresh()));
    EXPECT_TRUE(oracle_holds(m, prem, substitute(adj.conclusion, fresh()), Mode::Degree));
  }
  // Unrestricted modus ponens does not preserve degrees.
  EXPECT_FALSE(oracle_holds(Model(builtin_chain("L3")), {var("p"), parse("p -> q")}, var("q"), Mode::Degree));
}

TEST(Soundness, RegisteredTheoremsHoldWhereRegistered) {
  for (const auto& n : truth_profiles()) {
    const Profile p = load_profile(n);
    const auto models = applicable(p, 5);
    for (const auto& t : default_theorems().entries()) {
      if (!t.registered_in(p)) continue;
      for (const auto& m : models)
        EXPECT_TRUE(taut_cached(m, substitute(t.schema.pattern, fresh()))) << t.name << " in " << n << " on " << m.label();
    }
  }
}

TEST(Bridge, EveryFixtureIsSoundOnApplicableChains) {
  for (const auto& proof : parse_proof_file(fixtures::kProofs)) {
    const auto models = applicable(load_profile(proof.profile));
    ASSERT_FALSE(models.empty()) << proof.name;
    const auto rep = soundness_bridge(proof, models);
    EXPECT_TRUE(rep.ok()) << proof.name << "\n" << rep.render();
    EXPECT_EQ(rep.lines_checked, proof.lines.size() * models.size());
  }
}

TEST(Bridge, NonApplicableChainIsAMismatch) {
  const auto proofs = parse_proof_file(fixtures::kProofs);
  const ProofScript* b1 = nullptr;
  for (const auto& p : proofs)
    if (p.name == "b1-to-a1") b1 = &p;
  ASSERT_TRUE(b1);
  const Chain c = builtin_chain("L3G3");
  for (const auto& op : {max_op(c), min_op(c)}) {
    try {
      soundness_bridge(*b1, {Model(c, op)});
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), "ChainProfileMismatch");
    }
  }
  EXPECT_THROW(soundness_bridge(*b1, {Model(builtin_chain("LG"), max_op(builtin_chain("LG")))}), Error);
  EXPECT_THROW(soundness_bridge(*b1, {Model(builtin_chain("L3"))}), Error);
  EXPECT_THROW(soundness_bridge(parse_proof(fixtures::mutations()[0].text), {Model(builtin_chain("L3"))}), Error);
}

TEST(Bridge, ReportsAnUnsoundTheorem) {
  TheoremStore store = TheoremStore::seeded();
  store.add("lem", "phi \\/ ~phi", [](const Profile&) { return true; }, "nowhere");
  const auto proof = parse_proof("proof bad in MTL\n1. p \\/ ~p | thm lem\n");
  ASSERT_TRUE(verify_proof(proof, store).ok);
  const auto rep = soundness_bridge(proof, {Model(builtin_chain("B2")), Model(builtin_chain("L3"))}, store);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations[0].line, 1u);
  EXPECT_EQ(rep.violations[0].chain, "L3");
}

TEST(Bridge, ApplicabilityFollowsOperatorFamilies) {
  const Chain l3 = builtin_chain("L3");
  const Chain l3g3 = builtin_chain("L3G3");
  EXPECT_FALSE(profile_mismatch(load_profile("L_o_nn"), Model(l3, unique_op(l3))));
  EXPECT_TRUE(profile_mismatch(load_profile("G"), Model(l3)));
  EXPECT_TRUE(profile_mismatch(load_profile("MTL_o"), Model(l3)));
  EXPECT_FALSE(profile_mismatch(load_profile("MTL_o_min"), Model(l3g3, min_op(l3g3))));
  EXPECT_TRUE(profile_mismatch(load_profile("MTL_o_min"), Model(l3g3, max_op(l3g3))));
  EXPECT_FALSE(profile_mismatch(load_profile("MTL_b_min"), Model(l3g3, max_op(l3g3), dual(max_op(l3g3)))));
  EXPECT_TRUE(profile_mismatch(load_profile("MTL_b_max"), Model(l3g3, max_op(l3g3), dual(max_op(l3g3)))));
  EXPECT_TRUE(profile_mismatch(load_profile("MTL_o_c"), Model(l3g3, crisp_op(l3g3, rat(3, 4)))) == std::nullopt);
}

TEST(Translations, BulletToCircIsExactUnderTheDual) {
  std::mt19937 rng(17);
  std::function<Formula(int)> gen = [&](int depth) -> Formula {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 8);
    switch (pick(rng)) {
      case 0: return var("p");
      case 1: return var("q");
      case 2: return zero();
      case 3: return bullet(gen(depth - 1));
      case 4: return neg(gen(depth - 1));
      case 5: return meet(gen(depth - 1), gen(depth - 1));
      case 6: return fuse(gen(depth - 1), gen(depth - 1));
      case 7: return join(gen(depth - 1), gen(depth - 1));
      default: return imp(gen(depth - 1), gen(depth - 1));
    }
  };
  for (const auto& m : model_pool()) {
    if (m.chain.size() > 6) continue;
    for (int i = 0; i < 25; ++i) {
      const Formula f = gen(4);
      const Formula t = bullet_to_circ(f);
      EXPECT_FALSE(contains_kind(t, Kind::Bullet));
      for_each_assignment(m.chain, {"p", "q"}, [&](const Assignment& a) {
        EXPECT_EQ(oracle_eval(m, f, a), oracle_eval(m, t, a)) << render(f);
        return true;
      });
    }
  }
}

TEST(Translations, DualSystemsAreEquivalent) {
  // Pairs L○X ≡ L•Y: the dual of every ○-model is a •-model (not conversely: ¬ can merge
  // distinct ○ on chains with N(A) ≠ ∅), and each side's axioms, translated, are
  // tautologies on the other side's models.
  for (auto [o, b] : std::initializer_list<std::pair<const char*, const char*>>{
           {"MTL_o", "MTL_b"}, {"MTL_o_nn", "MTL_b_nn"}, {"MTL_o_c", "MTL_b_c"}, {"MTL_o_min", "MTL_b_max"},
           {"MTL_o_max", "MTL_b_min"}}) {
    const Profile lo = load_profile(o), lb = load_profile(b);
    std::size_t shared = 0;
    for (const auto& m : model_pool()) {
      if (m.chain.size() > 6) continue;
      const bool in_o = !profile_mismatch(lo, m), in_b = !profile_mismatch(lb, m);
      if (in_o) {
        EXPECT_TRUE(in_b) << o << " vs " << b << " on " << m.label();
        ++shared;
        for (const auto& a : lb.axioms)
          EXPECT_TRUE(oracle_holds(m, {}, bullet_to_circ(substitute(a.schema.pattern, fresh())), Mode::Truth)) << b << " " << a.id;
      }
      if (in_b) {
        for (const auto& a : lo.axioms)
          EXPECT_TRUE(oracle_holds(m, {}, circ_to_bullet(substitute(a.schema.pattern, fresh())), Mode::Truth)) << o << " " << a.id;
      }
    }
    EXPECT_GT(shared, 0u) << o;
  }
  EXPECT_EQ(circ_to_bullet(parse("O p -> p")), parse("~# p -> p"));
  EXPECT_EQ(bullet_to_circ(parse("~# 0")), parse("~~O 0"));
}

TEST(Bridge, IdentityProofOnFiniteLukasiewiczAndGodel) {
  for (const auto& p : parse_proof_file(fixtures::kProofs)) {
    if (p.name != "identity") continue;
    EXPECT_TRUE(soundness_bridge(p, {Model(builtin_chain("L5")), Model(builtin_chain("G5"))}).ok());
  }
}

TEST(Bridge, MinProofAgainstMaxOperatorIsAMismatch) {
  for (const auto& p : parse_proof_file(fixtures::kProofs)) {
    if (p.name != "min-excluded-middle") continue;
    const Chain c = builtin_chain("L3G3");
    EXPECT_TRUE(soundness_bridge(p, {Model(c, min_op(c))}).ok());
    try {
      soundness_bridge(p, {Model(c, max_op(c))});
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), "ChainProfileMismatch");
    }
  }
}
