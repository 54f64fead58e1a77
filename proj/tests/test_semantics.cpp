#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "pfw/builtins.hpp"
#include "pfw/operators.hpp"
#include "pfw/parser.hpp"
#include "pfw/semantics.hpp"

using namespace pfw;

namespace {

Rational q(long long n, long long d = 1) { return rat(n, d); }

// Direct recursive evaluation through the chain's value-level operations.
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

/// Brute-force consequence on a finite model. Degree mode quantifies over every a ∈ A.
bool oracle_holds(const Model& m, const std::vector<Formula>& premises, const Formula& goal, Mode mode) {
  std::set<std::string> vs = variables(goal);
  for (const auto& p : premises) {
    auto more = variables(p);
    vs.insert(more.begin(), more.end());
  }
  bool ok = true;
  for_each_assignment(m.chain, {vs.begin(), vs.end()}, [&](const Assignment& a) {
    std::vector<Rational> pv;
    for (const auto& p : premises) pv.push_back(oracle_eval(m, p, a));
    const Rational g = oracle_eval(m, goal, a);
    if (mode == Mode::Truth) {
      if (std::all_of(pv.begin(), pv.end(), [](const Rational& v) { return v == 1; }) && g != 1) ok = false;
    } else {
      for (const auto& d : m.chain.elements())
        if (std::all_of(pv.begin(), pv.end(), [&](const Rational& v) { return d <= v; }) && !(d <= g)) ok = false;
    }
    return ok;
  });
  return ok;
}

Formula random_formula(std::mt19937& rng, int depth, bool with_circ) {
  static const char* names[] = {"p", "q", "r"};
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 12);
  auto sub = [&] { return random_formula(rng, depth - 1, with_circ); };
  switch (pick(rng)) {
    case 0:
    case 1:
    case 2: return var(names[std::uniform_int_distribution<int>(0, 2)(rng)]);
    case 3: return std::uniform_int_distribution<int>(0, 3)(rng) ? var("p") : zero();
    case 4: return neg(sub());
    case 5: return with_circ ? circ(sub()) : delta(sub());
    case 6: return meet(sub(), sub());
    case 7: return fuse(sub(), sub());
    case 8: return join(sub(), sub());
    case 9:
    case 10: return imp(sub(), sub());
    case 11: return delta(sub());
    default: return iff(sub(), sub());
  }
}

std::vector<Model> finite_models() {
  std::vector<Model> out;
  for (const char* name : {"B2", "L3", "G3", "L4", "G4", "L5", "G5", "NM6", "L3G3"}) {
    const Chain c = builtin_chain(name);
    for (const auto& op : enumerate_ops(c)) out.emplace_back(c, op, dual(op));
  }
  out.emplace_back(Chain::finite_ordinal_sum({{Family::Godel, 3}, {Family::Lukasiewicz, 4}}, "G3L4"));
  return out;
}

Model lp_crisp() {
  const Chain lp = builtin_chain("LP");
  return Model(lp, crisp_op(lp, q(3, 4)));
}

Model ll_identity() {
  const Chain ll = builtin_chain("LL");
  return Model(ll, piecewise_op(ll, {{q(1, 2), q(1, 2)}, {1, 1}}));
}

Model lg_max() {
  const Chain lg = builtin_chain("LG");
  return Model(lg, max_op(lg));
}

Model l3_unique() {
  const Chain l3 = builtin_chain("L3");
  return Model(l3, unique_op(l3));
}

std::string kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "none";
}

}  // namespace

TEST(Evaluate, PropagationFailureOnLukasiewiczProduct) {
  EXPECT_EQ(evaluate(lp_crisp(), parse("(O p /\\ O q) -> O (p & q)"), {{"p", q(5, 6)}, {"q", q(3, 4)}}), 0);
  EXPECT_EQ(builtin_chain("LP").tnorm(q(5, 6), q(3, 4)), q(2, 3));
}

TEST(Evaluate, SquaredExcludedMiddleOnDoubleLukasiewicz) {
  const Model m = ll_identity();
  EXPECT_EQ(evaluate(m, parse("O p -> (p\\/~p)&(p\\/~p)"), {{"p", q(3, 5)}}), q(9, 10));
  EXPECT_EQ(evaluate(m, parse("(p\\/~p)&(p\\/~p)"), {{"p", q(3, 5)}}), q(1, 2));
}

TEST(Evaluate, TopConstantAndErrors) {
  for (const char* name : {"B2", "L5", "LG", "P"}) EXPECT_EQ(evaluate(Model(builtin_chain(name)), parse("1"), {}), 1);
  EXPECT_EQ(kind_of([] { evaluate(Model(builtin_chain("L3")), parse("p -> q"), {{"p", 1}}); }), "UnboundVariable");
  EXPECT_EQ(kind_of([] { evaluate(Model(builtin_chain("L3")), parse("O p"), {{"p", 1}}); }), "OperatorNotBound");
  EXPECT_EQ(kind_of([] { evaluate(Model(builtin_chain("L3")), parse("p"), {{"p", q(1, 3)}}); }), "OutOfCarrier");
}

TEST(Evaluate, AgreesWithRecursiveOracle) {
  std::mt19937 rng(5);
  for (const auto& m : finite_models()) {
    for (int i = 0; i < 60; ++i) {
      const Formula f = random_formula(rng, 4, m.circ.has_value());
      const auto& el = m.chain.elements();
      std::uniform_int_distribution<std::size_t> pick(0, el.size() - 1);
      Assignment a{{"p", el[pick(rng)]}, {"q", el[pick(rng)]}, {"r", el[pick(rng)]}};
      EXPECT_EQ(evaluate(m, f, a), oracle_eval(m, f, a)) << render(f);
    }
  }
  std::mt19937_64 rng64(5);
  for (const Model& m : {lp_crisp(), ll_identity(), lg_max(), Model(builtin_chain("P"))}) {
    for (int i = 0; i < 300; ++i) {
      const Formula f = random_formula(rng, 4, m.circ.has_value());
      Assignment a{{"p", random_unit_rational(rng64, 24)}, {"q", random_unit_rational(rng64, 24)},
                   {"r", random_unit_rational(rng64, 24)}};
      EXPECT_EQ(evaluate(m, f, a), oracle_eval(m, f, a)) << render(f);
    }
  }
}

TEST(Truth, ConsistencyAxiomHoldsOnEveryModel) {
  const Formula a1 = parse("~(p /\\ ~p /\\ O p)");
  for (const auto& m : finite_models()) {
    if (!m.circ) continue;
    EXPECT_EQ(tautology(m, a1).verdict, Verdict::Holds) << m.label();
  }
  for (const Model& m : {lp_crisp(), ll_identity(), lg_max()}) EXPECT_NE(tautology(m, a1).verdict, Verdict::Fails);
}

TEST(Truth, ExplosiveOnLukasiewiczThree) {
  const auto r = truth_consequence({l3_unique()}, {parse("p"), parse("~p")}, parse("q"));
  EXPECT_EQ(r.verdict, Verdict::Holds);
  EXPECT_EQ(r.checked, 9u);
}

TEST(Truth, ExcludedMiddleGuardFailsUnderMaximalOperator) {
  const Model m = lg_max();
  const Formula f = parse("O p -> (p \\/ ~p)");
  const auto r = tautology(m, f);
  ASSERT_EQ(r.verdict, Verdict::Fails);
  ASSERT_EQ(r.assignment.size(), 1u);
  const Rational p = r.assignment[0].second;
  EXPECT_TRUE(m.chain.n_set().contains(p));
  EXPECT_EQ(oracle_eval(m, f, {{"p", p}}), *r.goal_value);
  EXPECT_LT(*r.goal_value, 1);
  EXPECT_EQ(r.grid_denominator, 60);
  EXPECT_EQ(evaluate(m, f, {{"p", q(3, 4)}}), q(3, 4));
}

TEST(Degree, ParaconsistentOnLukasiewiczThree) {
  const auto r = degree_consequence({l3_unique()}, {parse("p"), parse("~p")}, parse("q"));
  ASSERT_EQ(r.verdict, Verdict::Fails);
  EXPECT_EQ(r.assignment[0], (std::pair<std::string, Rational>{"p", q(1, 2)}));
  EXPECT_EQ(*r.witness_a, q(1, 2));
  EXPECT_NE(r.render_records().find("witness_a=1/2"), std::string::npos);
}

TEST(Degree, ExplosiveOnGodelThree) {
  EXPECT_EQ(degree_consequence({Model(builtin_chain("G3"))}, {parse("p"), parse("~p")}, parse("q")).verdict,
            Verdict::Holds);
}

TEST(Degree, GentleExplosionOnLukasiewiczThree) {
  EXPECT_EQ(degree_consequence({l3_unique()}, {parse("O p"), parse("p"), parse("~p")}, parse("q")).verdict,
            Verdict::Holds);
}

TEST(Consequence, AgreesWithBruteForceAndCountermodelsReverify) {
  std::mt19937 rng(17);
  std::size_t fails = 0, holds = 0;
  for (const auto& m : finite_models()) {
    for (int i = 0; i < 40; ++i) {
      std::vector<Formula> prem;
      const int k = std::uniform_int_distribution<int>(0, 2)(rng);
      for (int j = 0; j < k; ++j) prem.push_back(random_formula(rng, 3, m.circ.has_value()));
      const Formula goal = random_formula(rng, 3, m.circ.has_value());
      for (Mode mode : {Mode::Truth, Mode::Degree}) {
        const auto r = consequence(m, prem, goal, mode);
        ASSERT_NE(r.verdict, Verdict::Unknown);
        EXPECT_EQ(r.verdict == Verdict::Holds, oracle_holds(m, prem, goal, mode)) << m.label() << " " << render(goal);
        if (r.verdict == Verdict::Holds) {
          ++holds;
          continue;
        }
        ++fails;
        Assignment a(r.assignment.begin(), r.assignment.end());
        Rational low = 1;
        for (const auto& p : prem) low = std::min(low, oracle_eval(m, p, a));
        const Rational g = oracle_eval(m, goal, a);
        EXPECT_EQ(g, *r.goal_value);
        if (mode == Mode::Truth) {
          EXPECT_EQ(low, 1);
          EXPECT_LT(g, 1);
        } else {
          EXPECT_EQ(*r.witness_a, low);
          EXPECT_GT(low, g);
        }
      }
    }
  }
  EXPECT_GT(fails, 50u);
  EXPECT_GT(holds, 50u);
}

TEST(Consequence, StandardChainCountermodelsReverify) {
  std::mt19937 rng(23);
  for (const Model& m : {lp_crisp(), ll_identity(), lg_max(), Model(builtin_chain("G"))}) {
    std::size_t fails = 0;
    for (int i = 0; i < 25; ++i) {
      const Formula goal = random_formula(rng, 3, m.circ.has_value());
      const auto r = tautology(m, goal);
      if (r.verdict != Verdict::Fails) {
        EXPECT_TRUE(r.verdict == Verdict::Unknown || variables(goal).empty());
        continue;
      }
      ++fails;
      Assignment a(r.assignment.begin(), r.assignment.end());
      EXPECT_LT(oracle_eval(m, goal, a), 1);
    }
    EXPECT_GT(fails, 0u) << m.label();
  }
}

TEST(Consequence, ParallelSearchIsDeterministic) {
  std::mt19937 rng(29);
  const Chain c = builtin_chain("L5");
  const Model m(c, unique_op(c));
  SearchOptions par;
  par.jobs = 4;
  for (int i = 0; i < 40; ++i) {
    const Formula goal = random_formula(rng, 4, true);
    const auto a = consequence(m, {}, goal, Mode::Truth);
    const auto b = consequence(m, {}, goal, Mode::Truth, par);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.assignment, b.assignment);
    EXPECT_EQ(a.render_records(), b.render_records());
  }
}

TEST(Consequence, SeveralModelsAndSampling) {
  const auto r = degree_consequence({Model(builtin_chain("G3")), l3_unique()}, {parse("p"), parse("~p")}, parse("q"));
  EXPECT_EQ(r.verdict, Verdict::Fails);
  EXPECT_NE(r.chain.find("L3"), std::string::npos);
  SearchOptions tiny;
  tiny.finite_var_cap = 1;
  tiny.samples = 50;
  const auto s = tautology(Model(builtin_chain("G3")), parse("(p -> q) \\/ (q -> p)"), tiny);
  EXPECT_TRUE(s.sampled);
  EXPECT_EQ(s.verdict, Verdict::Unknown);
  EXPECT_EQ(s.checked, 50u);
}

TEST(Lfi, ReferenceModelsAreLfis) {
  for (const Model& m : {l3_unique(), lg_max(), lp_crisp()}) {
    const auto rep = check_lfi(m);
    EXPECT_TRUE(rep.is_lfi()) << m.label() << "\n" << rep.render();
  }
  const auto rep = check_lfi(l3_unique());
  EXPECT_NE(rep.clauses[0].detail.find("p=1/2"), std::string::npos);
  EXPECT_NE(rep.clauses[1].detail.find("p=1 "), std::string::npos);
  EXPECT_NE(rep.clauses[2].detail.find("p=0 "), std::string::npos);
}

TEST(Lfi, PseudoComplementedChainsAreNotParaconsistent) {
  // Every ○ on G3 (there are three) leaves clause (i) failing.
  const Chain g3 = builtin_chain("G3");
  for (const auto& op : enumerate_ops(g3)) {
    const auto rep = check_lfi(Model(g3, op));
    EXPECT_EQ(rep.clauses[0].status, Verdict::Fails);
    EXPECT_FALSE(rep.is_lfi());
  }
  const Chain b2 = builtin_chain("B2");
  EXPECT_EQ(check_lfi(Model(b2, UnaryOp::from_values(b2, {1, 1}, Role::Consistency))).clauses[0].status, Verdict::Fails);
  for (const char* name : {"G4", "G5", "NM6"}) {
    const Chain c = builtin_chain(name);
    EXPECT_EQ(check_lfi(Model(c, min_op(c))).clauses[0].status == Verdict::Fails, c.is_smtl()) << name;
  }
}

TEST(Lfi, GentleExplosionNeverFailsForValidOperators) {
  for (const auto& m : finite_models())
    if (m.circ && m.chain.size() <= 5) {
      EXPECT_FALSE(gentle_explosion_violation(m)) << m.label();
    }
  const Chain l3 = builtin_chain("L3");
  EXPECT_EQ(gentle_explosion_violation(Model(l3, UnaryOp::from_values(l3, {1, 1, 1}, Role::Consistency))), q(1, 2));
  const Chain ll = builtin_chain("LL");
  const UnaryOp leak = UnaryOp::from_piecewise(ll, Piecewise({0, q(1, 4), 1}, {1, 1, 1}, {{1, 1}, {1, 1}}),
                                               Role::Consistency, OpKind::Piecewise);
  const auto bad = gentle_explosion_violation(Model(ll, leak));
  ASSERT_TRUE(bad);
  EXPECT_GT(std::min({*bad, ll.negation(*bad), leak(*bad)}), 0);
}

TEST(Propagation, MeetAndImplicationOnEveryFiniteOperator) {
  for (const auto& m : finite_models()) {
    if (!m.circ || m.chain.size() > 5) continue;
    for (Connective c : {Connective::And, Connective::Imp, Connective::Zero}) {
      const auto r = check_propagation(m, c);
      EXPECT_EQ(r.verdict, Verdict::Holds) << m.label() << " " << to_string(c);
    }
  }
}

TEST(Propagation, FusionCounterpairOnLukasiewiczProduct) {
  const auto r = check_propagation(lp_crisp(), Connective::Fuse);
  ASSERT_EQ(r.verdict, Verdict::Fails);
  EXPECT_EQ(r.pair->first, q(5, 6));
  EXPECT_EQ(r.pair->second, q(3, 4));
  EXPECT_EQ(*r.value, 0);
  EXPECT_NE(r.render().find("pair 5/6 3/4"), std::string::npos);
}

TEST(Propagation, StandardChainsAtExactPairs) {
  for (const Model& m : {lp_crisp(), ll_identity(), lg_max()})
    for (Connective c : {Connective::And, Connective::Imp}) {
      const auto r = check_propagation(m, c, 99);
      EXPECT_EQ(r.verdict, Verdict::Holds) << m.label();
      EXPECT_GE(r.checked, 10000u);
    }
}

TEST(Propagation, FusionForExtremalOperators) {
  for (const char* name : {"B2", "L3", "G3", "L5", "G5", "NM6", "L3G3", "LG", "LP", "LL", "L", "G", "P"}) {
    const Chain c = builtin_chain(name);
    for (const UnaryOp& op : {min_op(c), max_op(c)}) {
      const auto r = check_propagation(Model(c, op), Connective::Fuse);
      EXPECT_EQ(r.verdict, Verdict::Holds) << name << " " << to_string(op.kind());
    }
  }
  // A finite discretization of the crisp-3/4 failure.
  const Chain c = Chain::finite_ordinal_sum({{Family::Lukasiewicz, 3}, {Family::Lukasiewicz, 5}}, "L3L5");
  EXPECT_EQ(check_propagation(Model(c, crisp_op(c, q(3, 4))), Connective::Fuse).verdict, Verdict::Fails);
}

TEST(Propagation, CrispOnInvolutiveChainsPropagatesFusion) {
  for (const char* name : {"B2", "L3", "L4", "L5", "NM6"}) {
    const Chain c = builtin_chain(name);
    for (const auto& op : enumerate_ops(c)) EXPECT_EQ(check_propagation(Model(c, op), Connective::Fuse).verdict, Verdict::Holds);
  }
}

TEST(Dat, IdentityOnUpperHalfSatisfiesAxiom) {
  EXPECT_TRUE(check_dat_axiom(ll_identity()).holds);
  const Model m = ll_identity();
  const Formula guard = parse("O p -> (p \\/ ~p)");
  for (long long k = 0; k <= 60; ++k) EXPECT_EQ(evaluate(m, guard, {{"p", q(k, 60)}}), 1);
  EXPECT_NE(tautology(m, guard).verdict, Verdict::Fails);
}

TEST(Dat, MaximalOperatorOnLukasiewiczGodelViolatesAxiom) {
  const Model m = lg_max();
  const auto r = check_dat_axiom(m);
  ASSERT_FALSE(r.holds);
  const Rational x = *r.witness;
  EXPECT_GT((*m.circ)(x), m.chain.join(x, m.chain.negation(x)));
  EXPECT_GT((*m.circ)(q(3, 4)), m.chain.join(q(3, 4), m.chain.negation(q(3, 4))));
}

TEST(Dat, MinimalOperatorAlwaysSatisfiesAxiom) {
  for (const char* name : {"B2", "L3", "G3", "L5", "G5", "NM6", "L3G3", "W15", "LG", "LP", "LL", "L", "G", "P"}) {
    const Chain c = builtin_chain(name);
    EXPECT_TRUE(check_dat_axiom(Model(c, min_op(c))).holds) << name;
  }
}

TEST(Pdat, PowersOnDoubleLukasiewicz) {
  const Model m = ll_identity();
  const auto one = pdat_search(m, parse("p \\/ ~p"));
  EXPECT_EQ(one.k, 1u);
  EXPECT_TRUE(one.refuted.empty());
  const auto two = pdat_search(m, parse("(p \\/ ~p) & (p \\/ ~p)"));
  EXPECT_EQ(two.k, 2u);
  ASSERT_EQ(two.refuted.size(), 1u);
  EXPECT_EQ(two.refuted[0].first, 1u);
  const auto& cm = two.refuted[0].second;
  EXPECT_LT(evaluate(m, parse("O p -> (p \\/ ~p) & (p \\/ ~p)"), Assignment(cm.assignment.begin(), cm.assignment.end())), 1);
  EXPECT_EQ(kind_of([&] { pdat_search(m, parse("O p")); }), "NotClassical");
  EXPECT_EQ(kind_of([] { pdat_search(lg_max(), parse("p")); }), "DatAxiomFails");
}

TEST(Pdat, ClassicalTautologiesOnBooleanChain) {
  const Chain b2 = builtin_chain("B2");
  const Model m(b2, min_op(b2));
  for (const char* t : {"p \\/ ~p", "(p -> q) \\/ (q -> p)", "((p -> q) -> p) -> p", "~(p /\\ ~p) \\/ (p \\/ ~p)",
                        "p -> (q -> p)"}) {
    EXPECT_TRUE(classical_taut(parse(t))) << t;
    const auto r = pdat_search(m, parse(t));
    EXPECT_EQ(r.k, 1u) << t;
    EXPECT_TRUE(r.certified);
  }
  EXPECT_FALSE(classical_taut(parse("p -> q")));
  const auto r = pdat_search(m, parse("p -> q"));
  EXPECT_FALSE(r.k);
  EXPECT_EQ(r.refuted.size(), 8u);
}

TEST(ClassicalTaut, AgreesWithBooleanOracle) {
  std::mt19937 rng(31);
  const Model b2(builtin_chain("B2"));
  for (int i = 0; i < 400; ++i) {
    Formula f = random_formula(rng, 4, false);
    if (!is_classical_language(f)) continue;
    EXPECT_EQ(classical_taut(f), oracle_holds(b2, {}, f, Mode::Truth)) << render(f);
  }
  Formula big = var("v0");
  for (int i = 1; i <= 20; ++i) big = join(big, var("v" + std::to_string(i)));
  EXPECT_EQ(kind_of([&] { classical_taut(big); }), "TooManyVariables");
  EXPECT_EQ(kind_of([] { classical_taut(parse("D p")); }), "NotClassical");
}

TEST(Bridge, Examples) {
  const auto l3 = bridge_check(l3_unique(), {parse("p"), parse("~p")}, parse("q"));
  EXPECT_TRUE(l3.agree);
  EXPECT_EQ(l3.degree, Verdict::Fails);
  const auto g3 = bridge_check(Model(builtin_chain("G3")), {parse("p"), parse("~p")}, parse("q"));
  EXPECT_TRUE(g3.agree);
  EXPECT_EQ(g3.degree, Verdict::Holds);
}

TEST(Bridge, RandomizedAgreement) {
  std::mt19937 rng(37);
  const auto models = finite_models();
  std::size_t queries = 0;
  for (int i = 0; i < 1200; ++i) {
    const Model& m = models[std::uniform_int_distribution<std::size_t>(0, models.size() - 1)(rng)];
    std::vector<Formula> gamma;
    const int k = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int j = 0; j < k; ++j) gamma.push_back(random_formula(rng, 3, m.circ.has_value()));
    const Formula phi = random_formula(rng, 4, m.circ.has_value());
    const auto b = bridge_check(m, gamma, phi);
    EXPECT_TRUE(b.agree) << m.label() << " " << render(phi);
    ++queries;
  }
  EXPECT_GE(queries, 1000u);
}

TEST(Deduction, LocalDeductionOnSmallChains) {
  std::mt19937 rng(41);
  std::size_t instances = 0, holding = 0;
  for (const char* name : {"L3", "L5", "G3"}) {
    const Chain c = builtin_chain(name);
    const Model m(c, enumerate_ops(c).back());
    for (int i = 0; i < 40; ++i) {
      std::vector<Formula> sigma;
      const int k = std::uniform_int_distribution<int>(0, 2)(rng);
      for (int j = 0; j < k; ++j) sigma.push_back(random_formula(rng, 2, true));
      const Formula phi = random_formula(rng, 3, true), psi = random_formula(rng, 3, true);
      const auto d = local_deduction_check(m, sigma, phi, psi);
      EXPECT_TRUE(d.agree) << name << " " << render(phi) << " / " << render(psi);
      auto with_phi = sigma;
      with_phi.push_back(phi);
      EXPECT_EQ(d.holds, oracle_holds(m, with_phi, psi, Mode::Truth));
      ++instances;
      holding += d.holds;
    }
  }
  EXPECT_GE(instances, 100u);
  EXPECT_GT(holding, 0u);
  const auto l3 = local_deduction_check(l3_unique(), {}, parse("p"), parse("p & p"));
  EXPECT_EQ(l3.n, 2u);
  EXPECT_EQ(kind_of([] { local_deduction_check(lg_max(), {}, parse("p"), parse("p")); }), "StandardChainUnsupported");
}
