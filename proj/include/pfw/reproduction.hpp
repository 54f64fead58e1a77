#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pfw/builtins.hpp"
#include "pfw/chain.hpp"
#include "pfw/fixtures.hpp"
#include "pfw/hilbert.hpp"
#include "pfw/operators.hpp"
#include "pfw/parser.hpp"
#include "pfw/semantics.hpp"

namespace pfw {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

namespace repro {

inline std::vector<Chain> chains(std::initializer_list<const char*> names) {
  std::vector<Chain> out;
  for (const char* n : names) out.push_back(builtin_chain(n));
  return out;
}

/// Finite chains with at most five elements.
inline std::vector<Chain> small() { return chains({"B2", "L3", "G3", "L4", "G4", "L5", "G5"}); }

inline Formula random_formula(std::mt19937_64& rng, int depth, bool with_circ) {
  static const char* names[] = {"p", "q", "r"};
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 11);
  auto sub = [&] { return random_formula(rng, depth - 1, with_circ); };
  switch (pick(rng)) {
    case 0:
    case 1:
    case 2: return var(names[std::uniform_int_distribution<int>(0, 2)(rng)]);
    case 3: return zero();
    case 4: return neg(sub());
    case 5: return with_circ ? circ(sub()) : neg(sub());
    case 6: return meet(sub(), sub());
    case 7: return fuse(sub(), sub());
    case 8: return join(sub(), sub());
    default: return imp(sub(), sub());
  }
}

inline CriterionResult algebra_laws() {
  CriterionResult r{1, "algebra laws", true, ""};
  std::size_t tuples = 0;
  for (const auto& c : chains({"B2", "L3", "L5", "G3", "G5", "NM6", "W15"})) {
    const auto rep = verify_laws(c);
    tuples += rep.checked;
    if (!rep.holds) {
      r.pass = false;
      r.detail += c.label() + " violates " + rep.law + "; ";
    }
  }
  std::size_t sampled = 0;
  for (const auto& c : chains({"LG", "LP", "LL"})) {
    const auto rep = verify_adjointness_sampled(c, 10'000);
    sampled += rep.checked;
    if (!rep.holds || rep.checked < 10'000) {
      r.pass = false;
      r.detail += c.label() + " violates adjointness; ";
    }
  }
  r.detail += std::to_string(tuples) + " finite tuples, " + std::to_string(sampled) + " sampled triples";
  return r;
}

inline CriterionResult postulate_equivalence() {
  CriterionResult r{2, "postulate equivalence", true, ""};
  std::size_t maps = 0, agree = 0;
  for (const auto& c : small()) {
    const std::size_t n = c.size();
    std::vector<std::size_t> t(n, 0);
    while (true) {
      const UnaryOp op = UnaryOp::from_indices(c, t, Role::Consistency, OpKind::Table);
      ++maps;
      agree += validate_c(c, op).valid == validate_algebraic(c, op).valid;
      std::size_t i = 0;
      while (i < n && ++t[i] == n) t[i++] = 0;
      if (i == n) break;
    }
  }
  r.pass = maps == agree;
  r.detail = std::to_string(agree) + "/" + std::to_string(maps) + " maps agree";
  return r;
}

inline CriterionResult uniqueness() {
  CriterionResult r{3, "uniqueness on involutive chains", true, ""};
  for (const auto& c : chains({"L3", "L5", "B2"})) {
    const auto n = enumerate_ops(c).size();
    r.detail += c.label() + ":" + std::to_string(n) + " ";
    r.pass = r.pass && n == 1;
  }
  return r;
}

inline CriterionResult extremality() {
  CriterionResult r{4, "extremality", true, ""};
  std::size_t ops = 0, bad = 0;
  for (const auto& c : small()) {
    const UnaryOp lo = min_op(c), hi = max_op(c);
    for (const auto& op : enumerate_ops(c)) {
      ++ops;
      for (const auto& x : c.elements())
        if (!(lo(x) <= op(x) && op(x) <= hi(x))) {
          ++bad;
          break;
        }
    }
  }
  r.pass = bad == 0 && ops > 0;
  r.detail = std::to_string(ops) + " operators, " + std::to_string(bad) + " violations";
  return r;
}

inline CriterionResult propagation() {
  CriterionResult r{5, "propagation", true, ""};
  auto fail = [&](const std::string& why) {
    r.pass = false;
    r.detail += why + "; ";
  };
  std::size_t finite = 0;
  for (const auto& c : small())
    for (const auto& op : enumerate_ops(c))
      for (Connective k : {Connective::And, Connective::Imp}) {
        ++finite;
        if (check_propagation(Model(c, op), k).verdict != Verdict::Holds) fail(c.label() + " " + to_string(k));
      }
  const Chain lp = builtin_chain("LP"), ll = builtin_chain("LL"), lg = builtin_chain("LG");
  const std::vector<Model> standard{Model(lg, max_op(lg)), Model(lg, min_op(lg)), Model(lp, crisp_op(lp, rat(3, 4))),
                                    Model(lp, max_op(lp)), Model(ll, piecewise_op(ll, {{rat(1, 2), rat(1, 2)}, {1, 1}})),
                                    Model(ll, min_op(ll))};
  for (const auto& m : standard)
    for (Connective k : {Connective::And, Connective::Imp}) {
      const auto p = check_propagation(m, k, 99);
      if (p.verdict != Verdict::Holds || p.checked < 10'000) fail(m.label() + " " + to_string(k));
    }
  for (const auto& c : chains({"B2", "L3", "G3", "L4", "G4", "L5", "G5", "LG", "LP", "LL"}))
    for (const UnaryOp& op : {min_op(c), max_op(c)})
      if (check_propagation(Model(c, op), Connective::Fuse).verdict != Verdict::Holds)
        fail(c.label() + " & with " + to_string(op.kind()));
  const auto cp = check_propagation(standard[2], Connective::Fuse);
  if (!(cp.verdict == Verdict::Fails && cp.pair && cp.pair->first == rat(5, 6) && cp.pair->second == rat(3, 4) &&
        cp.value && *cp.value == 0))
    fail("LP crisp 3/4 counterpair not reproduced");
  else
    r.detail += "LP crisp 3/4: pair (5/6, 3/4) value 0; ";
  r.detail += std::to_string(finite) + " finite checks";
  return r;
}

inline CriterionResult dat_reproduction() {
  CriterionResult r{6, "DAT on LL", true, ""};
  const Chain ll = builtin_chain("LL");
  const Model m(ll, piecewise_op(ll, {{rat(1, 2), rat(1, 2)}, {1, 1}}));
  auto check = [&](bool ok, const std::string& what) {
    r.detail += what + (ok ? " ok; " : " FAILED; ");
    r.pass = r.pass && ok;
  };
  check(check_dat_axiom(m).holds, "axiom");
  SearchOptions grid;
  grid.grid_denominator = 60;
  check(tautology(m, parse("O p -> p \\/ ~p"), grid).verdict != Verdict::Fails, "O p -> p v ~p unrefuted");
  const Formula sq = parse("O p -> (p \\/ ~p) & (p \\/ ~p)");
  check(tautology(m, sq, grid).verdict == Verdict::Fails && evaluate(m, sq, {{"p", rat(3, 5)}}) == rat(9, 10),
        "squared refuted at p=3/5 with value 9/10");
  check(pdat_search(m, parse("p \\/ ~p")).k == std::optional<std::size_t>(1), "k=1");
  check(pdat_search(m, parse("(p \\/ ~p) & (p \\/ ~p)")).k == std::optional<std::size_t>(2), "k=2");
  return r;
}

inline CriterionResult pdat_boolean() {
  CriterionResult r{7, "PDAT on B2", true, ""};
  const Chain b2 = builtin_chain("B2");
  const Model m(b2, min_op(b2));
  for (const char* t : {"p \\/ ~p", "(p -> q) \\/ (q -> p)", "((p -> q) -> p) -> p", "~(p /\\ ~p) \\/ (p \\/ ~p)",
                        "p -> (q -> p)"}) {
    const Formula f = parse(t);
    if (!classical_taut(f) || pdat_search(m, f).k != std::optional<std::size_t>(1)) {
      r.pass = false;
      r.detail += std::string(t) + " failed; ";
    }
  }
  const Formula pq = parse("p -> q");
  const bool refuted = !classical_taut(pq) && !pdat_search(m, pq, 8).k;
  r.pass = r.pass && refuted;
  r.detail += refuted ? "5 tautologies k=1, p -> q refuted up to k=8" : "p -> q not refuted";
  return r;
}

inline CriterionResult quotient_collapse() {
  CriterionResult r{8, "quotient of W15", false, ""};
  const Chain w = builtin_chain("W15");
  if (!w.n_set().empty()) {
    r.detail = "W15 has x < 1 with ~x = 0";
    return r;
  }
  std::vector<Rational> f;
  for (int i = 12; i <= 15; ++i) f.push_back(rat(i, 15));
  const Quotient q = quotient_by_filter(w, make_filter(w, f));
  const bool laws = verify_laws(q.chain).holds;
  std::size_t witnesses = 0;
  for (std::size_t z = 0; z + 1 < q.chain.size(); ++z) witnesses += q.chain.neg(z) == 0;
  r.pass = laws && witnesses > 0;
  r.detail = std::to_string(q.chain.size()) + "-element quotient, laws " + (laws ? "hold" : "fail") + ", " +
             std::to_string(witnesses) + " element(s) z < 1 with ~z = 0";
  return r;
}

inline CriterionResult lfi() {
  CriterionResult r{9, "LFI clauses", true, ""};
  const Chain l3 = builtin_chain("L3"), lg = builtin_chain("LG"), lp = builtin_chain("LP"), g3 = builtin_chain("G3");
  for (const Model& m : {Model(l3, unique_op(l3)), Model(lg, max_op(lg)), Model(lp, crisp_op(lp, rat(3, 4)))}) {
    const bool ok = check_lfi(m).is_lfi();
    r.pass = r.pass && ok;
    r.detail += m.chain.label() + (ok ? " lfi; " : " NOT lfi; ");
  }
  bool g3_fails = true;
  for (const auto& op : enumerate_ops(g3)) g3_fails = g3_fails && check_lfi(Model(g3, op)).clauses[0].status == Verdict::Fails;
  r.pass = r.pass && g3_fails;
  r.detail += g3_fails ? "G3 clause (i) fails" : "G3 clause (i) does not fail";
  return r;
}

inline CriterionResult duality() {
  CriterionResult r{10, "duality", true, ""};
  std::size_t ops = 0, bad = 0;
  for (const auto& c : small())
    for (const auto& op : enumerate_ops(c)) {
      ++ops;
      bad += !validate_bullet(c, dual(op)).valid;
    }
  r.pass = bad == 0 && ops > 0;
  r.detail = std::to_string(ops) + " duals, " + std::to_string(bad) + " failures";
  return r;
}

inline CriterionResult bridge_and_deduction() {
  CriterionResult r{11, "bridge and local deduction", true, ""};
  std::mt19937_64 rng(11);
  std::vector<Model> models;
  for (const auto& c : chains({"B2", "L3", "G3", "L4", "G4", "L5", "G5", "NM6", "L3G3"}))
    for (const auto& op : enumerate_ops(c)) models.emplace_back(c, op);
  std::size_t queries = 0, disagree = 0;
  for (; queries < 1000; ++queries) {
    const Model& m = models[std::uniform_int_distribution<std::size_t>(0, models.size() - 1)(rng)];
    std::vector<Formula> gamma;
    for (int j = std::uniform_int_distribution<int>(0, 3)(rng); j > 0; --j) gamma.push_back(random_formula(rng, 3, true));
    disagree += !bridge_check(m, gamma, random_formula(rng, 4, true)).agree;
  }
  std::size_t instances = 0, failing = 0;
  for (const auto& c : chains({"L3", "L5", "G3"})) {
    const Model m(c, enumerate_ops(c).back());
    for (int i = 0; i < 40; ++i, ++instances) {
      std::vector<Formula> sigma;
      for (int j = std::uniform_int_distribution<int>(0, 2)(rng); j > 0; --j) sigma.push_back(random_formula(rng, 2, true));
      failing += !local_deduction_check(m, sigma, random_formula(rng, 3, true), random_formula(rng, 3, true)).agree;
    }
  }
  r.pass = disagree == 0 && failing == 0;
  r.detail = std::to_string(queries) + " bridge queries, " + std::to_string(disagree) + " disagreements; " +
             std::to_string(instances) + " deduction instances, " + std::to_string(failing) + " failures";
  return r;
}

inline CriterionResult proof_checker() {
  CriterionResult r{12, "proof checker", true, ""};
  std::vector<Model> pool;
  for (const auto& c : chains({"B2", "L3", "G3", "L4", "G4", "L5", "G5", "NM6", "L3G3"}))
    for (const auto& op : enumerate_ops(c)) pool.emplace_back(c, op, dual(op));
  const Chain w = builtin_chain("W15");
  pool.emplace_back(w, min_op(w), dual(min_op(w)));
  const auto proofs = parse_proof_file(fixtures::kProofs);
  std::size_t verified = 0, sound = 0;
  bool b1 = false, cong = false;
  for (const auto& p : proofs) {
    if (!verify_proof(p).ok) continue;
    ++verified;
    b1 = b1 || p.name == "b1-to-a1";
    cong = cong || p.name == "cong-admissible";
    const Profile prof = load_profile(p.profile);
    std::vector<Model> models;
    for (const auto& m : pool)
      if (!profile_mismatch(prof, m)) models.push_back(m);
    sound += !models.empty() && soundness_bridge(p, models).ok();
  }
  std::size_t rejected = 0;
  for (const auto& m : fixtures::mutations()) {
    const auto v = verify_proof(parse_proof(m.text));
    rejected += !v.ok && v.line == m.line && v.error == m.error;
  }
  r.pass = verified == proofs.size() && verified >= 20 && b1 && cong && sound == verified && rejected >= 5 &&
           rejected == fixtures::mutations().size();
  r.detail = std::to_string(verified) + "/" + std::to_string(proofs.size()) + " fixtures verify, " + std::to_string(sound) +
             " sound on applicable chains, " + std::to_string(rejected) + "/" +
             std::to_string(fixtures::mutations().size()) + " mutations rejected at the intended line";
  return r;
}

}  // namespace repro

inline std::vector<std::function<CriterionResult()>> acceptance_suite() {
  using namespace repro;
  return {algebra_laws, postulate_equivalence, uniqueness,     extremality, propagation,          dat_reproduction,
          pdat_boolean, quotient_collapse,   lfi,            duality,     bridge_and_deduction, proof_checker};
}

inline std::string render_row(const CriterionResult& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + "  " + (r.id < 10 ? " " : "") + std::to_string(r.id) + "  " + r.title +
         "  (" + r.detail + ")\n";
}

}  // namespace pfw
