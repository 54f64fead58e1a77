#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace pfw::fixtures {

/// Worked derivations. Every proof here verifies and is sound on every applicable chain.
inline constexpr std::string_view kProofs = R"(
proof weakening in MTL
1. p & q -> p | axiom A2
2. (p & q -> p) -> (p -> (q -> p)) | axiom A7b
3. p -> (q -> p) | mp 1 2

proof identity in MTL
1. 0 -> 0 | axiom A9
2. (0 -> 0) & ((0 -> 0) -> p) -> (0 -> 0) /\ p | axiom A6
3. (0 -> 0) /\ p -> p /\ (0 -> 0) | axiom A5
4. p /\ (0 -> 0) -> p | axiom A4
5. ((0 -> 0) & ((0 -> 0) -> p) -> (0 -> 0) /\ p) -> (((0 -> 0) /\ p -> p /\ (0 -> 0)) -> ((0 -> 0) & ((0 -> 0) -> p) -> p /\ (0 -> 0))) | axiom A1
6. ((0 -> 0) /\ p -> p /\ (0 -> 0)) -> ((0 -> 0) & ((0 -> 0) -> p) -> p /\ (0 -> 0)) | mp 2 5
7. (0 -> 0) & ((0 -> 0) -> p) -> p /\ (0 -> 0) | mp 3 6
8. ((0 -> 0) & ((0 -> 0) -> p) -> p /\ (0 -> 0)) -> ((p /\ (0 -> 0) -> p) -> ((0 -> 0) & ((0 -> 0) -> p) -> p)) | axiom A1
9. (p /\ (0 -> 0) -> p) -> ((0 -> 0) & ((0 -> 0) -> p) -> p) | mp 7 8
10. (0 -> 0) & ((0 -> 0) -> p) -> p | mp 4 9
11. ((0 -> 0) & ((0 -> 0) -> p) -> p) -> ((0 -> 0) -> (((0 -> 0) -> p) -> p)) | axiom A7b
12. (0 -> 0) -> (((0 -> 0) -> p) -> p) | mp 10 11
13. ((0 -> 0) -> p) -> p | mp 1 12
14. p & (0 -> 0) -> p | axiom A2
15. (p & (0 -> 0) -> p) -> (p -> ((0 -> 0) -> p)) | axiom A7b
16. p -> ((0 -> 0) -> p) | mp 14 15
17. (p -> ((0 -> 0) -> p)) -> ((((0 -> 0) -> p) -> p) -> (p -> p)) | axiom A1
18. (((0 -> 0) -> p) -> p) -> (p -> p) | mp 16 17
19. p -> p | mp 13 18

proof transitivity in MTL
1. p -> q | premise 1
2. q -> r | premise 2
3. (p -> q) -> ((q -> r) -> (p -> r)) | axiom A1
4. (q -> r) -> (p -> r) | mp 1 3
5. p -> r | mp 2 4

proof conj-elim in MTL
1. p /\ q | premise 1
2. p /\ q -> q /\ p | axiom A5
3. q /\ p | mp 1 2
4. q /\ p -> q | axiom A4
5. q | mp 3 4

proof explosion in MTL
1. p | premise 1
2. ~p | premise 2
3. 0 | mp 1 2
4. 0 -> q | axiom A9
5. q | mp 3 4

proof importation in MTL
1. p -> (q -> r) | premise 1
2. (p -> (q -> r)) -> (p & q -> r) | axiom A7a
3. p & q -> r | mp 1 2

proof cases in MTL
1. (p -> q) -> r | premise 1
2. (q -> p) -> r | premise 2
3. ((p -> q) -> r) -> (((q -> p) -> r) -> r) | axiom A8
4. ((q -> p) -> r) -> r | mp 1 3
5. r | mp 2 4

proof delta-nec in MTL_D
1. p -> q | premise 1
2. D (p -> q) | rule DNec 1
3. D (p -> q) -> (D p -> D q) | axiom D5
4. D p -> D q | mp 2 3

proof contraction in G
1. p | premise 1
2. p -> p & p | axiom Con
3. p & p | mp 1 2

proof involution in L
1. ~~p | premise 1
2. ~~p -> p | axiom Inv
3. p | mp 1 2

proof nn-rule in MTL_nn
1. ~~p \/ q | premise 1
2. p \/ q | rule NN 1

proof b1-to-a1 in MTL_o_nn+
1. ~O p \/ p \/ ~p | axiom B1
2. p -> ~~p | thm dn-intro
3. (p -> ~~p) -> (~O p \/ p -> ~O p \/ ~~p) | thm or-mono-r
4. ~O p \/ p -> ~O p \/ ~~p | mp 2 3
5. (~O p \/ p -> ~O p \/ ~~p) -> (~O p \/ p \/ ~p -> ~O p \/ ~~p \/ ~p) | thm or-mono-l
6. ~O p \/ p \/ ~p -> ~O p \/ ~~p \/ ~p | mp 4 5
7. ~O p \/ ~~p \/ ~p | mp 1 6
8. ~O p \/ ~~p \/ ~p -> ~O p \/ (~~p \/ ~p) | thm or-assoc-r
9. ~O p \/ (~~p \/ ~p) | mp 7 8
10. ~O p \/ (~~p \/ ~p) -> ~~p \/ ~p \/ ~O p | thm or-comm
11. ~~p \/ ~p \/ ~O p | mp 9 10
12. ~~p \/ ~p -> ~p \/ ~~p | thm or-comm
13. (~~p \/ ~p -> ~p \/ ~~p) -> (~~p \/ ~p \/ ~O p -> ~p \/ ~~p \/ ~O p) | thm or-mono-l
14. ~~p \/ ~p \/ ~O p -> ~p \/ ~~p \/ ~O p | mp 12 13
15. ~p \/ ~~p \/ ~O p | mp 11 14
16. ~p \/ ~~p -> ~(p /\ ~p) | thm demorgan-r
17. (~p \/ ~~p -> ~(p /\ ~p)) -> (~p \/ ~~p \/ ~O p -> ~(p /\ ~p) \/ ~O p) | thm or-mono-l
18. ~p \/ ~~p \/ ~O p -> ~(p /\ ~p) \/ ~O p | mp 16 17
19. ~(p /\ ~p) \/ ~O p | mp 15 18
20. ~(p /\ ~p) \/ ~O p -> ~(p /\ ~p /\ O p) | thm demorgan-r
21. ~(p /\ ~p /\ O p) | mp 19 20

proof cong-admissible in MTL_o_nn+
1. (p <-> q) \/ r | premise 1
2. O ((p <-> q) \/ r) | rule ONec 1
3. O ((p <-> q) \/ r) -> O (p <-> q) \/ r | axiom B3
4. O (p <-> q) \/ r | mp 2 3
5. O (p <-> q) -> (O p <-> O q) | axiom B2
6. (O (p <-> q) -> (O p <-> O q)) -> (O (p <-> q) \/ r -> (O p <-> O q) \/ r) | thm or-mono-l
7. O (p <-> q) \/ r -> (O p <-> O q) \/ r | mp 5 6
8. (O p <-> O q) \/ r | mp 4 7

proof top-consistent in MTL_o_nn+
1. 0 -> 0 | axiom A9
2. O 1 | rule ONec 1

proof congruence in MTL_o
1. (p <-> q) \/ r | premise 1
2. (O p <-> O q) \/ r | rule Cong 1
3. p /\ q <-> q /\ p | premise 2
4. O (p /\ q) <-> O (q /\ p) | rule Cong 3

proof coherence in MTL_o
1. ~~p /\ (p -> q) | premise 1
2. O p -> O q | rule Coh 1

proof gentle-explosion in MTL_o<=
1. O p | premise 1
2. p | premise 2
3. ~p | premise 3
4. p /\ ~p | rule Adj 2 3
5. p /\ ~p /\ O p | rule Adj 4 1
6. ~(p /\ ~p /\ O p) | axiom oA1
7. 0 | mp 5 6
8. 0 -> q | axiom A9
9. q | mp 7 8

proof adjunction in MTL<=
1. p | premise 1
2. q | premise 2
3. p /\ q | rule Adj 1 2
4. p /\ q -> q /\ p | axiom A5
5. q /\ p | mp 3 4

proof cong-restricted in MTL_o<=
1. p /\ q -> q /\ p | axiom A5
2. q /\ p -> p /\ q | axiom A5
3. (p /\ q -> q /\ p) /\ (q /\ p -> p /\ q) | rule Adj 1 2
4. O (p /\ q) <-> O (q /\ p) | rule Cong-r 3

proof min-excluded-middle in MTL_o_min
1. O p | premise 1
2. p \/ ~p \/ ~O p | axiom oA4
3. p \/ ~p \/ ~O p -> (~~O p -> p \/ ~p) | thm or-syllogism
4. ~~O p -> p \/ ~p | mp 2 3
5. O p -> ~~O p | thm dn-intro
6. ~~O p | mp 1 5
7. p \/ ~p | mp 6 4

proof max-rule in MTL_o_max
1. ~~p | premise 1
2. O p | rule NNo 1
3. ~~q \/ r | premise 2
4. O q \/ r | rule NNo 3

proof max-axiom in BL_o_max
1. (~~p -> p) \/ O p | axiom oMaxBL
2. (~~p -> p) \/ O p -> O p \/ (~~p -> p) | thm or-comm
3. O p \/ (~~p -> p) | mp 1 2

proof determinedness in MTL_o_dat
1. O p | premise 1
2. O p -> p \/ ~p | axiom oEM
3. p \/ ~p | mp 1 2

proof bullet-congruence in MTL_b
1. p <-> q | premise 1
2. # p <-> # q | rule Cong' 1

proof bullet-coherence in MTL_b
1. ~~p /\ (p -> q) \/ r | premise 1
2. (# q -> # p) \/ r | rule Coh' 1

proof bullet-min in MTL_b_min
1. ~~p | premise 1
2. ~# p | rule bNN 1

proof bullet-max in MTL_b_max
1. ~# p | premise 1
2. p \/ ~p \/ # p | axiom bmax
3. p \/ ~p \/ # p -> (~# p -> p \/ ~p) | thm or-syllogism
4. ~# p -> p \/ ~p | mp 2 3
5. p \/ ~p | mp 1 4

proof bullet-cong-restricted in MTL_b<=
1. p /\ q -> q /\ p | axiom A5
2. q /\ p -> p /\ q | axiom A5
3. (p /\ q -> q /\ p) /\ (q /\ p -> p /\ q) | rule Adj 1 2
4. # (p /\ q) <-> # (q /\ p) | rule Cong'-r 3

proof nn-restricted in MTL_o_nn<=
1. p -> p | thm id
2. (p -> p) -> ~~(p -> p) | thm dn-intro
3. ~~(p -> p) | mp 1 2
4. p -> p | rule NN-r 3

proof translated-a1 in MTL_b
1. ~(p /\ ~p) \/ # p | axiom bA1
2. ~(p /\ ~p) \/ # p -> (~# p -> ~(p /\ ~p)) | thm or-syllogism
3. ~# p -> ~(p /\ ~p) | mp 1 2
)";

struct Mutation {
  std::string_view name;
  std::string_view text;
  std::size_t line;
  std::string_view error;
};

/// Broken derivations, each rejected at a known line for a known reason.
inline const std::vector<Mutation>& mutations() {
  static const std::vector<Mutation> m{
      {"wrong-disjunct", R"(
proof wrong-disjunct in MTL_o_nn+
1. ~O p \/ p \/ ~p | axiom B1
2. p -> ~~p | thm dn-intro
3. (p -> ~~p) -> (~O p \/ p -> ~O p \/ ~p) | thm or-mono-r
)",
       3, "SchemaMismatch"},
      {"restricted-on-premise", R"(
proof restricted-on-premise in MTL_o<=
1. p <-> q | premise 1
2. O p <-> O q | rule Cong-r 1
)",
       2, "RestrictedRuleOnHypothesis"},
      {"mp-on-premise-implication", R"(
proof mp-on-premise-implication in MTL<=
1. p | premise 1
2. p -> q | premise 2
3. q | mp 1 2
)",
       3, "RestrictedRuleOnHypothesis"},
      {"swapped-mp", R"(
proof swapped-mp in MTL
1. p & q -> p | axiom A2
2. (p & q -> p) -> (p -> (q -> p)) | axiom A7b
3. p -> (q -> p) | mp 2 1
)",
       3, "SchemaMismatch"},
      {"adj-arity", R"(
proof adj-arity in MTL<=
1. p | premise 1
2. q | premise 2
3. p /\ q | rule Adj 1
)",
       3, "BadRuleArity"},
      {"foreign-axiom", R"(
proof foreign-axiom in MTL_o
1. p | premise 1
2. p \/ ~p \/ ~O p | axiom oA4
)",
       2, "UnknownAxiom"},
  };
  return m;
}

}  // namespace pfw::fixtures
