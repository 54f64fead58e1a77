#pragma once

#include <string>
#include <vector>

#include "pfw/chain.hpp"
#include "pfw/error.hpp"

namespace pfw {

/// 16-point WNM chain whose negation is 1−x on [0,3/15] ∪ [12/15,1], constant 3/15
/// on [9/15,12/15] and 12/15−x on (3/15,9/15]. At 3/15 the 1−x piece is used: the
/// negation of a WNM t-norm must satisfy x ≤ n(y) ⇔ y ≤ n(x), and n(12/15) = 3/15
/// forces n(3/15) ≥ 12/15.
inline Chain w15_chain() {
  std::vector<Rational> neg(16);
  for (int i = 0; i <= 15; ++i) {
    int v;
    if (i <= 3 || i >= 12) v = 15 - i;
    else if (i >= 9) v = 3;
    else v = 12 - i;
    neg[i] = rat(v, 15);
  }
  return Chain::finite_wnm(neg, "W15");
}

inline std::vector<std::string> builtin_chain_names() {
  return {"B2", "L3", "L4", "L5", "G3", "G4", "G5", "NM6", "L3G3", "W15", "L", "G", "P", "LG", "LP", "LL"};
}

/// Built-in chains. Ł⊕★ sums split at 1/2.
inline Chain builtin_chain(const std::string& name) {
  const Rational half = rat(1, 2);
  if (name == "B2") return Chain::finite_family(Family::Godel, 2, "B2");
  if (name == "L3") return Chain::finite_family(Family::Lukasiewicz, 3, "L3");
  if (name == "L4") return Chain::finite_family(Family::Lukasiewicz, 4, "L4");
  if (name == "L5") return Chain::finite_family(Family::Lukasiewicz, 5, "L5");
  if (name == "G3") return Chain::finite_family(Family::Godel, 3, "G3");
  if (name == "G4") return Chain::finite_family(Family::Godel, 4, "G4");
  if (name == "G5") return Chain::finite_family(Family::Godel, 5, "G5");
  if (name == "NM6") {
    std::vector<Rational> neg;
    for (int i = 5; i >= 0; --i) neg.push_back(rat(i, 5));
    return Chain::finite_wnm(neg, "NM6");
  }
  if (name == "L3G3") return Chain::finite_ordinal_sum({{Family::Lukasiewicz, 3}, {Family::Godel, 3}}, "L3G3");
  if (name == "W15") return w15_chain();
  if (name == "L") return Chain::standard({{Family::Lukasiewicz, 0, 1}}, "L");
  if (name == "G") return Chain::standard({{Family::Godel, 0, 1}}, "G");
  if (name == "P") return Chain::standard({{Family::Product, 0, 1}}, "P");
  if (name == "LG") return Chain::standard({{Family::Lukasiewicz, 0, half}, {Family::Godel, half, 1}}, "LG");
  if (name == "LP") return Chain::standard({{Family::Lukasiewicz, 0, half}, {Family::Product, half, 1}}, "LP");
  if (name == "LL") return Chain::standard({{Family::Lukasiewicz, 0, half}, {Family::Lukasiewicz, half, 1}}, "LL");
  throw Error("UnknownChain", "no built-in chain named '" + name + "'");
}

}  // namespace pfw
