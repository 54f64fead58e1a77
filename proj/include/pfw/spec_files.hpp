#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfw/builtins.hpp"
#include "pfw/chain.hpp"
#include "pfw/error.hpp"
#include "pfw/operators.hpp"
#include "pfw/rational.hpp"

namespace pfw {

// Chain and operator spec files. Line-oriented; `%` starts a comment. A file holds
// any number of blocks, each opened by a header line:
//
//   chain LP2                     op crisp34 on LP
//   kind: standard                kind: crisp
//   components: lukasiewicz 0 1/2; product 1/2 1
//                                 threshold: 3/4
//
// Finite chains take one of `family:` + `size:`, `table:` followed by n rows,
// `negation: v0 … v(n-1)` (WNM), or `ordinal_sum: lukasiewicz 3; godel 3`.
// Operators take `kind: min|max|crisp|piecewise|table` with `threshold:`, `closed:`,
// `breakpoints: x v; x v …`, `interpolation: step|linear`, `values: …`, `role:`.

namespace detail {

struct Block {
  std::string header;  // header line, e.g. "chain LP2"
  std::size_t line = 0;
  std::vector<std::pair<std::string, std::string>> fields;  // key, value in order
  std::vector<std::string> rows;                           // non key lines (table rows)

  const std::string* get(const std::string& key) const {
    for (const auto& [k, v] : fields)
      if (k == key) return &v;
    return nullptr;
  }
  std::string need(const std::string& key) const {
    if (auto v = get(key)) return *v;
    throw Error("BadSpec", "line " + std::to_string(line) + ": '" + header + "' is missing '" + key + ":'");
  }
};

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty()) out.emplace_back(trim(cur));
  return out;
}

inline std::vector<Block> split_blocks(std::string_view text, const std::vector<std::string>& openers) {
  std::vector<Block> out;
  std::istringstream in{std::string(text)};
  std::size_t no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++no;
    if (auto pct = raw.find('%'); pct != std::string::npos) raw.erase(pct);
    const std::string line(trim(raw));
    if (line.empty()) continue;
    const std::string first = split_ws(line).front();
    if (std::find(openers.begin(), openers.end(), first) != openers.end()) {
      out.push_back(Block{line, no, {}, {}});
      continue;
    }
    if (out.empty()) throw Error("BadSpec", "line " + std::to_string(no) + ": content before any block header");
    const auto colon = line.find(':');
    const bool is_key = colon != std::string::npos && colon > 0 &&
                        line.find_first_of(" \t") > colon;  // `key:` is a single word
    if (is_key)
      out.back().fields.emplace_back(line.substr(0, colon), std::string(trim(std::string_view(line).substr(colon + 1))));
    else
      out.back().rows.push_back(line);
  }
  return out;
}

inline std::vector<Rational> parse_rationals(std::string_view s) {
  std::vector<Rational> out;
  for (const auto& w : split_ws(s)) out.push_back(parse_rational(w));
  return out;
}

inline bool parse_bool(const std::string& s) {
  if (s == "true" || s == "yes" || s == "closed") return true;
  if (s == "false" || s == "no" || s == "open") return false;
  throw Error("BadSpec", "expected true or false, got '" + s + "'");
}

inline Chain build_chain_block(const Block& b) {
  const auto words = split_ws(b.header);
  if (words.size() != 2) throw Error("BadSpec", "line " + std::to_string(b.line) + ": expected 'chain <name>'");
  const std::string& name = words[1];
  const std::string kind = b.need("kind");
  if (kind == "standard") {
    std::vector<Component> comps;
    for (const auto& part : split_on(b.need("components"), ';')) {
      const auto w = split_ws(part);
      if (w.size() != 3) throw Error("BadSpec", "component '" + part + "' should be '<family> <lo> <hi>'");
      for (std::size_t i = 1; i < 3; ++i)
        if (w[i].find('.') != std::string::npos || w[i].find('e') != std::string::npos)
          throw Error("NonRationalEndpoint", "endpoint '" + w[i] + "' must be written p/q");
      comps.push_back({parse_family(w[0]), parse_rational(w[1]), parse_rational(w[2])});
    }
    return Chain::standard(std::move(comps), name);
  }
  if (kind != "finite") throw Error("BadSpec", "kind must be finite or standard, got '" + kind + "'");
  if (auto fam = b.get("family")) {
    const long long n = std::stoll(b.need("size"));
    if (n < 2) throw Error("SizeMismatch", "size must be at least 2");
    return Chain::finite_family(parse_family(*fam), static_cast<std::size_t>(n), name);
  }
  if (auto neg = b.get("negation")) return Chain::finite_wnm(parse_rationals(*neg), name);
  if (auto parts = b.get("ordinal_sum")) {
    std::vector<std::pair<Family, std::size_t>> spec;
    for (const auto& part : split_on(*parts, ';')) {
      const auto w = split_ws(part);
      if (w.size() != 2) throw Error("BadSpec", "ordinal_sum part '" + part + "' should be '<family> <size>'");
      spec.emplace_back(parse_family(w[0]), static_cast<std::size_t>(std::stoul(w[1])));
    }
    return Chain::finite_ordinal_sum(spec, name);
  }
  if (auto first = b.get("table")) {
    std::vector<std::vector<Rational>> rows;
    if (!first->empty()) rows.push_back(parse_rationals(*first));
    for (const auto& r : b.rows) rows.push_back(parse_rationals(r));
    return Chain::finite_table(rows, name);
  }
  throw Error("BadSpec", "finite chain '" + name + "' needs family/size, table, negation or ordinal_sum");
}

inline UnaryOp build_op_block(const Block& b, const std::function<Chain(const std::string&)>& chain_lookup) {
  const auto words = split_ws(b.header);
  if (words.size() != 4 || words[2] != "on")
    throw Error("BadSpec", "line " + std::to_string(b.line) + ": expected 'op <name> on <chain>'");
  const Chain c = chain_lookup(words[3]);
  const std::string kind = b.need("kind");
  const std::string* role_s = b.get("role");
  const Role role = !role_s || *role_s == "consistency" ? Role::Consistency
                    : *role_s == "inconsistency"        ? Role::Inconsistency
                    : throw Error("BadSpec", "role must be consistency or inconsistency");
  UnaryOp op = [&] {
    if (kind == "min") return min_op(c);
    if (kind == "max") return max_op(c);
    if (kind == "crisp") {
      const std::string* closed = b.get("closed");
      return crisp_op(c, parse_rational(b.need("threshold")), closed ? parse_bool(*closed) : true);
    }
    if (kind == "piecewise") {
      std::vector<std::pair<Rational, Rational>> bps;
      if (auto s = b.get("breakpoints"))
        for (const auto& part : split_on(*s, ';')) {
          const auto v = parse_rationals(part);
          if (v.size() != 2) throw Error("BadSpec", "breakpoint '" + part + "' should be '<x> <value>'");
          bps.emplace_back(v[0], v[1]);
        }
      const std::string* interp = b.get("interpolation");
      const Interpolation mode = !interp || *interp == "linear" ? Interpolation::Linear
                                 : *interp == "step"            ? Interpolation::Step
                                 : throw Error("BadSpec", "interpolation must be step or linear");
      return piecewise_op(c, std::move(bps), mode);
    }
    if (kind == "table") return UnaryOp::from_values(c, parse_rationals(b.need("values")), role);
    throw Error("BadSpec", "unknown operator kind '" + kind + "'");
  }();
  if (kind != "table" && role == Role::Inconsistency) op = dual(op);
  op.rename(words[1]);
  return op;
}

}  // namespace detail

inline std::vector<Chain> parse_chain_file(std::string_view text) {
  std::vector<Chain> out;
  for (const auto& b : detail::split_blocks(text, {"chain"})) out.push_back(detail::build_chain_block(b));
  return out;
}

inline std::vector<UnaryOp> parse_op_file(std::string_view text,
                                          const std::function<Chain(const std::string&)>& chain_lookup = builtin_chain) {
  std::vector<UnaryOp> out;
  for (const auto& b : detail::split_blocks(text, {"op"})) out.push_back(detail::build_op_block(b, chain_lookup));
  return out;
}

}  // namespace pfw
