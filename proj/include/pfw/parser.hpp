#pragma once

#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>

#include "pfw/error.hpp"
#include "pfw/formula.hpp"

namespace pfw {

/// Syntax error carrying the byte offset and the set of tokens that would have been accepted there.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, std::set<std::string> expected, const std::string& detail)
      : Error("SyntaxError", describe(offset, expected, detail)), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::set<std::string>& expected() const noexcept { return expected_; }

private:
  static std::string describe(std::size_t offset, const std::set<std::string>& expected, const std::string& detail) {
    std::string msg = "at byte " + std::to_string(offset) + ": " + detail;
    if (!expected.empty()) {
      msg += "; expected one of:";
      for (const auto& e : expected) msg += " " + e;
    }
    return msg;
  }

  std::size_t offset_;
  std::set<std::string> expected_;
};

namespace detail {

enum class Tok { Var, Zero, One, Tilde, Circ, Bullet, Delta, Fuse, Meet, Join, Imp, Iff, LParen, RParen, End };

inline const char* spelling(Tok t) {
  switch (t) {
    case Tok::Var: return "variable";
    case Tok::Zero: return "0";
    case Tok::One: return "1";
    case Tok::Tilde: return "~";
    case Tok::Circ: return "O";
    case Tok::Bullet: return "#";
    case Tok::Delta: return "D";
    case Tok::Fuse: return "&";
    case Tok::Meet: return "/\\";
    case Tok::Join: return "\\/";
    case Tok::Imp: return "->";
    case Tok::Iff: return "<->";
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  Formula parse_all() {
    Formula f = parse_arrow();
    if (tok_ != Tok::End) fail({spelling(Tok::Imp), spelling(Tok::Iff), spelling(Tok::Join), spelling(Tok::Meet),
                                spelling(Tok::Fuse), spelling(Tok::End)},
                               "unexpected token '" + lexeme() + "'");
    return f;
  }

private:
  // -> and <-> share the loosest level; both are right-associative and may not be mixed.
  Formula parse_arrow() {
    Formula lhs = parse_join();
    if (tok_ != Tok::Imp && tok_ != Tok::Iff) return lhs;
    const Tok op = tok_;
    std::vector<Formula> operands{lhs};
    while (tok_ == op) {
      advance();
      operands.push_back(parse_join());
    }
    if (tok_ == Tok::Imp || tok_ == Tok::Iff)
      fail({spelling(op), spelling(Tok::RParen), spelling(Tok::End)},
           "'->' and '<->' cannot be mixed without parentheses");
    Formula out = operands.back();
    for (std::size_t i = operands.size() - 1; i-- > 0;)
      out = Formula::binary(op == Tok::Imp ? Kind::Imp : Kind::Iff, operands[i], out);
    return out;
  }

  Formula parse_join() {
    Formula out = parse_meet();
    while (tok_ == Tok::Join) {
      advance();
      out = join(out, parse_meet());
    }
    return out;
  }

  Formula parse_meet() {
    Formula out = parse_fuse();
    while (tok_ == Tok::Meet) {
      advance();
      out = meet(out, parse_fuse());
    }
    return out;
  }

  Formula parse_fuse() {
    Formula out = parse_unary();
    while (tok_ == Tok::Fuse) {
      advance();
      out = fuse(out, parse_unary());
    }
    return out;
  }

  Formula parse_unary() {
    switch (tok_) {
      case Tok::Tilde: advance(); return neg(parse_unary());
      case Tok::Circ: advance(); return circ(parse_unary());
      case Tok::Bullet: advance(); return bullet(parse_unary());
      case Tok::Delta: advance(); return delta(parse_unary());
      default: return parse_atom();
    }
  }

  Formula parse_atom() {
    switch (tok_) {
      case Tok::Var: {
        Formula f = var(std::string(lexeme()));
        advance();
        return f;
      }
      case Tok::Zero: advance(); return zero();
      case Tok::One: advance(); return one();
      case Tok::LParen: {
        advance();
        Formula f = parse_arrow();
        if (tok_ != Tok::RParen)
          fail({spelling(Tok::RParen), spelling(Tok::Imp), spelling(Tok::Iff), spelling(Tok::Join),
                spelling(Tok::Meet), spelling(Tok::Fuse)},
               "unclosed parenthesis");
        advance();
        return f;
      }
      default:
        fail(atom_starts(), tok_ == Tok::End ? "unexpected end of input" : "unexpected token '" + lexeme() + "'");
    }
  }

  static std::set<std::string> atom_starts() {
    return {spelling(Tok::Var), spelling(Tok::Zero), spelling(Tok::One), spelling(Tok::Tilde),
            spelling(Tok::Circ), spelling(Tok::Bullet), spelling(Tok::Delta), spelling(Tok::LParen)};
  }

  [[noreturn]] void fail(std::set<std::string> expected, const std::string& detail) const {
    throw ParseError(start_, std::move(expected), detail);
  }

  std::string lexeme() const { return std::string(text_.substr(start_, pos_ - start_)); }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    start_ = pos_;
    if (pos_ >= text_.size()) {
      tok_ = Tok::End;
      return;
    }
    const char c = text_[pos_];
    auto rest = text_.substr(pos_);
    auto take = [&](Tok t, std::size_t n) {
      tok_ = t;
      pos_ += n;
    };
    if (c >= 'a' && c <= 'z') {
      std::size_t n = 1;
      while (n < rest.size() && (std::islower(static_cast<unsigned char>(rest[n])) ||
                                 std::isdigit(static_cast<unsigned char>(rest[n])) || rest[n] == '_'))
        ++n;
      return take(Tok::Var, n);
    }
    if (c == '0' || c == '1') {
      if (rest.size() > 1 && std::isdigit(static_cast<unsigned char>(rest[1])))
        throw ParseError(pos_, {"0", "1"}, "only the constants 0 and 1 are allowed");
      return take(c == '0' ? Tok::Zero : Tok::One, 1);
    }
    if (rest.starts_with("<->")) return take(Tok::Iff, 3);
    if (rest.starts_with("->")) return take(Tok::Imp, 2);
    if (rest.starts_with("/\\")) return take(Tok::Meet, 2);
    if (rest.starts_with("\\/")) return take(Tok::Join, 2);
    switch (c) {
      case '~': return take(Tok::Tilde, 1);
      case 'O': return take(Tok::Circ, 1);
      case '#': return take(Tok::Bullet, 1);
      case 'D': return take(Tok::Delta, 1);
      case '&': return take(Tok::Fuse, 1);
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      default: break;
    }
    throw ParseError(pos_, atom_starts(), std::string("invalid character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
  Tok tok_ = Tok::End;
};

}  // namespace detail

inline Formula parse(std::string_view text) { return detail::Parser(text).parse_all(); }

/// Parses a schema; `metavars` names the identifiers that act as metavariables.
inline Schema parse_schema(std::string_view text, std::set<std::string> metavars) {
  return Schema{parse(text), std::move(metavars)};
}

}  // namespace pfw
