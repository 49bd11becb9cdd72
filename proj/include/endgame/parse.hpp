#pragma once

// Parser for the surface description language:
//
//   surface "<name>" { genus = (0|<int>|inf); ends = <expr>; }
//
// or the bare form `genus = ...; ends = ...;`.  Expressions:
//
//   expr   := P | G | <int> "*" expr | expr "+" expr
//           | omega(expr, planar|np)
//           | tower(<height>; planar|np, planar|np)
//           | ramp(n -> expr, planar|np)
//           | cantor(planar|np) | cantor(acc: expr, planar|np)
//   height := <int> | <int> "*" n ["+" <int>] | n
//
// Whitespace-insensitive; errors carry line and column.

#include <cctype>
#include <string>

#include "endgame/validate.hpp"

namespace endgame {

struct parse_error : std::runtime_error {
  int line, col;
  parse_error(int l, int c, const std::string& msg)
      : std::runtime_error("SyntaxError at " + std::to_string(l) + ":" + std::to_string(c) +
                           ": " + msg),
        line(l),
        col(c) {}
};

namespace detail {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  SurfaceDesc surface() {
    skip();
    SurfaceDesc d;
    bool braced = false;
    if (peek_word("surface")) {
      word("surface");
      d.name = string_lit();
      expect('{');
      braced = true;
    }
    word("genus");
    expect('=');
    d.genus = genus();
    expect(';');
    word("ends");
    expect('=');
    d.ends = expr();
    expect(';');
    if (braced) expect('}');
    skip();
    if (pos_ < s_.size()) fail("trailing input");
    return d;
  }

  ExprPtr expr() {
    std::vector<ExprPtr> ops;
    ops.push_back(term());
    skip();
    while (peek() == '+') {
      get();
      ops.push_back(term());
      skip();
    }
    if (ops.size() == 1) return ops[0];
    return sum(std::move(ops));
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  [[noreturn]] void fail(const std::string& msg) { throw parse_error(line_, col_, msg); }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  char get() {
    char c = peek();
    ++pos_;
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace((unsigned char)peek())) {
        get();
      } else if (peek() == '#') {
        while (pos_ < s_.size() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  bool peek_word(const std::string& w) {
    skip();
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    size_t after = pos_ + w.size();
    if (after < s_.size() && (std::isalnum((unsigned char)s_[after]) || s_[after] == '_'))
      return false;
    return true;
  }

  void word(const std::string& w) {
    if (!peek_word(w)) fail("expected '" + w + "'");
    for (size_t i = 0; i < w.size(); ++i) get();
  }

  std::string ident() {
    skip();
    if (!std::isalpha((unsigned char)peek())) fail("expected identifier");
    std::string out;
    while (std::isalnum((unsigned char)peek()) || peek() == '_') out += get();
    return out;
  }

  int integer() {
    skip();
    if (!std::isdigit((unsigned char)peek())) fail("expected integer");
    long v = 0;
    while (std::isdigit((unsigned char)peek())) {
      v = v * 10 + (get() - '0');
      if (v > 1000000) fail("integer too large");
    }
    return (int)v;
  }

  std::string string_lit() {
    skip();
    if (peek() != '"') fail("expected string literal");
    get();
    std::string out;
    while (peek() != '"') {
      if (pos_ >= s_.size()) fail("unterminated string");
      out += get();
    }
    get();
    return out;
  }

  GenusSpec genus() {
    skip();
    if (peek_word("inf")) {
      word("inf");
      return GenusSpec::inf();
    }
    return GenusSpec::finite(integer());
  }

  Label label() {
    if (peek_word("planar")) {
      word("planar");
      return Label::Planar;
    }
    if (peek_word("np")) {
      word("np");
      return Label::NonPlanar;
    }
    fail("expected 'planar' or 'np'");
  }

  Affine height() {
    skip();
    if (peek_word("n")) {
      word("n");
      return Affine{1, 0};
    }
    int a = integer();
    skip();
    if (peek() == '*') {
      get();
      word("n");
      skip();
      int b = 0;
      if (peek() == '+') {
        get();
        b = integer();
      }
      return Affine{a, b};
    }
    return Affine{0, a};
  }

  ExprPtr term() {
    skip();
    if (std::isdigit((unsigned char)peek())) {
      int k = integer();
      expect('*');
      ExprPtr e = term();
      if (k < 1) fail("multiplicity must be at least 1");
      if (k == 1) return e;
      std::vector<ExprPtr> ops(k, e);
      return sum(std::move(ops));
    }
    if (peek() == '(') {
      get();
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (peek_word("P")) {
      word("P");
      return pt(Label::Planar);
    }
    if (peek_word("G")) {
      word("G");
      return pt(Label::NonPlanar);
    }
    if (peek_word("omega")) {
      word("omega");
      expect('(');
      ExprPtr inner = expr();
      expect(',');
      Label l = label();
      expect(')');
      return omega(inner, l);
    }
    if (peek_word("tower")) {
      word("tower");
      expect('(');
      Affine h = height();
      expect(';');
      Label in = label();
      expect(',');
      Label top = label();
      expect(')');
      return tower(h, in, top);
    }
    if (peek_word("ramp")) {
      word("ramp");
      expect('(');
      word("n");
      skip();
      if (peek() != '-') fail("expected '->'");
      get();
      expect('>');
      ExprPtr body = expr();
      expect(',');
      Label l = label();
      expect(')');
      return ramp(body, l);
    }
    if (peek_word("cantor")) {
      word("cantor");
      expect('(');
      skip();
      if (peek_word("acc")) {
        word("acc");
        expect(':');
        ExprPtr dec = expr();
        expect(',');
        Label l = label();
        expect(')');
        return cantor_acc(dec, l);
      }
      Label l = label();
      expect(')');
      return cantor(l);
    }
    fail("expected an end expression");
  }
};

}  // namespace detail

// Parse (without validating).
inline SurfaceDesc parse_surface_text(const std::string& text) {
  detail::Parser p(text);
  return p.surface();
}

// Parse and validate.
inline SurfaceDesc parse_surface(const std::string& text) {
  SurfaceDesc d = parse_surface_text(text);
  validate(d);
  return d;
}

inline ExprPtr parse_expr(const std::string& text) {
  detail::Parser p(text + " ;");
  // reuse the expression entry; the trailing sentinel is never consumed
  return p.expr();
}

}  // namespace endgame
