#include "phasegeom/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace phasegeom {

namespace {

struct Lexer {
  std::string_view src;
  size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
};

class Parser {
 public:
  Parser(std::string_view src, const Chart& chart) : lex_{src}, chart_(chart) {}

  Expr run() {
    Expr e = parse_sum();
    if (!lex_.eof()) {
      throw ParseError("unexpected character '" + std::string(1, lex_.peek()) + "'", lex_.pos);
    }
    return e;
  }

 private:
  Lexer lex_;
  const Chart& chart_;
  int depth_ = 0;

  struct DepthGuard {
    int& d;
    size_t at;
    DepthGuard(int& depth, size_t pos) : d(depth), at(pos) {
      if (++d > 256) throw ParseError("expression nested too deeply", at);
    }
    ~DepthGuard() { --d; }
  };

  Expr parse_sum() {
    DepthGuard g(depth_, lex_.pos);
    Expr e = parse_product();
    for (;;) {
      if (lex_.consume('+')) {
        e = e + parse_product();
      } else if (lex_.consume('-')) {
        e = e - parse_product();
      } else {
        return e;
      }
    }
  }

  Expr parse_product() {
    DepthGuard g(depth_, lex_.pos);
    Expr e = parse_unary();
    for (;;) {
      if (lex_.consume('*')) {
        e = e * parse_unary();
      } else if (lex_.consume('/')) {
        e = e / parse_unary();
      } else {
        return e;
      }
    }
  }

  Expr parse_unary() {
    DepthGuard g(depth_, lex_.pos);
    if (lex_.consume('-')) return -parse_unary();
    if (lex_.consume('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (lex_.consume('^')) {
      size_t at = lex_.pos;
      Expr expo = parse_unary();  // right-associative
      if (!expo.is_number()) {
        throw ParseError("exponent must be a numeric constant", at);
      }
      return pow(base, expo);
    }
    return base;
  }

  Expr parse_atom() {
    if (lex_.eof()) throw ParseError("unexpected end of input", lex_.pos);
    char c = lex_.peek();
    if (c == '(') {
      ++lex_.pos;
      Expr e = parse_sum();
      if (!lex_.consume(')')) throw ParseError("expected ')'", lex_.pos);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError("unexpected character '" + std::string(1, c) + "'", lex_.pos);
  }

  Expr parse_number() {
    size_t start = lex_.pos;
    const std::string_view s = lex_.src;
    size_t i = start;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    bool is_float = false;
    if (i < s.size() && s[i] == '.') {
      is_float = true;
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      size_t j = i + 1;
      if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
      if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        is_float = true;
        i = j;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
    }
    if (i == start || (i == start + 1 && s[start] == '.')) {
      throw ParseError("malformed number", start);
    }
    std::string text(s.substr(start, i - start));
    lex_.pos = i;
    if (!is_float) {
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec == std::errc() && p == text.data() + text.size()) {
        return Expr::number(Rational(v));
      }
      // Falls through to double for integers beyond 64 bits.
    }
    return Expr::number(std::strtod(text.c_str(), nullptr));
  }

  Expr parse_identifier() {
    size_t start = lex_.pos;
    const std::string_view s = lex_.src;
    size_t i = start;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
      ++i;
    }
    std::string name(s.substr(start, i - start));
    lex_.pos = i;

    if (name == "exp" || name == "ln" || name == "sin" || name == "cos") {
      if (!lex_.consume('(')) throw ParseError("expected '(' after " + name, lex_.pos);
      Expr arg = parse_sum();
      if (!lex_.consume(')')) throw ParseError("expected ')'", lex_.pos);
      if (name == "exp") return exp(arg);
      if (name == "ln") return ln(arg);
      if (name == "sin") return sin(arg);
      return cos(arg);
    }
    if (name == "t") {
      if (!chart_.includes_time()) {
        throw ParseError("chart does not allow time dependence", start);
      }
      return Expr::time();
    }
    if (auto idx = chart_.index_of(name)) {
      return Expr::coordinate(*idx, name);
    }
    throw ParseError("unknown identifier '" + name + "'", start);
  }
};

}  // namespace

Expr parse_expr(std::string_view source, const Chart& chart) {
  return Parser(source, chart).run();
}

}  // namespace phasegeom
