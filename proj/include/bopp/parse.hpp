#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bopp/bivector.hpp"

namespace bopp {

namespace detail {

/// Tokens of the entry-expression grammar.
struct Token {
  enum Kind { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
  std::string text;
  int column = 0;  // 1-based
};

class ExprLexer {
 public:
  ExprLexer(std::string_view src, int line) : src_(src), line_(line) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }
  int line() const { return line_; }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_.column = static_cast<int>(pos_) + 1;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::End;
      tok_.text.clear();
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      tok_.kind = Token::Number;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    ++pos_;
    tok_.text = std::string(1, c);
    switch (c) {
      case '+': tok_.kind = Token::Plus; return;
      case '-': tok_.kind = Token::Minus; return;
      case '*': tok_.kind = Token::Star; return;
      case '^': tok_.kind = Token::Caret; return;
      case '/': tok_.kind = Token::Slash; return;
      case '(': tok_.kind = Token::LParen; return;
      case ')': tok_.kind = Token::RParen; return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, tok_.column);
    }
  }

  std::string_view src_;
  int line_;
  std::size_t pos_ = 0;
  Token tok_;
};

/// Recursive-descent parser for entry expressions:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' uint)?
///   atom   := rational | ident | '(' expr ')' | '-' atom
///   rational := int ('/' uint)?
/// Identifiers are x<k> base coordinates or declared parameters.
class ExprParser {
 public:
  ExprParser(std::string_view src, int line, VarSetPtr vs) : lex_(src, line), vs_(std::move(vs)) {}

  Poly parse() {
    Poly p = expr();
    if (lex_.peek().kind != Token::End)
      throw ParseError("trailing input after expression", lex_.line(), lex_.peek().column);
    return p;
  }

 private:
  Poly expr() {
    Poly p = term();
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      const bool minus = lex_.take().kind == Token::Minus;
      Poly rhs = term();
      if (minus)
        p -= rhs;
      else
        p += rhs;
    }
    return p;
  }

  Poly term() {
    Poly p = factor();
    while (lex_.peek().kind == Token::Star) {
      lex_.take();
      p *= factor();
    }
    return p;
  }

  Poly factor() {
    Poly p = atom();
    if (lex_.peek().kind == Token::Caret) {
      lex_.take();
      const Token t = lex_.peek();
      if (t.kind != Token::Number)
        throw ParseError("exponent must be a nonnegative integer", lex_.line(), t.column);
      lex_.take();
      const long e = std::stol(t.text);
      Poly out = Poly::constant(vs_, rat(1));
      for (long i = 0; i < e; ++i) out *= p;
      p = std::move(out);
    }
    return p;
  }

  Poly atom() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Token::Minus:
        lex_.take();
        return -atom();
      case Token::LParen: {
        lex_.take();
        Poly p = expr();
        if (lex_.peek().kind != Token::RParen)
          throw ParseError("expected ')'", lex_.line(), lex_.peek().column);
        lex_.take();
        return p;
      }
      case Token::Number: {
        lex_.take();
        std::string text = t.text;
        if (lex_.peek().kind == Token::Slash) {
          lex_.take();
          const Token d = lex_.peek();
          if (d.kind != Token::Number)
            throw ParseError("expected denominator", lex_.line(), d.column);
          lex_.take();
          text += "/" + d.text;
        }
        Rational q;
        try {
          q = rational_from_string(text);
        } catch (const ParseError&) {
          throw ParseError("malformed rational: " + text, lex_.line(), t.column);
        }
        return Poly::constant(vs_, q);
      }
      case Token::Ident: {
        lex_.take();
        return Poly::variable(vs_, resolve(t));
      }
      default:
        throw ParseError("expected a value", lex_.line(), t.column);
    }
  }

  Var resolve(const Token& t) const {
    const std::string& s = t.text;
    if (s.size() >= 2 && s[0] == 'x' && std::isdigit(static_cast<unsigned char>(s[1]))) {
      bool digits = true;
      for (std::size_t i = 1; i < s.size(); ++i)
        digits = digits && std::isdigit(static_cast<unsigned char>(s[i]));
      if (digits) {
        const int k = std::stoi(s.substr(1));
        if (k < 1 || k > vs_->dim())
          throw ParseError("coordinate index out of range: " + s, lex_.line(), t.column);
        return Var::base(k);
      }
    }
    const int ordinal = vs_->param_ordinal(s);
    if (ordinal < 0)
      throw ParseError("undeclared identifier: " + s, lex_.line(), t.column);
    return Var::param(ordinal);
  }

  ExprLexer lex_;
  VarSetPtr vs_;
};

}  // namespace detail

struct ParsedBivector {
  VarSetPtr vs;
  Bivector theta;
};

/// Parses the line-based bivector input format:
///   # comment
///   dim N
///   param NAME
///   theta i j EXPR
/// Unspecified entries are zero; the (j, i) entry is the negation of the
/// (i, j) one. Only x1..xN and declared parameters may appear in entries.
inline ParsedBivector parse_bivector_file(std::string_view text) {
  struct Line {
    int number;
    std::string content;
  };
  std::vector<Line> lines;
  {
    int number = 1;
    std::string cur;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == '\n') {
        auto hash = cur.find('#');
        if (hash != std::string::npos) cur.erase(hash);
        std::size_t a = cur.find_first_not_of(" \t\r");
        if (a != std::string::npos) {
          std::size_t b = cur.find_last_not_of(" \t\r");
          lines.push_back({number, cur.substr(a, b - a + 1)});
        }
        cur.clear();
        ++number;
      } else {
        cur += text[i];
      }
    }
  }

  int dim = -1;
  std::vector<std::string> params;
  std::vector<std::pair<int, std::string>> theta_lines;
  bool seen_theta = false;

  auto split_head = [](const std::string& s) {
    const std::size_t sp = s.find_first_of(" \t");
    if (sp == std::string::npos) return std::make_pair(s, std::string());
    return std::make_pair(s.substr(0, sp), s.substr(s.find_first_not_of(" \t", sp)));
  };

  for (const auto& line : lines) {
    auto [head, rest] = split_head(line.content);
    if (head == "dim") {
      if (dim >= 0) throw ParseError("duplicate dim directive", line.number);
      try {
        std::size_t used = 0;
        dim = std::stoi(rest, &used);
        if (used != rest.size() || dim < 1) throw std::invalid_argument("");
      } catch (...) {
        throw ParseError("dim needs a positive integer", line.number);
      }
    } else if (head == "param") {
      if (dim < 0) throw ParseError("param before dim", line.number);
      if (seen_theta) throw ParseError("param after the first theta line", line.number);
      if (rest.empty() || rest.find_first_of(" \t") != std::string::npos)
        throw ParseError("param needs exactly one name", line.number);
      params.push_back(rest);
    } else if (head == "theta") {
      if (dim < 0) throw ParseError("theta before dim", line.number);
      seen_theta = true;
      theta_lines.emplace_back(line.number, rest);
    } else {
      throw ParseError("unknown directive: " + head, line.number);
    }
  }
  if (dim < 0) throw ParseError("missing dim directive");

  VarSetPtr vs;
  try {
    vs = make_varset(dim, params);
  } catch (const StructuralError& e) {
    throw ParseError(e.what());
  }
  Bivector theta(vs);
  std::map<std::pair<int, int>, int> seen;  // unordered pair -> line

  for (const auto& [number, rest] : theta_lines) {
    // Expect "i j expr".
    std::size_t pos = 0;
    auto read_index = [&]() {
      while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
      std::size_t start = pos;
      while (pos < rest.size() && std::isdigit(static_cast<unsigned char>(rest[pos]))) ++pos;
      if (start == pos) throw ParseError("theta needs two indices", number, static_cast<int>(pos) + 1);
      return std::stoi(rest.substr(start, pos - start));
    };
    const int i = read_index();
    const int j = read_index();
    if (i < 1 || i > dim || j < 1 || j > dim)
      throw ParseError("theta index out of range", number);
    if (i == j) throw ParseError("diagonal entry must vanish", number);
    const auto key = i < j ? std::make_pair(i, j) : std::make_pair(j, i);
    if (auto it = seen.find(key); it != seen.end())
      throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") already given on line " + std::to_string(it->second),
                       number);
    seen.emplace(key, number);
    const std::string expr = pos < rest.size() ? rest.substr(pos) : std::string();
    detail::ExprParser parser(expr, number, vs);
    theta.set(i, j, parser.parse());
  }
  return {vs, theta};
}

/// Canonical rendering of a bivector in the input format; parses back to
/// the same bivector.
inline std::string render_bivector_file(const Bivector& theta) {
  std::string out = "dim " + std::to_string(theta.dim()) + "\n";
  for (const auto& p : theta.varset()->params()) out += "param " + p + "\n";
  for (const auto& [key, value] : theta.upper_entries())
    out += "theta " + std::to_string(key.first) + " " + std::to_string(key.second) + " " +
           value.str(NameStyle::Doubled) + "\n";
  return out;
}

}  // namespace bopp
