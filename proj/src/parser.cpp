#include "problogic/parser.hpp"

#include <cctype>

namespace problogic {

namespace {

bool ident_start(char c) {
  return c == '_' || std::isalpha(static_cast<unsigned char>(c));
}
bool ident_char(char c) {
  return c == '_' || std::isalnum(static_cast<unsigned char>(c));
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula run() {
    Formula f = parse_iff();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (true) {
      skip_ws();
      if (!eat("<->")) break;
      Formula g = parse_imp();
      // a <-> b  ==  (!a|b) & (!b|a)
      f = Formula::conj(Formula::disj(Formula::neg(f), g),
                        Formula::disj(Formula::neg(g), f));
    }
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_disj();
    while (true) {
      skip_ws();
      // "->" but not "<->" (handled one level up).
      if (text_.substr(pos_, 2) == "->") {
        pos_ += 2;
        Formula g = parse_disj();
        f = Formula::disj(Formula::neg(f), g);
      } else {
        break;
      }
    }
    return f;
  }

  Formula parse_disj() {
    Formula f = parse_conj();
    while (peek() == '|') {
      ++pos_;
      f = Formula::disj(f, parse_conj());
    }
    return f;
  }

  Formula parse_conj() {
    Formula f = parse_unary();
    while (peek() == '&') {
      ++pos_;
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      return Formula::neg(parse_unary());
    }
    if ((c == 'L' || c == 'M') && pos_ + 1 < text_.size() && text_[pos_ + 1] == '[') {
      pos_ += 2;
      Rational r = parse_rat();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ']') fail("expected ']'");
      ++pos_;
      Formula child = parse_unary();
      return c == 'L' ? Formula::at_least(std::move(r), std::move(child))
                      : Formula::at_most(std::move(r), std::move(child));
    }
    return parse_atom();
  }

  Formula parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Formula f = parse_iff();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("unbalanced parentheses");
      ++pos_;
      return f;
    }
    if (!ident_start(c)) fail(std::string("unexpected character '") + c + "'");
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "true") return Formula::top();
    if (name == "false") return Formula::bottom();
    return Formula::prop(std::move(name));
  }

  Rational parse_rat() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
      ++pos_;
    auto r = parse_rational(text_.substr(start, pos_ - start));
    if (!r) {
      pos_ = start;
      fail("malformed rational");
    }
    if (!in_unit_range(*r)) {
      pos_ = start;
      fail("threshold outside [0,1]");
    }
    return *r;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

std::vector<Formula> parse_theory(std::string_view text) {
  std::vector<Formula> out;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t eol = text.find('\n', line_start);
    std::string_view line = text.substr(
        line_start, eol == std::string_view::npos ? std::string_view::npos
                                                  : eol - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) out.push_back(parse(line));
    if (eol == std::string_view::npos) break;
    line_start = eol + 1;
  }
  return out;
}

}  // namespace problogic
