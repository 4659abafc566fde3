#include "mixid/word_parser.hpp"

#include <cctype>

#include "mixid/errors.hpp"

namespace mixid {

namespace {

class Parser {
public:
  explicit Parser(const std::string& text) : s_(text) {}

  Word parse() {
    Word w = word();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return w;
  }

private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!eat(c)) fail(std::string("expected '") + c + "' " + what);
  }

  Word word() {
    Word w = term();
    while (eat('*')) w = w * term();
    return w;
  }

  Word term() {
    Word base = atom();
    skip_ws();
    if (!eat('^')) return base;
    skip_ws();
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+' ||
                             std::isdigit(static_cast<unsigned char>(s_[pos_])))) {
      return base.pow(integer());
    }
    Word by = atom();
    return base.conjugate(by);
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    int sign = 1;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      if (s_[pos_] == '-') sign = -1;
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      pos_ = start;
      fail("expected integer exponent");
    }
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000) fail("exponent too large");
      ++pos_;
    }
    return static_cast<int>(sign * v);
  }

  Word atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected word");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = word();
      expect(')', "to close group");
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word a = word();
      expect(',', "between commutator entries");
      Word b = word();
      expect(']', "to close commutator");
      return a * b * a.inverse() * b.inverse();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("expected variable, constant, '[' or '('");
  }

  Word identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    std::string id = s_.substr(start, pos_ - start);
    if (id == "x") return Word::variable(1);
    if (id == "y") return Word::variable(2);
    if (id == "z") return Word::variable(3);
    if (id.size() == 2 && id[0] == 'x' && id[1] >= '1' && id[1] <= '9') {
      return Word::variable(id[1] - '0');
    }
    return Word::constant(ConstProd::named(id));
  }
};

}  // namespace

Word parse_word(const std::string& text) { return Parser(text).parse(); }

}  // namespace mixid
