#include "cflow/interval_expr.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace cflow {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int k) : k_(k) {
    for (const char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
    }
  }

  IntervalSet parse() {
    IntervalSet v = expr();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression position " + std::to_string(pos_) + ": " + what);
  }

  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_word(std::string_view w) {
    if (s_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  IntervalSet expr() {
    IntervalSet v = join();
    while (eat('|')) v = unite(v, join());
    return v;
  }

  IntervalSet join() {
    IntervalSet v = meet();
    while (eat('+')) v = add(v, meet());
    return v;
  }

  IntervalSet meet() {
    IntervalSet v = lit();
    while (eat('^')) v = intersect(v, lit());
    return v;
  }

  IntervalSet lit() {
    IntervalSet v = unary();
    while (eat('u')) v = unite(v, unary());
    return v;
  }

  IntervalSet unary() {
    if (eat('~')) return open_complement(unary());
    return atom();
  }

  // "(" INT "," INT ")" at the current position, if present.
  bool interval_literal(int& a, int& b) {
    std::size_t i = pos_ + 1;
    const auto number = [&](int& out) {
      const std::size_t start = i;
      while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) ++i;
      if (i == start || i - start > 9) return false;
      out = std::stoi(s_.substr(start, i - start));
      return true;
    };
    if (!number(a) || i >= s_.size() || s_[i] != ',') return false;
    ++i;
    if (!number(b) || i >= s_.size() || s_[i] != ')') return false;
    pos_ = i + 1;
    return true;
  }

  IntervalSet atom() {
    if (eat_word("empty")) return IntervalSet::empty(k_);
    if (eat_word("full")) return IntervalSet::full(k_);
    if (pos_ < s_.size() && s_[pos_] == '(') {
      int a = 0;
      int b = 0;
      const std::size_t at = pos_;
      if (interval_literal(a, b)) {
        const std::pair<int, int> iv{a, b};
        try {
          return IntervalSet::from_intervals(k_, std::span(&iv, 1));
        } catch (const std::invalid_argument& e) {
          pos_ = at;
          fail(e.what());
        }
      }
      ++pos_;
      IntervalSet v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end");
  }

  std::string s_;
  std::size_t pos_ = 0;
  int k_;
};

}  // namespace

IntervalSet evaluate_expression(std::string_view text, int modulus) {
  return Parser(text, modulus).parse();
}

}  // namespace cflow
