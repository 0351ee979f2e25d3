#pragma once

// Text form of homogeneous noncommutative polynomials, e.g.
//   "2 x1 x2 + 3/4*x2*x1 - x1^2"
// Terms are products of a coefficient (integer or a/b) and letters x1..xn;
// factors may be joined by '*' or juxtaposed, and x_i^e repeats a letter.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "skewcliff/error.hpp"
#include "skewcliff/field.hpp"
#include "skewcliff/freealg.hpp"

namespace skewcliff {

namespace detail {

class RelationLexer {
 public:
  RelationLexer(std::string_view text, int n, char letter) : s_(text), n_(n), letter_(letter) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, "column " + std::to_string(pos_ + 1) + ": " + msg + " in \"" + std::string(s_) + "\"");
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_space();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::string digits() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }

  Rational number() {
    mpz_class num(digits());
    if (!accept('/')) return Rational(num);
    mpz_class den(digits());
    if (den == 0) fail("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  int variable() {
    skip_space();
    if (pos_ >= s_.size() || s_[pos_] != letter_) fail(std::string("expected ") + letter_ + "<index>");
    ++pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a variable index");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const auto text = s_.substr(start, pos_ - start);
    if (text.size() > 3) fail("variable index too large");
    const int idx = std::stoi(std::string(text));
    if (idx < 1 || idx > n_) {
      pos_ = start;
      fail("variable index " + std::string(text) + " outside 1.." + std::to_string(n_));
    }
    return idx - 1;
  }

  char letter() const { return letter_; }

 private:
  std::string_view s_;
  int n_;
  char letter_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a homogeneous element of k<x1..xn>. Throws ParseError on bad
/// syntax and NotHomogeneous when the surviving terms differ in degree.
template <class F>
NcPoly<F> relation_parse(const F& k, std::string_view text, int n, char letter = 'x') {
  if (n < 1 || n > 255) throw Error(ErrorKind::BadParams, "number of generators must lie in 1..255");
  detail::RelationLexer lex(text, n, letter);
  NcPoly<F> out(n);
  if (lex.done()) lex.fail("empty expression");
  bool first = true;
  while (!lex.done()) {
    bool negative = false;
    if (lex.accept('+')) {
    } else if (lex.accept('-')) {
      negative = true;
    } else if (!first) {
      lex.fail("expected '+' or '-'");
    }
    first = false;

    Rational coeff(1);
    std::vector<std::uint8_t> letters;
    bool any = false;
    while (true) {
      const char c = lex.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= lex.number();
      } else if (c == lex.letter()) {
        const int v = lex.variable();
        long reps = 1;
        if (lex.accept('^')) {
          const auto e = lex.digits();
          if (e.size() > 2) lex.fail("exponent too large");
          reps = std::stol(e);
        }
        letters.insert(letters.end(), static_cast<std::size_t>(reps), static_cast<std::uint8_t>(v));
      } else {
        if (!any) lex.fail("expected a coefficient or a variable");
        break;
      }
      any = true;
      if (lex.accept('*')) {
        const char nxt = lex.peek();
        if (!std::isdigit(static_cast<unsigned char>(nxt)) && nxt != lex.letter()) lex.fail("dangling '*'");
      }
    }
    if (negative) coeff = -coeff;
    out.add_term(k, Word(std::move(letters)), k.from_rational(coeff));
  }
  if (!out.is_zero() && !out.homogeneous_degree())
    throw Error(ErrorKind::NotHomogeneous, "\"" + std::string(text) + "\" is not homogeneous");
  return out;
}

}  // namespace skewcliff
