#include "hurwitz/parse.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/errors.hpp"

namespace hurwitz {
namespace {

// One real coefficient, exact when possible.
struct Coefficient {
  std::optional<mpq_class> exact;
  std::string decimal;  // used when exact is empty
};

bool is_integer_text(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(const std::string& s) {
  if (!is_integer_text(s)) throw ParseError("bad integer '" + s + "'");
  return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

Coefficient parse_coefficient(const std::string& s) {
  if (s.empty()) throw ParseError("empty component");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const mpz_class p = parse_integer(s.substr(0, slash));
    const std::string qs = s.substr(slash + 1);
    if (!qs.empty() && (qs[0] == '+' || qs[0] == '-')) throw ParseError("signed denominator in '" + s + "'");
    const mpz_class q = parse_integer(qs);
    if (q == 0) throw ParseError("zero denominator in '" + s + "'");
    mpq_class v(p, q);
    v.canonicalize();
    return {v, {}};
  }
  if (is_integer_text(s)) return {mpq_class(parse_integer(s)), {}};
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' ||
          c == '+' || c == '-')) {
      throw ParseError("bad number '" + s + "'");
    }
  }
  return {std::nullopt, s};
}

struct ComplexParts {
  Coefficient re{mpq_class(0), {}};
  Coefficient im{mpq_class(0), {}};
  bool exact() const { return re.exact.has_value() && im.exact.has_value(); }
};

ComplexParts parse_complex(const std::string& s) {
  if (s.empty()) throw ParseError("empty literal");
  std::vector<std::string> terms;
  std::size_t start = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const char prev = s[i - 1];
    if ((s[i] == '+' || s[i] == '-') && prev != 'e' && prev != 'E') {
      terms.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  terms.push_back(s.substr(start));
  if (terms.size() > 2) throw ParseError("too many terms in '" + s + "'");

  ComplexParts out;
  bool have_re = false;
  bool have_im = false;
  for (std::string t : terms) {
    if (!t.empty() && t.back() == 'i') {
      if (have_im) throw ParseError("two imaginary parts in '" + s + "'");
      have_im = true;
      t.pop_back();
      if (!t.empty() && t.back() == '*') t.pop_back();
      if (t.empty() || t == "+") t = "1";
      if (t == "-") t = "-1";
      out.im = parse_coefficient(t);
    } else {
      if (have_re) throw ParseError("two real parts in '" + s + "'");
      have_re = true;
      out.re = parse_coefficient(t);
    }
  }
  return out;
}

BigFloat to_float(const Coefficient& c, mpfr_prec_t prec) {
  if (c.exact) return BigFloat(*c.exact, prec);
  return BigFloat(c.decimal, prec);
}

Number to_number(const ComplexParts& p, mpfr_prec_t prec) {
  if (p.exact()) return GaussianRational::from_components(*p.re.exact, *p.im.exact);
  return BigComplex(to_float(p.re, prec), to_float(p.im, prec));
}

}  // namespace

Number parse_number(std::string_view text, mpfr_prec_t prec) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty literal");
  if (s[0] != '(') return to_number(parse_complex(s), prec);

  const auto close = s.find(')');
  if (close == std::string::npos) throw ParseError("unbalanced parenthesis in '" + s + "'");
  const ComplexParts num = parse_complex(s.substr(1, close - 1));
  std::string rest = s.substr(close + 1);
  if (rest.empty()) return to_number(num, prec);
  if (rest[0] != '/') throw ParseError("expected '/' after ')' in '" + s + "'");
  rest = rest.substr(1);
  if (!rest.empty() && rest.front() == '(') {
    if (rest.back() != ')') throw ParseError("unbalanced parenthesis in '" + s + "'");
    rest = rest.substr(1, rest.size() - 2);
  }
  const ComplexParts den = parse_complex(rest);
  if (num.exact() && den.exact()) {
    const GaussianRational d = GaussianRational::from_components(*den.re.exact, *den.im.exact);
    if (d.is_zero()) throw ParseError("zero denominator in '" + s + "'");
    return GaussianRational::from_components(*num.re.exact, *num.im.exact) / d;
  }
  const BigComplex d(to_float(den.re, prec), to_float(den.im, prec));
  if (d.is_zero()) throw ParseError("zero denominator in '" + s + "'");
  return BigComplex(to_float(num.re, prec), to_float(num.im, prec)) / d;
}

}  // namespace hurwitz
