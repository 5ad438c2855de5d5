#include "horolab/core/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace horolab {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class parse_integer(const std::string& s) {
  if (!is_integer_literal(s)) throw std::invalid_argument("not an integer literal: '" + s + "'");
  return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class num = parse_integer(trim(s.substr(0, slash)));
    mpz_class den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string tail = s.substr(dot + 1);
    bool negative = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) head = head.substr(1);
    if (head.empty()) head = "0";
    if (tail.empty() || !is_integer_literal(head) || !is_integer_literal(tail) || tail[0] == '-' ||
        tail[0] == '+')
      throw std::invalid_argument("malformed decimal literal '" + s + "'");
    mpz_class den = 1;
    for (size_t i = 0; i < tail.size(); ++i) den *= 10;
    mpz_class num = parse_integer(head) * den + parse_integer(tail);
    if (negative) num = -num;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(s));
}

std::vector<Rational> parse_rational_list(std::string_view csv) {
  std::vector<Rational> out;
  size_t start = 0;
  while (start <= csv.size()) {
    size_t comma = csv.find(',', start);
    if (comma == std::string_view::npos) comma = csv.size();
    out.push_back(parse_rational(csv.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

}  // namespace horolab
