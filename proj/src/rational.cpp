#include "pilex/rational.hpp"

#include <cctype>

#include "pilex/errors.hpp"

namespace pilex {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view text) {
  std::string_view t = text;
  bool negative = false;
  if (!t.empty() && (t.front() == '-' || t.front() == '+')) {
    negative = t.front() == '-';
    t.remove_prefix(1);
  }
  if (t.empty()) throw ParseError("empty integer in rational: '" + std::string(text) + "'");
  for (char c : t) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("invalid digit '" + std::string(1, c) + "' in rational");
    }
  }
  mpz_class v(std::string(t), 10);
  return negative ? mpz_class(-v) : v;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view t = trim(text);
  if (t.empty()) throw ParseError("empty rational");
  auto slash = t.find('/');
  mpz_class num, den;
  if (slash == std::string_view::npos) {
    num = parse_integer(t);
    den = 1;
  } else {
    num = parse_integer(t.substr(0, slash));
    den = parse_integer(t.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in rational: '" + std::string(text) + "'");
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string format_rat(const Rat& value) { return value.get_str(); }

std::vector<Rat> parse_rat_list(std::string_view text) {
  std::vector<Rat> out;
  std::size_t start = 0;
  auto is_sep = [](char c) {
    return c == ',' || std::isspace(static_cast<unsigned char>(c));
  };
  while (start < text.size()) {
    while (start < text.size() && is_sep(text[start])) ++start;
    if (start >= text.size()) break;
    std::size_t end = start;
    while (end < text.size() && !is_sep(text[end])) ++end;
    out.push_back(parse_rat(text.substr(start, end - start)));
    start = end;
  }
  return out;
}

}  // namespace pilex
