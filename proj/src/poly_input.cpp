#include "ptroots/poly_input.hpp"

#include <cctype>
#include <map>

namespace ptroots {

namespace {

constexpr unsigned long kMaxExponent = 1'000'000UL;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_spaces() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
};

mpz_class read_number(Cursor& cur) {
  std::size_t start = cur.pos;
  std::string digits;
  while (!cur.done() && is_digit(cur.peek())) digits.push_back(cur.text[cur.pos++]);
  if (digits.empty()) throw PolyParseError("expected a number", start);
  return mpz_class(digits, 10);
}

unsigned long read_exponent(Cursor& cur) {
  std::size_t start = cur.pos;
  mpz_class e = read_number(cur);
  if (e > kMaxExponent)
    throw PolyParseError("exponent exceeds the supported bound", start);
  return e.get_ui();
}

std::vector<mpz_class> parse_symbolic(const std::string& text) {
  Cursor cur{text};
  std::map<unsigned long, mpz_class> terms;
  bool first = true;
  cur.skip_spaces();
  if (cur.done()) throw PolyParseError("empty polynomial", 0);
  while (!cur.done()) {
    int sign = 1;
    if (cur.peek() == '+' || cur.peek() == '-') {
      if (cur.peek() == '-') sign = -1;
      ++cur.pos;
      cur.skip_spaces();
    } else if (!first) {
      throw PolyParseError("expected + or - between terms", cur.pos);
    }
    first = false;

    mpz_class coeff = 1;
    bool saw_coeff = false;
    if (!cur.done() && is_digit(cur.peek())) {
      coeff = read_number(cur);
      saw_coeff = true;
      cur.skip_spaces();
      if (!cur.done() && cur.peek() == '*') {
        ++cur.pos;
        cur.skip_spaces();
        if (cur.done() || cur.peek() != 'x')
          throw PolyParseError("expected x after *", cur.pos);
      }
    }

    unsigned long expo = 0;
    if (!cur.done() && cur.peek() == 'x') {
      ++cur.pos;
      expo = 1;
      if (!cur.done() && cur.peek() == '^') {
        ++cur.pos;
        expo = read_exponent(cur);
      }
    } else if (!saw_coeff) {
      throw PolyParseError("expected a term", cur.pos);
    }

    terms[expo] += sign * coeff;
    cur.skip_spaces();
  }
  unsigned long top = 0;
  for (const auto& [e, c] : terms)
    if (c != 0) top = std::max(top, e);
  std::vector<mpz_class> out(top + 1, 0);
  for (const auto& [e, c] : terms)
    if (c != 0) out[e] = c;
  return out;
}

std::vector<mpz_class> parse_list(const std::string& text) {
  std::vector<mpz_class> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t base = pos;
    std::size_t b = 0, e = item.size();
    while (b < e && std::isspace(static_cast<unsigned char>(item[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(item[e - 1]))) --e;
    if (b == e) throw PolyParseError("empty coefficient", base + b);
    std::string body = item.substr(b, e - b);
    std::size_t k = 0;
    if (body[k] == '+' || body[k] == '-') ++k;
    if (k == body.size()) throw PolyParseError("expected digits", base + b + k);
    for (; k < body.size(); ++k)
      if (!is_digit(body[k]))
        throw PolyParseError("invalid character in coefficient", base + b + k);
    if (body[0] == '+') body.erase(0, 1);
    out.push_back(mpz_class(body, 10));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

std::vector<mpz_class> parse_poly_text(const std::string& text) {
  if (text.find('x') != std::string::npos) return parse_symbolic(text);
  if (text.find(',') != std::string::npos) return parse_list(text);
  // A bare integer is a constant polynomial either way.
  return parse_list(text);
}

}  // namespace ptroots
