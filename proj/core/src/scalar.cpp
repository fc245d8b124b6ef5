#include "balltiling/scalar.hpp"

#include <cctype>

namespace balltiling {

namespace {

std::string normalize_minus(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2212 MINUS SIGN is E2 88 92 in UTF-8.
    if (i + 2 < text.size() &&static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      out.push_back(text[i]);
    }
  }
  return out;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Scalar parse_decimal(const std::string& s) {
  std::string mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    std::string ex = s.substr(e + 1);
    std::string_view digits = ex;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.remove_prefix(1);
    if (!all_digits(digits)) throw DomainError("bad exponent in scalar '" + s + "'");
    exp10 = std::stol(ex);
  }
  bool neg = false;
  std::string_view m = mant;
  if (!m.empty() && (m[0] == '-' || m[0] == '+')) {
    neg = m[0] == '-';
    m.remove_prefix(1);
  }
  std::string digits;
  auto dot = m.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(m);
  } else {
    digits = std::string(m.substr(0, dot)) + std::string(m.substr(dot + 1));
    exp10 -= static_cast<long>(m.size() - dot - 1);
  }
  if (!all_digits(digits)) throw DomainError("bad scalar '" + s + "'");
  mpz_class num(digits, 10);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Scalar out = exp10 < 0 ? Scalar(num, pow10) : Scalar(num * pow10);
  out.canonicalize();
  return neg ? Scalar(-out) : out;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string s = normalize_minus(text);
  if (s.empty()) throw DomainError("empty scalar");
  if (s.find_first_of(".eE") != std::string::npos) return parse_decimal(s);
  std::string_view body = s;
  if (body[0] == '-' || body[0] == '+') body.remove_prefix(1);
  auto slash = body.find('/');
  if (slash == std::string_view::npos) {
    if (!all_digits(body)) throw DomainError("bad scalar '" + s + "'");
  } else if (!all_digits(body.substr(0, slash)) || !all_digits(body.substr(slash + 1))) {
    throw DomainError("bad scalar '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  Scalar out;
  try {
    out = Scalar(s, 10);
  } catch (const std::invalid_argument&) {
    throw DomainError("bad scalar '" + s + "'");
  }
  if (out.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
  out.canonicalize();
  return out;
}

std::string to_string(const Scalar& s) { return s.get_str(10); }

TailIndex parse_index(std::string_view text) {
  if (!all_digits(text)) throw DomainError("bad coordinate index '" + std::string(text) + "'");
  return TailIndex(std::string(text), 10);
}

std::string to_string(const TailIndex& i) { return i.get_str(10); }

Scalar dyadic(unsigned j) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, j);
  return Scalar(mpz_class(1), den);
}

mpz_class floor(const Scalar& s) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  return out;
}

}  // namespace balltiling
