#include "csc/rational.hpp"

#include <cctype>

namespace csc {

std::optional<Rat> rat_parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto digits = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits(num) || !digits(den)) return std::nullopt;
    Rat r{mpz_class(num), mpz_class(den)};
    if (r.get_den() == 0) return std::nullopt;
    r.canonicalize();
    return r;
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string intpart = s.substr(0, dot), frac = s.substr(dot + 1);
    if (intpart.empty() || intpart == "-" || intpart == "+") intpart += "0";
    if (!digits(intpart) || frac.empty()) return std::nullopt;
    for (char c : frac)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    mpz_class den(1);
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    bool neg = intpart[0] == '-';
    mpz_class whole(intpart);
    Rat r(abs(whole) * den + mpz_class(frac), den);
    r.canonicalize();
    return neg ? Rat(-r) : r;
  }

  if (!digits(s)) return std::nullopt;
  return Rat(mpz_class(s));
}

}  // namespace csc
