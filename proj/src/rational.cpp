#include "tinvis/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tinvis {

std::optional<Rat> rat_from_string(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t slash = text.find('/');
  std::string num = text.substr(0, slash == std::string::npos ? text.size() : slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (!is_int(num) || !is_int(den)) return std::nullopt;
  mpz_class n(num), d(den);
  if (d == 0) return std::nullopt;
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& value) {
  Rat r = value;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat dyadic_below_sqrt(const Rat& square_bound, const Rat& start) {
  if (square_bound <= 0) throw std::invalid_argument("dyadic_below_sqrt: bound must be positive");
  if (start <= 0) throw std::invalid_argument("dyadic_below_sqrt: start must be positive");
  Rat step = start;
  while (step * step > square_bound) step /= 2;
  return step;
}

Rat dyadic_near_sqrt(const Rat& square_bound, const Rat& start, int refine) {
  Rat value = dyadic_below_sqrt(square_bound, start);
  Rat step = value / 2;
  for (int i = 0; i < refine; ++i) {
    Rat next = value + step;
    if (next * next <= square_bound) value = next;
    step /= 2;
  }
  return value;
}

Rat dyadic_above_sqrt(const Rat& square_bound) {
  if (square_bound <= 0) throw std::invalid_argument("dyadic_above_sqrt: bound must be positive");
  Rat step = 1;
  while (step * step < square_bound) step *= 2;
  while (step * step / 4 >= square_bound) step /= 2;
  return step;
}

}  // namespace tinvis
