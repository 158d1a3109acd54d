#include "cvn/rational.hpp"

#include <stdexcept>

namespace cvn {

std::string rational_to_string(const Rational& r) {
  std::string num = numerator(r).str();
  if (denominator(r) == 1) return num;
  return num + "/" + denominator(r).str();
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos)
      return Rational(Integer(std::string(text)));
    Integer num{std::string(text.substr(0, slash))};
    Integer den{std::string(text.substr(slash + 1))};
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument("bad rational '" + std::string(text) +
                                "': " + e.what());
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace cvn
