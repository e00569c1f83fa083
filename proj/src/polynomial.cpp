#include "frobweb/polynomial.hpp"

#include <sstream>

namespace frobweb {
namespace detail {

PowerParts power_parts(Complex z, const Ratio& e, int order) {
  if (e == Ratio(0)) return {1.0, 0.0, 0.0};
  const double ed = to_double(e);
  if (is_integer(e)) {
    const long n = static_cast<long>(e.numerator());
    PowerParts out{ipow(z, n), 0.0, 0.0};
    if (order >= 1) out.p1 = ed * ipow(z, n - 1);
    if (order >= 2) out.p2 = (n == 1) ? Complex(0.0) : ed * (ed - 1.0) * ipow(z, n - 2);
    return out;
  }
  if (z == Complex(0.0)) {
    if (ed - order < 0.0) {
      throw Error(ErrorKind::kBranchViolation, "rational exponent derivative at zero");
    }
    return {0.0, 0.0, 0.0};
  }
  if (z.real() <= 0.0) {
    throw Error(ErrorKind::kBranchViolation, "rational exponent requires Re(base) > 0");
  }
  const Complex v = std::pow(z, ed);
  return {v, ed * v / z, ed * (ed - 1.0) * v / (z * z)};
}

}  // namespace detail

std::string to_string(const Ratio& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

std::string to_string(const ExactPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.str() << ')';
    if (mono.first != Ratio(0)) os << "*x^" << to_string(mono.first);
    if (mono.second != Ratio(0)) os << "*y^" << to_string(mono.second);
  }
  return os.str();
}

Ratio parse_ratio(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Ratio(std::stoll(text));
    return Ratio(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw Error(ErrorKind::kParseError, "invalid rational '" + text + "'");
  }
}

namespace {

// cpp_int treats a leading zero as an octal prefix; normalize first.
boost::multiprecision::cpp_int parse_integer(std::string text) {
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.erase(0, 1);
  }
  const auto nz = text.find_first_not_of('0');
  text = nz == std::string::npos ? "0" : text.substr(nz);
  if (text.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("not an integer");
  }
  boost::multiprecision::cpp_int value(text);
  return negative ? -value : value;
}

}  // namespace

Exact parse_exact(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      return Exact(parse_integer(text.substr(0, slash))) /
             Exact(parse_integer(text.substr(slash + 1)));
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Exact(parse_integer(text));
    // decimal literal: digits after the point become a power-of-ten denominator
    boost::multiprecision::cpp_int den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Exact(parse_integer(text.substr(0, dot) + text.substr(dot + 1))) / Exact(den);
  } catch (const std::exception&) {
    throw Error(ErrorKind::kParseError, "invalid exact number '" + text + "'");
  }
}

}  // namespace frobweb
