#include "unicoh/scalar.hpp"

#include <cctype>

namespace unicoh {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotUnipotent: return "NotUnipotent";
    case Errc::NotQuasiUnipotent: return "NotQuasiUnipotent";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::MalformedWord: return "MalformedWord";
    case Errc::BadComplexStructure: return "BadComplexStructure";
    case Errc::BadDegree: return "BadDegree";
    case Errc::WrongArity: return "WrongArity";
    case Errc::NotKahler: return "NotKahler";
    case Errc::NotNef: return "NotNef";
    case Errc::ChainStalled: return "ChainStalled";
    case Errc::LChainNotFound: return "LChainNotFound";
    case Errc::InvalidChain: return "InvalidChain";
    case Errc::NotInFj: return "NotInFj";
    case Errc::BadParameters: return "BadParameters";
    case Errc::ParseError: return "ParseError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

GaussRat& GaussRat::operator/=(const GaussRat& o) {
  require(!o.is_zero(), Errc::Internal, "division by zero");
  if (im == 0 && o.im == 0) {
    re /= o.re;
    return *this;
  }
  Rat n = o.norm();
  Rat r = (re * o.re + im * o.im) / n;
  im = (im * o.re - re * o.im) / n;
  re = std::move(r);
  return *this;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

Rat rat_from_string(const std::string& s) {
  if (s.empty()) fail(Errc::ParseError, "empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      fail(Errc::ParseError, "bad rational literal '" + s + "'");
  }
  Rat r;
  if (r.set_str(s, 10) != 0) fail(Errc::ParseError, "bad rational literal '" + s + "'");
  if (r.get_den() == 0) fail(Errc::ParseError, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string gauss_to_string(const GaussRat& z) {
  if (z.im == 0) return rat_to_string(z.re);
  std::string s = rat_to_string(z.re);
  s += (z.im < 0) ? "-" : "+";
  Rat a = abs(z.im);
  s += rat_to_string(a) + "i";
  return s;
}

} // namespace unicoh
