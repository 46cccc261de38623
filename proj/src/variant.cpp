#include "nsbundle/variant.hpp"

#include <stdexcept>

namespace nsbundle {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::ppa:
      return "ppa";
    case Variant::classic_pba:
      return "pba";
    case Variant::fpba1:
      return "fpba1";
    case Variant::fpba2:
      return "fpba2";
  }
  return "?";
}

Variant variant_from_string(const std::string& s) {
  if (s == "ppa") return Variant::ppa;
  if (s == "pba" || s == "classic_pba") return Variant::classic_pba;
  if (s == "fpba1") return Variant::fpba1;
  if (s == "fpba2") return Variant::fpba2;
  throw std::invalid_argument("unknown algorithm: " + s);
}

}  // namespace nsbundle
