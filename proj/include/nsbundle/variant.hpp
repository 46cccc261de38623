#pragma once

#include <string>

namespace nsbundle {

/// Outer-loop drivers. ppa and classic_pba run without momentum; fpba1 uses
/// the Nesterov extrapolation only, fpba2 adds the second momentum term.
enum class Variant { ppa, classic_pba, fpba1, fpba2 };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

inline bool has_momentum(Variant v) {
  return v == Variant::fpba1 || v == Variant::fpba2;
}

}  // namespace nsbundle
