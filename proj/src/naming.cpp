#include "jetgeo/naming.hpp"

namespace jetgeo {

namespace {

std::string token(Kind k, int i) {
  switch (k) {
    case Kind::Time: return "1";
    case Kind::Space: return std::to_string(i + 1);
    case Kind::Vert: return "(" + std::to_string(i + 1) + ")";
  }
  return "?";
}

std::string join(const std::vector<std::string>& parts) {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i];
  }
  return s + "]";
}

}  // namespace

std::string component_name(std::string_view base, const Signature& sig,
                           std::span<const int> idx) {
  std::vector<std::string> lower, upper;
  int upper_vert = 0;
  int lower_vert = 0;
  for (std::size_t s = 0; s < sig.size(); ++s) {
    const std::string tok = token(sig[s].kind, idx[s]);
    if (sig[s].variance == Variance::Up) {
      upper.push_back(tok);
      upper_vert += sig[s].kind == Kind::Vert;
    } else {
      lower.push_back(tok);
      lower_vert += sig[s].kind == Kind::Vert;
    }
  }
  for (int i = 0; i < lower_vert; ++i) upper.emplace_back("(1)");
  std::string name(base);
  if (upper_vert > 0) name += join(std::vector<std::string>(upper_vert, "(1)"));
  if (!lower.empty()) name += join(lower);
  if (!upper.empty()) name += "^" + join(upper);
  return name;
}

std::string component_name(std::string_view base, const DTensor& T, std::size_t flat) {
  std::vector<int> idx = T.multi_index(flat);
  return component_name(base, T.signature(), idx);
}

}  // namespace jetgeo
