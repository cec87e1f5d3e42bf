#include "jetgeo/jet_space.hpp"

#include <algorithm>

#include "jetgeo/error.hpp"

namespace jetgeo {

JetSpace::JetSpace(int n, std::string time, std::vector<std::string> space,
                   std::vector<std::string> fiber)
    : n_(n), time_(std::move(time)), space_(std::move(space)), fiber_(std::move(fiber)) {
  if (n_ < 1) throw ShapeMismatch("spatial dimension must be at least 1");
  if (static_cast<int>(space_.size()) != n_ || static_cast<int>(fiber_.size()) != n_)
    throw ShapeMismatch("expected " + std::to_string(n_) + " space and fiber names");
  std::set<std::string> seen;
  for (const auto& name : coordinates()) {
    if (name.empty()) throw ShapeMismatch("empty coordinate name");
    if (!seen.insert(name).second) throw ShapeMismatch("duplicate coordinate name '" + name + "'");
  }
}

JetSpace JetSpace::standard(int n) {
  std::vector<std::string> space;
  std::vector<std::string> fiber;
  for (int i = 1; i <= n; ++i) {
    space.push_back("x" + std::to_string(i));
    fiber.push_back("y1_" + std::to_string(i));
  }
  return JetSpace(n, "t", std::move(space), std::move(fiber));
}

void JetSpace::add_parameter(std::string name, double value) {
  for (const auto& c : coordinates())
    if (c == name) throw ShapeMismatch("parameter '" + name + "' shadows a coordinate");
  for (auto& [k, v] : params_) {
    if (k == name) {
      v = value;
      return;
    }
  }
  params_.emplace_back(std::move(name), value);
}

std::set<std::string, std::less<>> JetSpace::allowed_names() const {
  std::set<std::string, std::less<>> out;
  for (const auto& c : coordinates()) out.insert(c);
  for (const auto& p : params_) out.insert(p.first);
  return out;
}

std::vector<std::string> JetSpace::coordinates() const {
  std::vector<std::string> out;
  out.push_back(time_);
  out.insert(out.end(), space_.begin(), space_.end());
  out.insert(out.end(), fiber_.begin(), fiber_.end());
  return out;
}

void JetSpace::set_range(const std::string& name, Interval iv) {
  const auto coords = coordinates();
  if (std::find(coords.begin(), coords.end(), name) == coords.end())
    throw UnknownVariable("box range for unknown coordinate '" + name + "'");
  if (!(iv.lo < iv.hi)) throw ShapeMismatch("empty box range for '" + name + "'");
  for (auto& [k, v] : ranges_)
    if (k == name) {
      v = iv;
      return;
    }
  ranges_.emplace_back(name, iv);
}

SampleBox JetSpace::box() const {
  SampleBox b;
  b.set_range(time_, {0.3, 1.2});
  for (const auto& s : space_) b.set_range(s, {0.3, 1.2});
  for (const auto& f : fiber_) b.set_range(f, {-1.0, 1.0});
  for (const auto& [k, v] : params_) b.set_fixed(k, v);
  for (const auto& [k, iv] : ranges_) b.set_range(k, iv);
  return b;
}

}  // namespace jetgeo
