#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jetgeo/expr.hpp"
#include "jetgeo/zero_test.hpp"

namespace jetgeo {

// Coordinates (t, x^i, y1_i) of the 1-jet space over a real time axis and an
// n-dimensional configuration manifold. Spatial indices are 0-based in code
// and 1-based in names and reports.
class JetSpace {
 public:
  // Throws ShapeMismatch when the name counts disagree with n or names repeat.
  JetSpace(int n, std::string time, std::vector<std::string> space,
           std::vector<std::string> fiber);

  // t, x1..xn, y1_1..y1_n.
  static JetSpace standard(int n);

  int n() const noexcept { return n_; }
  const std::string& time_name() const noexcept { return time_; }
  const std::string& space_name(int i) const { return space_.at(i); }
  const std::string& fiber_name(int i) const { return fiber_.at(i); }
  const std::vector<std::string>& space_names() const noexcept { return space_; }
  const std::vector<std::string>& fiber_names() const noexcept { return fiber_; }

  Expr t() const { return Expr::variable(time_); }
  Expr x(int i) const { return Expr::variable(space_.at(i)); }
  Expr y(int i) const { return Expr::variable(fiber_.at(i)); }

  // Named constants (for instance pi) usable in expressions; they are fixed
  // during sampling.
  void add_parameter(std::string name, double value);
  const std::vector<std::pair<std::string, double>>& parameters() const noexcept {
    return params_;
  }

  // Overrides the sampling interval of one coordinate. Throws UnknownVariable
  // for a name that is not a coordinate.
  void set_range(const std::string& name, Interval iv);
  const std::vector<std::pair<std::string, Interval>>& ranges() const noexcept {
    return ranges_;
  }

  // All coordinate names plus parameters.
  std::set<std::string, std::less<>> allowed_names() const;
  std::vector<std::string> coordinates() const;

  // t and x in [0.3, 1.2], fiber coordinates in [-1, 1], parameters fixed,
  // then the overrides.
  SampleBox box() const;

  bool same_coordinates(const JetSpace& o) const noexcept {
    return n_ == o.n_ && time_ == o.time_ && space_ == o.space_ && fiber_ == o.fiber_;
  }

 private:
  int n_;
  std::string time_;
  std::vector<std::string> space_;
  std::vector<std::string> fiber_;
  std::vector<std::pair<std::string, double>> params_;
  std::vector<std::pair<std::string, Interval>> ranges_;
};

}  // namespace jetgeo
