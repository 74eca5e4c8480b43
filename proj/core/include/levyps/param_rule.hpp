#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "levyps/model.hpp"

namespace levyps {

// Per-coordinate parameter sequences, either listed or generated by a rule.
// Textual forms (canonical output shown):
//   "constant 0.5"          c for every n
//   "alternating 0.2, 0.8"  a for odd n, b for even n
//   "harmonic"              1/n
//   "power 2"               n^-2
//   "geometric 0.5"         0.5^n
// Lists are written as "[0.1, 0.2, 0.3]" and must have length >= K.
class ParamRule {
 public:
  struct List { std::vector<double> values; };
  struct Constant { double value; };
  struct Alternating { double odd; double even; };
  struct Harmonic {};
  struct Power { double exponent; };
  struct Geometric { double ratio; };
  using Variant = std::variant<List, Constant, Alternating, Harmonic, Power, Geometric>;

  ParamRule(Variant v) : rule_(std::move(v)) {}

  // Throws std::invalid_argument with a readable message on bad input.
  static ParamRule parse(std::string_view text);

  std::vector<double> expand(Truncation K) const;
  std::string to_string() const;

  const Variant& variant() const noexcept { return rule_; }
  friend bool operator==(const ParamRule& a, const ParamRule& b);

 private:
  Variant rule_;
};

// Shortest decimal text that parses back to exactly x.
std::string format_double(double x);

}  // namespace levyps
