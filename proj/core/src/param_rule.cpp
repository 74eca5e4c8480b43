#include "levyps/param_rule.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace levyps {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s) {
  s = trim(s);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw std::invalid_argument("not a finite number: '" + std::string(s) + "'");
  }
  return value;
}

std::vector<double> parse_numbers(std::string_view s) {
  std::vector<double> out;
  s = trim(s);
  if (s.empty()) return out;
  while (true) {
    auto comma = s.find(',');
    out.push_back(parse_number(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

ParamRule ParamRule::parse(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("unterminated list");
    auto values = parse_numbers(text.substr(1, text.size() - 2));
    if (values.empty()) throw std::invalid_argument("empty list");
    return ParamRule(List{std::move(values)});
  }
  const auto space = text.find(' ');
  const std::string_view head = text.substr(0, space);
  const std::string_view rest = space == std::string_view::npos ? "" : text.substr(space + 1);
  auto args = parse_numbers(rest);
  auto want = [&](std::size_t n) {
    if (args.size() != n) {
      throw std::invalid_argument("rule '" + std::string(head) + "' takes " +
                                  std::to_string(n) + " argument(s)");
    }
  };
  if (head == "constant") {
    want(1);
    return ParamRule(Constant{args[0]});
  }
  if (head == "alternating") {
    want(2);
    return ParamRule(Alternating{args[0], args[1]});
  }
  if (head == "harmonic") {
    want(0);
    return ParamRule(Harmonic{});
  }
  if (head == "power") {
    want(1);
    return ParamRule(Power{args[0]});
  }
  if (head == "geometric") {
    want(1);
    return ParamRule(Geometric{args[0]});
  }
  throw std::invalid_argument("unknown rule '" + std::string(head) + "'");
}

std::vector<double> ParamRule::expand(Truncation K) const {
  std::vector<double> out(K.K());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    out[i] = std::visit(
        [&](const auto& r) -> double {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, List>) {
            if (r.values.size() < out.size()) {
              throw std::invalid_argument("list has " + std::to_string(r.values.size()) +
                                          " entries, K=" + std::to_string(out.size()));
            }
            return r.values[i];
          } else if constexpr (std::is_same_v<R, Constant>) {
            return r.value;
          } else if constexpr (std::is_same_v<R, Alternating>) {
            return (i % 2 == 0) ? r.odd : r.even;
          } else if constexpr (std::is_same_v<R, Harmonic>) {
            return 1.0 / n;
          } else if constexpr (std::is_same_v<R, Power>) {
            return std::pow(n, -r.exponent);
          } else {
            return std::pow(r.ratio, n);
          }
        },
        rule_);
  }
  return out;
}

std::string ParamRule::to_string() const {
  return std::visit(
      [](const auto& r) -> std::string {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, List>) {
          return "[" + join(r.values) + "]";
        } else if constexpr (std::is_same_v<R, Constant>) {
          return "constant " + format_double(r.value);
        } else if constexpr (std::is_same_v<R, Alternating>) {
          return "alternating " + format_double(r.odd) + ", " + format_double(r.even);
        } else if constexpr (std::is_same_v<R, Harmonic>) {
          return "harmonic";
        } else if constexpr (std::is_same_v<R, Power>) {
          return "power " + format_double(r.exponent);
        } else {
          return "geometric " + format_double(r.ratio);
        }
      },
      rule_);
}

bool operator==(const ParamRule& a, const ParamRule& b) {
  return a.to_string() == b.to_string();
}

}  // namespace levyps
