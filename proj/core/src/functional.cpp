#include "levyps/functional.hpp"

#include <string>

#include "levyps/errors.hpp"

namespace levyps {

FiniteFunctional::FiniteFunctional(
    std::initializer_list<std::pair<const Index, double>> entries) {
  for (const auto& [n, v] : entries) set(n, v);
}

FiniteFunctional FiniteFunctional::from_dense(std::span<const double> dense) {
  FiniteFunctional out;
  for (std::size_t i = 0; i < dense.size(); ++i) out.set(i + 1, dense[i]);
  return out;
}

FiniteFunctional FiniteFunctional::axis(Index n, double value) {
  FiniteFunctional out;
  out.set(n, value);
  return out;
}

double FiniteFunctional::operator[](Index n) const noexcept {
  auto it = entries_.find(n);
  return it == entries_.end() ? 0.0 : it->second;
}

void FiniteFunctional::set(Index n, double value) {
  if (n == 0) throw PreconditionError("functional indices are 1-based");
  if (value == 0.0) {
    entries_.erase(n);
  } else {
    entries_[n] = value;
  }
}

FiniteFunctional::Index FiniteFunctional::max_index() const noexcept {
  return entries_.empty() ? 0 : entries_.rbegin()->first;
}

std::vector<FiniteFunctional::Index> FiniteFunctional::support() const {
  std::vector<Index> out;
  out.reserve(entries_.size());
  for (const auto& [n, v] : entries_) out.push_back(n);
  return out;
}

double FiniteFunctional::pair(std::span<const double> x) const {
  double acc = 0.0;
  for (const auto& [n, v] : entries_) {
    if (n > x.size()) throw PreconditionError("functional index exceeds vector length");
    acc += v * x[n - 1];
  }
  return acc;
}

std::vector<double> FiniteFunctional::to_dense(std::size_t K) const {
  require_within(*this, K, "to_dense");
  std::vector<double> out(K, 0.0);
  for (const auto& [n, v] : entries_) out[n - 1] = v;
  return out;
}

FiniteFunctional operator+(const FiniteFunctional& a, const FiniteFunctional& b) {
  FiniteFunctional out = a;
  for (const auto& [n, v] : b.entries_) out.set(n, a[n] + v);
  return out;
}

FiniteFunctional operator-(const FiniteFunctional& a, const FiniteFunctional& b) {
  FiniteFunctional out = a;
  for (const auto& [n, v] : b.entries_) out.set(n, a[n] - v);
  return out;
}

FiniteFunctional operator-(const FiniteFunctional& a) {
  FiniteFunctional out;
  for (const auto& [n, v] : a.entries_) out.entries_[n] = -v;
  return out;
}

FiniteFunctional operator*(double s, const FiniteFunctional& a) {
  FiniteFunctional out;
  for (const auto& [n, v] : a.entries_) out.set(n, s * v);
  return out;
}

void require_within(const FiniteFunctional& phi, std::size_t K, const char* what) {
  if (phi.max_index() > K) {
    throw PreconditionError(std::string(what) + ": functional index " +
                            std::to_string(phi.max_index()) +
                            " outside truncation K=" + std::to_string(K));
  }
}

}  // namespace levyps
