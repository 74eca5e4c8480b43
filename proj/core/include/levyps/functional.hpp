#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace levyps {

// A finitely supported element of the dual space, stored sparsely.
// Indices are 1-based coordinates; zero entries are never stored.
class FiniteFunctional {
 public:
  using Index = std::size_t;

  FiniteFunctional() = default;
  FiniteFunctional(std::initializer_list<std::pair<const Index, double>> entries);

  // Coordinate i+1 takes dense[i]; zeros are dropped.
  static FiniteFunctional from_dense(std::span<const double> dense);
  // Single-coordinate functional value * e_n.
  static FiniteFunctional axis(Index n, double value);

  double operator[](Index n) const noexcept;
  void set(Index n, double value);

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  // Largest index with a non-zero entry, 0 for the zero functional.
  Index max_index() const noexcept;
  std::vector<Index> support() const;

  // <phi, x> where x holds coordinates 1..x.size().
  double pair(std::span<const double> x) const;

  std::vector<double> to_dense(std::size_t K) const;

  const std::map<Index, double>& entries() const noexcept { return entries_; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend FiniteFunctional operator+(const FiniteFunctional& a, const FiniteFunctional& b);
  friend FiniteFunctional operator-(const FiniteFunctional& a, const FiniteFunctional& b);
  friend FiniteFunctional operator-(const FiniteFunctional& a);
  friend FiniteFunctional operator*(double s, const FiniteFunctional& a);
  friend bool operator==(const FiniteFunctional&, const FiniteFunctional&) = default;

 private:
  std::map<Index, double> entries_;
};

// Throws PreconditionError unless every index of phi lies in 1..K.
void require_within(const FiniteFunctional& phi, std::size_t K, const char* what);

}  // namespace levyps
