#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>

#include "levyps/simulate.hpp"

namespace levyps::io {

// Columnar CSV, one row per (sample, interval, coordinate):
//   sample,interval,coordinate,increment,jump_count
// Indices are 0-based for sample/interval and 1-based for coordinate;
// doubles are written in shortest round-trip form.
void write_ensemble_csv(std::ostream& out, const PathEnsemble& ensemble);
PathEnsemble read_ensemble_csv(std::istream& in, std::shared_ptr<const LevyModel> model,
                               const TimeGrid& grid, std::uint64_t seed);

// Binary layout, all integers and doubles little-endian:
//   magic "LEVYENS1" (8 bytes)
//   u64 samples, u64 intervals, u64 dim, u64 seed
//   f64 times[intervals]
//   f64 increments[samples * intervals * dim]
//   i64 jump_counts[samples * intervals]
inline constexpr std::array<char, 8> kBinaryMagic{'L', 'E', 'V', 'Y', 'E', 'N', 'S', '1'};

void write_ensemble_binary(std::ostream& out, const PathEnsemble& ensemble);
PathEnsemble read_ensemble_binary(std::istream& in, std::shared_ptr<const LevyModel> model);

}  // namespace levyps::io
