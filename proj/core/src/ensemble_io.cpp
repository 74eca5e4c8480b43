#include "levyps/ensemble_io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "levyps/errors.hpp"
#include "levyps/param_rule.hpp"

namespace levyps::io {
namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) {
    throw std::runtime_error("ensemble binary: truncated input");
  }
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

void put_f64(std::ostream& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

template <class T>
T parse_field(std::string_view s, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("ensemble csv line " + std::to_string(line) + ": bad field '" +
                             std::string(s) + "'");
  }
  return value;
}

}  // namespace

void write_ensemble_csv(std::ostream& out, const PathEnsemble& ensemble) {
  out << "sample,interval,coordinate,increment,jump_count\n";
  const std::size_t m = ensemble.grid().intervals();
  for (std::size_t s = 0; s < ensemble.samples(); ++s) {
    for (std::size_t j = 0; j < m; ++j) {
      auto inc = ensemble.increment(s, j);
      const auto count = ensemble.jump_count(s, j);
      for (std::size_t k = 0; k < inc.size(); ++k) {
        out << s << ',' << j << ',' << (k + 1) << ',' << format_double(inc[k]) << ','
            << count << '\n';
      }
    }
  }
}

PathEnsemble read_ensemble_csv(std::istream& in, std::shared_ptr<const LevyModel> model,
                               const TimeGrid& grid, std::uint64_t seed) {
  std::string line;
  if (!std::getline(in, line) || line != "sample,interval,coordinate,increment,jump_count") {
    throw std::runtime_error("ensemble csv: missing header");
  }
  const std::size_t m = grid.intervals();
  const std::size_t K = model->dim();
  std::vector<double> increments;
  std::vector<std::int64_t> counts;
  std::size_t lineno = 1;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::string_view rest(line);
    std::string_view fields[5];
    for (int f = 0; f < 5; ++f) {
      auto comma = rest.find(',');
      if ((f < 4) == (comma == std::string_view::npos)) {
        throw std::runtime_error("ensemble csv line " + std::to_string(lineno) +
                                 ": expected 5 fields");
      }
      fields[f] = rest.substr(0, comma);
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
    const auto s = parse_field<std::size_t>(fields[0], lineno);
    const auto j = parse_field<std::size_t>(fields[1], lineno);
    const auto k = parse_field<std::size_t>(fields[2], lineno);
    // Rows must be in canonical order.
    if (s != row / (m * K) || j != (row / K) % m || k != row % K + 1) {
      throw std::runtime_error("ensemble csv line " + std::to_string(lineno) +
                               ": rows out of order");
    }
    increments.push_back(parse_field<double>(fields[3], lineno));
    const auto count = parse_field<std::int64_t>(fields[4], lineno);
    if (k == 1) {
      counts.push_back(count);
    } else if (counts.back() != count) {
      throw std::runtime_error("ensemble csv line " + std::to_string(lineno) +
                               ": inconsistent jump_count within interval");
    }
    ++row;
  }
  if (row == 0 || row % (m * K) != 0) throw std::runtime_error("ensemble csv: incomplete sample");
  return PathEnsemble(std::move(model), grid, row / (m * K), seed, std::move(increments),
                      std::move(counts));
}

void write_ensemble_binary(std::ostream& out, const PathEnsemble& ensemble) {
  out.write(kBinaryMagic.data(), kBinaryMagic.size());
  const auto& grid = ensemble.grid();
  put_u64(out, ensemble.samples());
  put_u64(out, grid.intervals());
  put_u64(out, ensemble.dim());
  put_u64(out, ensemble.seed());
  for (double t : grid.times()) put_f64(out, t);
  for (double x : ensemble.increments()) put_f64(out, x);
  for (std::int64_t c : ensemble.jump_counts()) put_u64(out, static_cast<std::uint64_t>(c));
}

PathEnsemble read_ensemble_binary(std::istream& in, std::shared_ptr<const LevyModel> model) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kBinaryMagic) {
    throw std::runtime_error("ensemble binary: bad magic header");
  }
  const std::uint64_t M = get_u64(in);
  const std::uint64_t m = get_u64(in);
  const std::uint64_t K = get_u64(in);
  const std::uint64_t seed = get_u64(in);
  if (K != model->dim()) throw PreconditionError("ensemble binary: dimension does not match model");
  if (M == 0 || m == 0 || M > (std::uint64_t{1} << 40) || m > (1u << 20)) {
    throw std::runtime_error("ensemble binary: implausible header");
  }
  std::vector<double> times(m);
  for (auto& t : times) t = get_f64(in);
  std::vector<double> increments(M * m * K);
  for (auto& x : increments) x = get_f64(in);
  std::vector<std::int64_t> counts(M * m);
  for (auto& c : counts) c = static_cast<std::int64_t>(get_u64(in));
  return PathEnsemble(std::move(model), TimeGrid(std::move(times)), M, seed,
                      std::move(increments), std::move(counts));
}

}  // namespace levyps::io
