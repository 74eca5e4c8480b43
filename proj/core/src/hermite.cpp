#include "levyps/hermite.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "levyps/errors.hpp"

namespace levyps::spatial {

double hermite(unsigned k, double y) {
  if (k > 30) throw PreconditionError("hermite: degree above 30");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = y;
  for (unsigned j = 1; j < k; ++j) {
    const double next = y * cur - static_cast<double>(j) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

unsigned degree(const MultiIndex& alpha) noexcept {
  unsigned d = 0;
  for (unsigned a : alpha) d += a;
  return d;
}

double factorial(const MultiIndex& alpha) noexcept {
  double f = 1.0;
  for (unsigned a : alpha) {
    for (unsigned j = 2; j <= a; ++j) f *= j;
  }
  return f;
}

double power(std::span<const double> z, const MultiIndex& alpha) noexcept {
  double p = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (unsigned j = 0; j < alpha[i]; ++j) p *= z[i];
  }
  return p;
}

namespace {

void compositions(std::size_t n, unsigned remaining, std::size_t pos, MultiIndex& cur,
                  std::vector<MultiIndex>& out) {
  if (pos + 1 == n) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned a = remaining + 1; a-- > 0;) {
    cur[pos] = a;
    compositions(n, remaining - a, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices(std::size_t n, unsigned d) {
  if (n == 0) throw PreconditionError("multi_indices: dimension must be >= 1");
  std::vector<MultiIndex> out;
  MultiIndex cur(n, 0);
  for (unsigned m = 0; m <= d; ++m) compositions(n, m, 0, cur, out);
  return out;
}

double hermite(const MultiIndex& alpha, std::span<const double> y) {
  double h = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) h *= hermite(alpha[i], y[i]);
  return h;
}

double generating_function(std::span<const double> z, std::span<const double> y) {
  double zy = 0.0;
  double zz = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    zy += z[i] * y[i];
    zz += z[i] * z[i];
  }
  return std::exp(zy - 0.5 * zz);
}

double generating_series(std::span<const double> z, std::span<const double> y, unsigned d) {
  double acc = 0.0;
  for (const auto& alpha : multi_indices(z.size(), d)) {
    acc += power(z, alpha) / factorial(alpha) * hermite(alpha, y);
  }
  return acc;
}

namespace {

Eigen::MatrixXd design_matrix(const Eigen::MatrixXd& probes,
                              const std::vector<MultiIndex>& indices) {
  const auto N = probes.rows();
  Eigen::MatrixXd A(N, static_cast<Eigen::Index>(indices.size()));
  std::vector<double> z(static_cast<std::size_t>(probes.cols()));
  for (Eigen::Index k = 0; k < N; ++k) {
    for (Eigen::Index i = 0; i < probes.cols(); ++i) z[i] = probes(k, i);
    for (std::size_t b = 0; b < indices.size(); ++b) {
      A(k, static_cast<Eigen::Index>(b)) = power(z, indices[b]) / factorial(indices[b]);
    }
  }
  return A;
}

double condition_number(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  return smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

HermiteSystem build_hermite_system(std::size_t n, unsigned d, const ProbeRule& rule) {
  HermiteSystem sys;
  sys.n = n;
  sys.d = d;
  sys.indices = multi_indices(n, d);
  const auto M = static_cast<Eigen::Index>(sys.indices.size());

  Eigen::MatrixXd base(M, static_cast<Eigen::Index>(n));
  if (std::holds_alternative<SimplexProbes>(rule)) {
    for (Eigen::Index k = 0; k < M; ++k) {
      for (std::size_t i = 0; i < n; ++i) base(k, static_cast<Eigen::Index>(i)) = sys.indices[k][i];
    }
  } else {
    const auto& vectors = std::get<ExplicitProbes>(rule).vectors;
    if (static_cast<Eigen::Index>(vectors.size()) != M) {
      throw PreconditionError("build_hermite_system: need " + std::to_string(M) +
                              " probes for n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                              ", got " + std::to_string(vectors.size()));
    }
    for (Eigen::Index k = 0; k < M; ++k) {
      if (vectors[k].size() != n) throw PreconditionError("build_hermite_system: probe length != n");
      for (std::size_t i = 0; i < n; ++i) base(k, static_cast<Eigen::Index>(i)) = vectors[k][i];
    }
  }

  constexpr double kSingular = 1e13;
  std::ostringstream diagnostics;
  for (int attempt = 0; attempt <= 5; ++attempt) {
    Eigen::MatrixXd probes = base;
    if (attempt > 0) {
      // Deterministic rescale and skew of the probe cloud.
      for (Eigen::Index k = 0; k < M; ++k) {
        for (Eigen::Index i = 0; i < probes.cols(); ++i) {
          probes(k, i) = probes(k, i) * (1.0 + 0.1 * attempt) +
                         0.01 * attempt * std::sin(1.0 + static_cast<double>(k * 7 + i * 3));
        }
      }
    }
    Eigen::MatrixXd A = design_matrix(probes, sys.indices);
    const double cond = condition_number(A);
    diagnostics << " attempt " << attempt << ": cond=" << cond << ";";
    if (cond < kSingular) {
      sys.probes = std::move(probes);
      sys.A = std::move(A);
      sys.A_inverse = sys.A.partialPivLu().inverse();
      sys.condition = cond;
      sys.perturbation_retries = attempt;
      return sys;
    }
  }
  throw NumericalError("build_hermite_system: probe matrix singular for n=" + std::to_string(n) +
                       ", d=" + std::to_string(d) + ";" + diagnostics.str());
}

Eigen::VectorXd truncated_probe_values(const HermiteSystem& system, std::span<const double> y,
                                       int nodes) {
  if (y.size() != system.n) throw PreconditionError("truncated_probe_values: y length != n");
  if (nodes <= static_cast<int>(system.d)) {
    throw PreconditionError("truncated_probe_values: need more nodes than the degree");
  }
  const auto N = system.probes.rows();
  Eigen::VectorXd out(N);
  for (Eigen::Index k = 0; k < N; ++k) {
    double zy = 0.0;
    double zz = 0.0;
    for (std::size_t i = 0; i < system.n; ++i) {
      const double zi = system.probes(k, static_cast<Eigen::Index>(i));
      zy += zi * y[i];
      zz += zi * zi;
    }
    // Coefficients of s^m in exp(s zy - s^2 zz / 2), m = 0..d, summed.
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < nodes; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / nodes;
      const std::complex<double> s = std::polar(1.0, theta);
      const std::complex<double> value = std::exp(s * zy - 0.5 * s * s * zz);
      std::complex<double> weight(0.0, 0.0);
      for (unsigned m = 0; m <= system.d; ++m) weight += std::polar(1.0, -theta * m);
      acc += value * weight;
    }
    out(k) = acc.real() / nodes;
  }
  return out;
}

Eigen::VectorXd reconstruct(const HermiteSystem& system, const Eigen::VectorXd& probe_values) {
  if (probe_values.size() != system.A.rows()) {
    throw PreconditionError("reconstruct: probe value count mismatch");
  }
  return system.A.partialPivLu().solve(probe_values);
}

}  // namespace levyps::spatial
