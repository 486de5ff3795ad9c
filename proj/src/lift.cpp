#include "roughkit/lift.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "roughkit/chen.hpp"

namespace roughkit {

RoughPathGrid lift_piecewise_linear(const GridPath& path, double alpha,
                                    Tolerances tol) {
  path.validate();
  LevyIncrements area;
  area.blocks.reserve(path.intervals());
  for (int i = 0; i < path.intervals(); ++i) {
    const VectorXd dx = path.increment(i, i + 1);
    area.blocks.push_back(0.5 * dx * dx.transpose());
  }
  return RoughPathGrid(path, std::move(area), alpha, /*geometric=*/true, tol);
}

namespace {

// Chen validation of an area formula. Full dense-table residual up to 512
// points; beyond that, residual on a strided subgrid plus all adjacent fine
// triples, which still detects any single corrupted block.
double formula_chen_residual(const GridPath& path, const AreaFormula& area) {
  const int n = path.points();
  const auto defect = [&](int i, int k, int j) {
    const MatrixXd d = area(path.times[i], path.times[j]) -
                       area(path.times[i], path.times[k]) -
                       area(path.times[k], path.times[j]) -
                       path.increment(i, k) * path.increment(k, j).transpose();
    return d.norm();
  };
  double worst = 0.0;
  if (n <= 512) {
    for (int i = 0; i < n; ++i)
      for (int k = i; k < n; ++k)
        for (int j = k; j < n; ++j) worst = std::max(worst, defect(i, k, j));
    return worst;
  }
  const int stride = (n + 511) / 512;
  std::vector<int> coarse;
  for (int i = 0; i < n; i += stride) coarse.push_back(i);
  if (coarse.back() != n - 1) coarse.push_back(n - 1);
  for (size_t a = 0; a < coarse.size(); ++a)
    for (size_t b = a; b < coarse.size(); ++b)
      for (size_t c = b; c < coarse.size(); ++c)
        worst = std::max(worst, defect(coarse[a], coarse[b], coarse[c]));
  for (int i = 0; i + 2 < n; ++i) worst = std::max(worst, defect(i, i + 1, i + 2));
  return worst;
}

}  // namespace

RoughPathGrid lift_analytic(const GridPath& path, const AreaFormula& area,
                            double alpha, bool geometric, Tolerances tol) {
  path.validate();
  tol.validate();
  const double residual = formula_chen_residual(path, area);
  if (residual > tol.tol_chen)
    fail(ErrorCode::chen_violation,
         "lift_analytic: area formula violates Chen's relation (residual " +
             std::to_string(residual) + ")");
  LevyIncrements blocks;
  blocks.blocks.reserve(path.intervals());
  for (int i = 0; i < path.intervals(); ++i)
    blocks.blocks.push_back(area(path.times[i], path.times[i + 1]));
  return RoughPathGrid(path, std::move(blocks), alpha, geometric, tol);
}

void FbmSpec::validate() const {
  if (!(hurst > 1.0 / 3.0 && hurst <= 0.5))
    fail(ErrorCode::invalid_argument, "FbmSpec: hurst must be in (1/3, 1/2]");
  if (horizon <= 0) fail(ErrorCode::invalid_argument, "FbmSpec: horizon must be > 0");
  if (n < 1) fail(ErrorCode::invalid_argument, "FbmSpec: n must be >= 1");
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

double to_unit(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Fractional Gaussian noise autocovariance at lag k for grid spacing dt.
double fgn_cov(int k, double hurst, double dt) {
  const double h2 = 2.0 * hurst;
  const double a = std::pow(std::abs(k + 1), h2);
  const double b = std::pow(std::abs(k), h2);
  const double c = std::pow(std::abs(k - 1), h2);
  return 0.5 * std::pow(dt, h2) * (a - 2.0 * b + c);
}

// In-place iterative radix-2 FFT, size a power of two.
void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / len * (inverse ? 1 : -1);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        const auto u = a[i + k];
        const auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& z : a) z /= static_cast<double>(n);
}

// Circulant-embedding sample of n fGn increments; returns false when the
// embedding has a significantly negative eigenvalue.
bool fgn_circulant(const FbmSpec& spec, std::uint64_t component,
                   std::vector<double>& out) {
  const int n = spec.n;
  const double dt = spec.horizon / n;
  const int size = 2 * n;
  std::vector<std::complex<double>> c(size);
  for (int k = 0; k <= n; ++k) c[k] = fgn_cov(k, spec.hurst, dt);
  for (int k = 1; k < n; ++k) c[size - k] = c[k];
  fft(c, false);
  double max_ev = 0.0, min_ev = 0.0;
  for (const auto& z : c) {
    max_ev = std::max(max_ev, z.real());
    min_ev = std::min(min_ev, z.real());
  }
  if (min_ev < -1e-8 * std::max(max_ev, 1e-300)) return false;

  std::vector<std::complex<double>> v(size);
  v[0] = std::sqrt(std::max(c[0].real(), 0.0)) *
         counter_normal(spec.seed, component, 0);
  v[n] = std::sqrt(std::max(c[n].real(), 0.0)) *
         counter_normal(spec.seed, component, 1);
  for (int k = 1; k < n; ++k) {
    const double s = std::sqrt(std::max(c[k].real(), 0.0) / 2.0);
    const double re = s * counter_normal(spec.seed, component, 2 * k);
    const double im = s * counter_normal(spec.seed, component, 2 * k + 1);
    v[k] = {re, im};
    v[size - k] = {re, -im};
  }
  fft(v, false);
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  out.resize(n);
  for (int j = 0; j < n; ++j) out[j] = v[j].real() * scale;
  return true;
}

void fgn_cholesky(const FbmSpec& spec, std::uint64_t component,
                  std::vector<double>& out) {
  const int n = spec.n;
  const double dt = spec.horizon / n;
  MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cov(i, j) = fgn_cov(std::abs(i - j), spec.hurst, dt);
  Eigen::LLT<MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    fail(ErrorCode::numerical_failure, "sample_fbm: increment covariance not SPD");
  VectorXd z(n);
  for (int i = 0; i < n; ++i)
    z(i) = counter_normal(spec.seed, component | (1ULL << 63), i);
  const VectorXd inc = llt.matrixL() * z;
  out.assign(inc.data(), inc.data() + n);
}

}  // namespace

double counter_normal(std::uint64_t seed, std::uint64_t component,
                      std::uint64_t index) {
  const std::uint64_t key =
      mix64(seed + 0x9e3779b97f4a7c15ULL * (component + 1));
  const std::uint64_t a = mix64(key ^ (index + 0x9e3779b97f4a7c15ULL));
  const std::uint64_t b = mix64(a + 0x9e3779b97f4a7c15ULL);
  const double u1 = to_unit(a);
  const double u2 = to_unit(b);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

GridPath sample_fbm(const FbmSpec& spec, int m, int cholesky_cap) {
  spec.validate();
  if (m < 1) fail(ErrorCode::invalid_argument, "sample_fbm: dimension must be >= 1");
  std::vector<std::vector<double>> increments(m);
  for (int c = 0; c < m; ++c) {
    bool ok = false;
    if (is_power_of_two(spec.n)) ok = fgn_circulant(spec, c, increments[c]);
    if (!ok) {
      if (spec.n > cholesky_cap)
        fail(ErrorCode::resource_limit,
             "sample_fbm: n too large for dense Cholesky fallback");
      fgn_cholesky(spec, c, increments[c]);
    }
  }
  GridPath path;
  path.times.resize(spec.n + 1);
  path.values.resize(spec.n + 1, VectorXd::Zero(m));
  const double dt = spec.horizon / spec.n;
  for (int i = 0; i <= spec.n; ++i) {
    path.times[i] = dt * i;
    if (i > 0) {
      path.values[i] = path.values[i - 1];
      for (int c = 0; c < m; ++c) path.values[i](c) += increments[c][i - 1];
    }
  }
  path.validate();
  return path;
}

}  // namespace roughkit
