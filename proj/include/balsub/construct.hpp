#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>

#include "graphmap.hpp"
#include "linalg.hpp"

namespace balsub {

struct PhiConstruction {
  Configuration config;
  GenericityReport genericity;  // of the prescribed map itself
};

/// E = F ⊕ F, V1 = F ⊕ 0, V2 = 0 ⊕ F, V3 = {(f, f)}, V4 = {(f, φ f)}.
inline PhiConstruction from_phi(const Mat& phi, const Tolerances& tol = {}) {
  if (phi.rows() != phi.cols() || phi.rows() == 0) fail(ErrorKind::InvalidInput, "φ must be a non-empty square matrix");
  require_finite(phi, "φ");
  Eigen::JacobiSVD<Mat> svd(phi);
  if (numerical_rank(svd.singularValues(), tol.rank_rel) != static_cast<std::size_t>(phi.rows())) {
    fail(ErrorKind::InvalidInput, "φ is singular");
  }
  const auto b = phi.rows();
  const Mat I = Mat::Identity(b, b);
  const Mat Z = Mat::Zero(b, b);
  std::array<Mat, 4> bases;
  bases[0].resize(2 * b, b);
  bases[0] << I, Z;
  bases[1].resize(2 * b, b);
  bases[1] << Z, I;
  bases[2].resize(2 * b, b);
  bases[2] << I, I;
  bases[3].resize(2 * b, b);
  bases[3] << I, phi;
  return {Configuration::from_bases(bases, tol), check_generic(eig_real_matrix(phi).spectrum(), tol)};
}

/// Image of every subspace under an invertible map g of the ambient space.
inline Configuration transform(const Configuration& config, const Mat& g) {
  const auto n = static_cast<Eigen::Index>(config.ambient_dim());
  if (g.rows() != n || g.cols() != n) fail(ErrorKind::DimensionMismatch, "transform has the wrong size");
  std::array<Mat, 4> bases;
  for (std::size_t i = 0; i < 4; ++i) bases[i] = g * config.space(i).basis();
  return Configuration::from_bases(bases, config.tol());
}

/// New V_{i+1} is old V_{order[i]+1}.
inline Configuration permute(const Configuration& config, const std::array<std::size_t, 4>& order) {
  std::array<Subspace, 4> spaces;
  for (std::size_t i = 0; i < 4; ++i) spaces[i] = config.space(order.at(i));
  return Configuration::from_subspaces(spaces, config.tol());
}

/// Block-diagonal real matrix with 1x1 blocks [α] followed by 2x2 blocks [[μ, ν], [-ν, μ]].
inline Mat realize_spectrum(const Spectrum& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  Mat f = Mat::Zero(n, n);
  Eigen::Index k = 0;
  for (double r : s.reals) {
    f(k, k) = r;
    ++k;
  }
  for (const auto& p : s.pairs) {
    f(k, k) = p.mu;
    f(k, k + 1) = p.nu;
    f(k + 1, k) = -p.nu;
    f(k + 1, k + 1) = p.mu;
    k += 2;
  }
  return f;
}

inline Mat gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

/// Q1 diag(s) Q2 with Haar-like orthogonal factors and s in [1, 10], so the condition
/// number stays below 10 and the determinant sign is random.
inline Mat random_conjugator(std::size_t n, std::mt19937_64& rng) {
  const auto nn = static_cast<Eigen::Index>(n);
  const Mat q1 = Eigen::HouseholderQR<Mat>(gaussian_matrix(nn, nn, rng)).householderQ();
  const Mat q2 = Eigen::HouseholderQR<Mat>(gaussian_matrix(nn, nn, rng)).householderQ();
  std::uniform_real_distribution<double> scale(1.0, 10.0);
  Vec s(nn);
  for (Eigen::Index i = 0; i < nn; ++i) s(i) = scale(rng);
  return q1 * s.asDiagonal() * q2;
}

/// Generic configuration whose φ has exactly the requested spectrum, in seeded random
/// ambient coordinates.
inline Configuration from_spectrum(const Spectrum& spectrum, std::uint64_t seed, const Tolerances& tol = {}) {
  if (spectrum.empty()) fail(ErrorKind::InvalidInput, "empty spectrum");
  for (double r : spectrum.reals)
    if (!std::isfinite(r)) fail(ErrorKind::InvalidInput, "non-finite eigenvalue");
  for (const auto& p : spectrum.pairs) {
    if (!std::isfinite(p.mu) || !std::isfinite(p.nu)) fail(ErrorKind::InvalidInput, "non-finite eigenvalue");
    if (!(p.nu > 0.0)) fail(ErrorKind::InvalidInput, "conjugate pairs need ν > 0");
  }
  const GenericityReport report = check_generic(spectrum, tol);
  if (!report.generic()) fail(ErrorKind::InvalidInput, "spectrum is not generic: " + report.summary());

  std::mt19937_64 rng(seed);
  const Configuration base = from_phi(realize_spectrum(spectrum), tol).config;
  return transform(base, random_conjugator(base.ambient_dim(), rng));
}

/// Random generic spectrum with b - 2c reals and c pairs; all eigenvalues stay at least
/// 0.15 apart and away from 0 and 1.
inline Spectrum random_spectrum(std::size_t b, std::size_t c, std::mt19937_64& rng) {
  if (2 * c > b) fail(ErrorKind::InvalidInput, "too many conjugate pairs");
  constexpr double kGap = 0.15;
  Spectrum s;
  std::vector<Complex> taken{{0.0, 0.0}, {1.0, 0.0}};
  auto far = [&](Complex z) {
    for (const Complex& t : taken)
      if (std::abs(z - t) < kGap || std::abs(std::conj(z) - t) < kGap) return false;
    return true;
  };
  std::uniform_real_distribution<double> real_dist(-4.0, 5.0);
  std::uniform_real_distribution<double> mu_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> nu_dist(0.2, 2.5);
  while (s.reals.size() < b - 2 * c) {
    const double r = real_dist(rng);
    if (far({r, 0.0})) {
      s.reals.push_back(r);
      taken.emplace_back(r, 0.0);
    }
  }
  while (s.pairs.size() < c) {
    const ConjugatePair p{mu_dist(rng), nu_dist(rng)};
    if (far(p.upper())) {
      s.pairs.push_back(p);
      taken.push_back(p.upper());
    }
  }
  s.canonicalize();
  return s;
}

struct GenericSample {
  Configuration config;
  SpectralData spectral;
  std::size_t attempts = 0;
};

/// Four Gaussian b-dimensional subspaces of R^{2b}, resampled until generic.
inline GenericSample random_generic(std::size_t b, std::uint64_t seed, const Tolerances& tol = {},
                                    std::size_t max_attempts = 64) {
  if (b == 0) fail(ErrorKind::InvalidInput, "b must be positive");
  std::mt19937_64 rng(seed);
  const auto n = static_cast<Eigen::Index>(2 * b);
  const auto k = static_cast<Eigen::Index>(b);
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    std::array<Mat, 4> bases;
    for (auto& m : bases) m = gaussian_matrix(n, k, rng);
    try {
      Configuration config = Configuration::from_bases(bases, tol);
      SpectralData spectral = phi_of(config);
      if (spectral.genericity.generic()) return {std::move(config), std::move(spectral), attempt};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotTransversal && e.kind() != ErrorKind::DimensionMismatch) throw;
    }
  }
  fail(ErrorKind::SamplingFailure, "no generic configuration after " + std::to_string(max_attempts) + " attempts");
}

/// 64-bit FNV-1a over b and the bit patterns of the four orthonormal bases.
inline std::string digest(const Configuration& config) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  const std::uint64_t b = config.b();
  mix(&b, sizeof b);
  for (const auto& s : config.spaces()) {
    const Mat& m = s.basis();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        double x = m(i, j);
        if (x == 0.0) x = 0.0;  // fold -0
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof bits);
        mix(&bits, sizeof bits);
      }
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

enum class CrossRatioMatch { Direct, Inverse, Both, Neither };

inline const char* to_string(CrossRatioMatch m) {
  switch (m) {
    case CrossRatioMatch::Direct: return "cross_ratio";
    case CrossRatioMatch::Inverse: return "inverse_cross_ratio";
    case CrossRatioMatch::Both: return "both";
    case CrossRatioMatch::Neither: return "neither";
  }
  return "?";
}

struct CrossRatioResult {
  double phi = 0.0;
  /// (V1, V2; V3, V4) = ((z1 - z3)(z2 - z4)) / ((z1 - z4)(z2 - z3)) for slopes z_i.
  double cross_ratio = 0.0;
  CrossRatioMatch match = CrossRatioMatch::Neither;
};

inline Subspace line(double x, double y) {
  Mat m(2, 1);
  m << x, y;
  return orthonormalize(m);
}

/// b = 1: the scalar φ against the cross ratio of the four points of RP^1. The slope form
/// is evaluated homogeneously, det(p_i, p_j) = x_i x_j (z_j - z_i), so vertical lines need
/// no special case.
inline CrossRatioResult cross_ratio_check(const std::array<Subspace, 4>& lines, const Tolerances& tol = {},
                                          double match_tol = 1e-9) {
  for (const auto& l : lines) {
    if (l.ambient_dim() != 2 || l.dim() != 1) fail(ErrorKind::DimensionMismatch, "expected four lines in R^2");
  }
  const Configuration config = Configuration::from_subspaces(lines, tol);
  const SpectralData spectral = phi_of(config);  // throws NotTransversal on coincident lines
  if (spectral.real_eigs.size() != 1) fail(ErrorKind::NumericalFailure, "b = 1 must give one real eigenvalue");

  auto wedge = [&](std::size_t i, std::size_t j) {
    const Mat& p = lines[i].basis();
    const Mat& q = lines[j].basis();
    return p(0, 0) * q(1, 0) - p(1, 0) * q(0, 0);
  };
  CrossRatioResult r;
  r.phi = spectral.real_eigs[0];
  r.cross_ratio = (wedge(0, 2) * wedge(1, 3)) / (wedge(0, 3) * wedge(1, 2));
  const double scale = std::max(1.0, std::abs(r.phi));
  const bool direct = std::abs(r.phi - r.cross_ratio) <= match_tol * scale;
  const bool inverse = std::abs(r.phi - 1.0 / r.cross_ratio) <= match_tol * scale;
  r.match = direct && inverse ? CrossRatioMatch::Both
            : direct          ? CrossRatioMatch::Direct
            : inverse         ? CrossRatioMatch::Inverse
                              : CrossRatioMatch::Neither;
  return r;
}

}  // namespace balsub
