#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace balsub {

/// Four b-dimensional subspaces of R^{2b}, in order V1..V4.
class Configuration {
 public:
  static Configuration from_subspaces(std::array<Subspace, 4> spaces, Tolerances tol = {}) {
    tol.validate();
    const std::size_t b = spaces[0].dim();
    if (b == 0) fail(ErrorKind::InvalidInput, "subspaces must be at least one-dimensional");
    for (std::size_t i = 0; i < 4; ++i) {
      if (spaces[i].ambient_dim() != 2 * b) {
        fail(ErrorKind::DimensionMismatch, "V" + std::to_string(i + 1) + " does not live in R^" + std::to_string(2 * b));
      }
      if (spaces[i].dim() != b) {
        fail(ErrorKind::DimensionMismatch, "V" + std::to_string(i + 1) + " has dimension " +
                                               std::to_string(spaces[i].dim()) + ", expected " + std::to_string(b));
      }
    }
    Configuration c;
    c.b_ = b;
    c.spaces_ = std::move(spaces);
    c.tol_ = tol;
    return c;
  }

  /// Orthonormalizes four 2b x b basis matrices.
  static Configuration from_bases(const std::array<Mat, 4>& bases, Tolerances tol = {}) {
    tol.validate();
    std::array<Subspace, 4> spaces;
    for (std::size_t i = 0; i < 4; ++i) spaces[i] = orthonormalize(bases[i], tol);
    return from_subspaces(std::move(spaces), tol);
  }

  std::size_t b() const { return b_; }
  std::size_t ambient_dim() const { return 2 * b_; }
  /// Zero-based: space(0) is V1.
  const Subspace& space(std::size_t i) const { return spaces_.at(i); }
  const std::array<Subspace, 4>& spaces() const { return spaces_; }
  const Tolerances& tol() const { return tol_; }

  Configuration with_tolerances(const Tolerances& tol) const {
    return from_subspaces(spaces_, tol);
  }

 private:
  std::size_t b_ = 0;
  std::array<Subspace, 4> spaces_;
  Tolerances tol_;
};

/// The linear map A -> B whose graph is C, in the bases of A and B.
struct GammaMap {
  Subspace source;
  Subspace target;
  Mat matrix;

  /// Ambient image of source coordinates.
  Mat image(const Mat& source_coords) const { return target.basis() * (matrix * source_coords); }
};

/// γ = π_B (π_A|_C)^{-1}.
inline GammaMap gamma(const Subspace& A, const Subspace& B, const Subspace& C, const Tolerances& tol = {}) {
  require_same_ambient(A, B);
  require_same_ambient(A, C);
  const std::size_t k = A.dim();
  if (B.dim() != k || C.dim() != k) fail(ErrorKind::DimensionMismatch, "graph map needs equal dimensions");
  if (2 * k != A.ambient_dim()) fail(ErrorKind::DimensionMismatch, "A and B cannot span the ambient space");
  if (intersect(A, B, tol).dim() != 0) fail(ErrorKind::NotTransversal, "A ∩ B ≠ 0");
  if (intersect(C, B, tol).dim() != 0) fail(ErrorKind::NotTransversal, "C ∩ B ≠ 0");

  const auto kk = static_cast<Eigen::Index>(k);
  Mat frame(A.basis().rows(), 2 * kk);
  frame << A.basis(), B.basis();
  // C = A P + B Q
  const Mat coords = frame.partialPivLu().solve(C.basis());
  const Mat P = coords.topRows(kk);
  const Mat Q = coords.bottomRows(kk);

  Eigen::JacobiSVD<Mat> svd(P);
  if (numerical_rank(svd.singularValues(), tol.rank_rel) != k) {
    fail(ErrorKind::NotTransversal, "projection of C onto A is singular");
  }
  return {A, B, Q * P.inverse()};
}

/// Parameters of a minimal balanced block: a real eigenvalue or a conjugate pair.
struct BlockEigen {
  bool is_pair = false;
  double alpha = 0.0;
  ConjugatePair pair{};

  static BlockEigen real(double a) { return {false, a, {}}; }
  static BlockEigen complex(double mu, double nu) { return {true, 0.0, {mu, nu}}; }

  std::size_t dim() const { return is_pair ? 4 : 2; }
  std::size_t multiplicity() const { return is_pair ? 2 : 1; }
};

/// Minimal balanced subspace: 2-dim per real eigenvalue, 4-dim per conjugate pair.
struct Block {
  BlockEigen eigen;
  Mat frame;  // (x, γ3 x) or (x, y, γ3 x, γ3 y), ambient coordinates
  Subspace span;
};

struct GenericityViolation {
  enum class Kind { NearZero, NearOne, Repeated };
  Kind kind;
  std::string message;
};

struct GenericityReport {
  std::vector<GenericityViolation> violations;

  bool generic() const { return violations.empty(); }

  std::string summary() const {
    if (violations.empty()) return "generic";
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += v.message;
    }
    return out;
  }
};

inline std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() > 0 ? "+" : "-") << std::abs(z.imag()) << "i";
  return os.str();
}

/// Definition of genericity: b distinct eigenvalues, none equal to 0 or 1, with all
/// comparisons made at eig_sep_rel times the largest eigenvalue modulus.
inline GenericityReport check_generic(const Spectrum& spectrum, const Tolerances& tol = {}) {
  GenericityReport report;
  const std::vector<Complex> values = spectrum.values();
  const double threshold = tol.eig_sep_rel * spectrum.max_modulus();
  using Kind = GenericityViolation::Kind;

  for (const Complex& z : values) {
    if (z.imag() < 0.0) continue;  // report each pair once
    if (std::abs(z) <= threshold) {
      report.violations.push_back({Kind::NearZero, "eigenvalue ≈ 0 (" + format_complex(z) + ")"});
    }
    if (std::abs(z - 1.0) <= threshold) {
      report.violations.push_back({Kind::NearOne, "eigenvalue ≈ 1 (" + format_complex(z) + ")"});
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (values[i].imag() < 0.0) continue;  // mirror of an upper-half comparison
      if (std::abs(values[i] - values[j]) <= threshold) {
        report.violations.push_back({Kind::Repeated, "repeated eigenvalue (" + format_complex(values[i]) + ", " +
                                                         format_complex(values[j]) + ")"});
      }
    }
  }
  return report;
}

struct SpectralData {
  Mat phi_matrix;  // b x b, coordinates of V1's basis
  std::vector<double> real_eigs;
  std::vector<ConjugatePair> complex_pairs;
  std::vector<Block> blocks;  // reals ascending first, then pairs by (mu, nu)
  GammaMap gamma3;
  GammaMap gamma4;
  GenericityReport genericity;

  Spectrum spectrum() const { return {real_eigs, complex_pairs}; }
  std::size_t pair_count() const { return complex_pairs.size(); }
};

inline GenericityReport check_generic(const SpectralData& s, const Tolerances& tol = {}) {
  return check_generic(s.spectrum(), tol);
}

/// Throws NotTransversal naming the first pair V_i, V_j that meet, together with what the
/// intersection means for φ.
inline void require_pairwise_transversal(const Configuration& config) {
  static constexpr const char* kMeaning[4][4] = {
      {"", "no graph construction", "γ3 singular, φ undefined", "eigenvalue 0 of φ"},
      {"", "", "γ3 undefined", "γ4 undefined"},
      {"", "", "", "eigenvalue 1 of φ"},
      {"", "", "", ""},
  };
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const std::size_t d = intersect(config.space(i), config.space(j), config.tol()).dim();
      if (d != 0) {
        fail(ErrorKind::NotTransversal, "V" + std::to_string(i + 1) + " ∩ V" + std::to_string(j + 1) +
                                            " has dimension " + std::to_string(d) + " (" + kMeaning[i][j] + ")");
      }
    }
  }
}

/// φ := γ3^{-1} γ4 on V1 together with its block decomposition of E. Genericity
/// violations are recorded in the result, not thrown.
inline SpectralData phi_of(const Configuration& config) {
  require_pairwise_transversal(config);
  const Tolerances& tol = config.tol();
  const Subspace& V1 = config.space(0);
  const Subspace& V2 = config.space(1);

  SpectralData out;
  out.gamma3 = gamma(V1, V2, config.space(2), tol);
  out.gamma4 = gamma(V1, V2, config.space(3), tol);
  out.phi_matrix = out.gamma3.matrix.partialPivLu().solve(out.gamma4.matrix);

  const EigenDecomposition eig = eig_real_matrix(out.phi_matrix);
  out.real_eigs = eig.reals;
  out.complex_pairs = eig.pairs;
  out.genericity = check_generic(eig.spectrum(), tol);

  const auto n = static_cast<Eigen::Index>(config.ambient_dim());
  for (std::size_t i = 0; i < eig.reals.size(); ++i) {
    const Mat x = eig.real_vectors.col(static_cast<Eigen::Index>(i));
    Mat frame(n, 2);
    frame << V1.basis() * x, out.gamma3.image(x);
    out.blocks.push_back({BlockEigen::real(eig.reals[i]), frame, orthonormalize(frame, tol)});
  }
  for (std::size_t i = 0; i < eig.pairs.size(); ++i) {
    const Mat xy = eig.pair_planes.middleCols(static_cast<Eigen::Index>(2 * i), 2);
    Mat frame(n, 4);
    frame << V1.basis() * xy, out.gamma3.image(xy);
    out.blocks.push_back({BlockEigen::complex(eig.pairs[i].mu, eig.pairs[i].nu), frame, orthonormalize(frame, tol)});
  }
  return out;
}

}  // namespace balsub
