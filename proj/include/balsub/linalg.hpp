#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "error.hpp"

namespace balsub {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Complex = std::complex<double>;

struct Tolerances {
  double rank_rel = 1e-10;     // singular values below rank_rel * sigma_max count as zero
  double eig_sep_rel = 1e-8;   // eigenvalue separation, relative to the largest magnitude
  double det_rel = 1e-9;       // determinant comparison

  void validate() const {
    auto ok = [](double t) { return std::isfinite(t) && t > 0.0 && t < 1.0; };
    if (!ok(rank_rel) || !ok(eig_sep_rel) || !ok(det_rel)) {
      fail(ErrorKind::InvalidInput, "tolerances must lie in (0, 1)");
    }
  }
};

/// A conjugate pair mu +- i nu, stored once with nu > 0.
struct ConjugatePair {
  double mu = 0.0;
  double nu = 0.0;

  Complex upper() const { return {mu, nu}; }
  double modulus_sq() const { return mu * mu + nu * nu; }
  friend bool operator==(const ConjugatePair&, const ConjugatePair&) = default;
};

/// Eigenvalue multiset of a real matrix: real values plus conjugate pairs.
struct Spectrum {
  std::vector<double> reals;
  std::vector<ConjugatePair> pairs;

  std::size_t size() const { return reals.size() + 2 * pairs.size(); }
  bool empty() const { return size() == 0; }

  std::vector<Complex> values() const {
    std::vector<Complex> out;
    out.reserve(size());
    for (double r : reals) out.emplace_back(r, 0.0);
    for (const auto& p : pairs) {
      out.emplace_back(p.mu, p.nu);
      out.emplace_back(p.mu, -p.nu);
    }
    return out;
  }

  double max_modulus() const {
    double m = 0.0;
    for (const Complex& z : values()) m = std::max(m, std::abs(z));
    return m;
  }

  /// Sorts reals ascending and pairs by (mu, nu).
  void canonicalize() {
    std::sort(reals.begin(), reals.end());
    std::sort(pairs.begin(), pairs.end(), [](const ConjugatePair& l, const ConjugatePair& r) {
      return l.mu != r.mu ? l.mu < r.mu : l.nu < r.nu;
    });
  }
};

inline void require_finite(const Mat& m, const char* what) {
  if (!m.allFinite()) fail(ErrorKind::InvalidInput, std::string(what) + " has non-finite entries");
}

/// Linear subspace of R^n carried by an orthonormal basis (ambient_dim x dim).
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient_dim) {
    Subspace s;
    s.ambient_ = ambient_dim;
    s.basis_ = Mat(static_cast<Eigen::Index>(ambient_dim), 0);
    return s;
  }

  /// Wraps a basis that is already orthonormal; throws InvalidInput otherwise.
  static Subspace from_orthonormal(Mat basis, double tol = 1e-10) {
    require_finite(basis, "basis");
    const auto k = basis.cols();
    if (k > basis.rows()) fail(ErrorKind::InvalidInput, "more basis vectors than ambient dimension");
    if (k > 0) {
      const Mat gram = basis.transpose() * basis;
      if ((gram - Mat::Identity(k, k)).cwiseAbs().maxCoeff() > tol) {
        fail(ErrorKind::InvalidInput, "basis is not orthonormal");
      }
    }
    Subspace s;
    s.ambient_ = static_cast<std::size_t>(basis.rows());
    s.basis_ = std::move(basis);
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return static_cast<std::size_t>(basis_.cols()); }
  const Mat& basis() const { return basis_; }

  Mat projector() const { return basis_ * basis_.transpose(); }

  /// Largest distance of a unit vector of `other` from this subspace (sine of the largest
  /// principal angle when dims agree).
  double gap_from(const Subspace& other) const {
    if (other.dim() == 0) return 0.0;
    const Mat residual = other.basis() - basis_ * (basis_.transpose() * other.basis());
    return residual.jacobiSvd().singularValues()(0);
  }

 private:
  std::size_t ambient_ = 0;
  Mat basis_;
};

inline std::size_t numerical_rank(const Vec& singular_values, double rank_rel) {
  if (singular_values.size() == 0) return 0;
  const double cutoff = rank_rel * singular_values(0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    if (singular_values(i) > cutoff) ++r;
  }
  return r;
}

/// Column span of m with an orthonormal basis. Full-column-rank input keeps its column
/// order (QR with positive R diagonal, so an orthonormal input is returned unchanged);
/// rank-deficient input falls back to the leading left singular vectors.
inline Subspace orthonormalize(const Mat& m, const Tolerances& tol = {}) {
  require_finite(m, "matrix");
  if (m.rows() == 0) fail(ErrorKind::InvalidInput, "matrix has no rows");
  if (m.cols() == 0) fail(ErrorKind::InvalidInput, "matrix has no columns");

  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const std::size_t rank = numerical_rank(svd.singularValues(), tol.rank_rel);
  if (rank == 0) return Subspace::zero(static_cast<std::size_t>(m.rows()));

  Mat basis;
  if (rank == static_cast<std::size_t>(m.cols())) {
    Eigen::HouseholderQR<Mat> qr(m);
    basis = qr.householderQ() * Mat::Identity(m.rows(), m.cols());
    const Mat r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (r(j, j) < 0.0) basis.col(j) = -basis.col(j);
    }
  } else {
    basis = svd.matrixU().leftCols(static_cast<Eigen::Index>(rank));
  }
  return Subspace::from_orthonormal(std::move(basis), 1e-8);
}

inline void require_same_ambient(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) {
    fail(ErrorKind::DimensionMismatch, "ambient dimensions " + std::to_string(u.ambient_dim()) +
                                           " and " + std::to_string(v.ambient_dim()) + " differ");
  }
}

/// u + v.
inline Subspace subspace_sum(const Subspace& u, const Subspace& v, const Tolerances& tol = {}) {
  require_same_ambient(u, v);
  if (u.dim() + v.dim() == 0) return Subspace::zero(u.ambient_dim());
  Mat stacked(static_cast<Eigen::Index>(u.ambient_dim()), static_cast<Eigen::Index>(u.dim() + v.dim()));
  stacked << u.basis(), v.basis();
  return orthonormalize(stacked, tol);
}

/// u ∩ v from the nullspace of [U, -V]: U x = V y.
inline Subspace intersect(const Subspace& u, const Subspace& v, const Tolerances& tol = {}) {
  require_same_ambient(u, v);
  const std::size_t n = u.ambient_dim();
  if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(n);

  const auto du = static_cast<Eigen::Index>(u.dim());
  const auto dv = static_cast<Eigen::Index>(v.dim());
  Mat system(static_cast<Eigen::Index>(n), du + dv);
  system << u.basis(), -v.basis();

  Eigen::JacobiSVD<Mat> svd(system, Eigen::ComputeFullV);
  const std::size_t rank = numerical_rank(svd.singularValues(), tol.rank_rel);
  const auto nullity = du + dv - static_cast<Eigen::Index>(rank);
  if (nullity == 0) return Subspace::zero(n);

  const Mat null_vectors = svd.matrixV().rightCols(nullity);
  const Mat common = u.basis() * null_vectors.topRows(du);
  Subspace out = orthonormalize(common, tol);
  return out;
}

/// Real and complex-pair eigen data of a real square matrix.
struct EigenDecomposition {
  std::vector<double> reals;         // ascending
  Mat real_vectors;                  // n x |reals|, unit columns
  std::vector<ConjugatePair> pairs;  // sorted by (mu, nu), nu > 0
  /// n x 2|pairs|; columns (p_k, q_k) with m p = mu p - nu q and m q = nu p + mu q.
  Mat pair_planes;

  Spectrum spectrum() const { return {reals, pairs}; }
};

inline EigenDecomposition eig_real_matrix(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0) fail(ErrorKind::InvalidInput, "matrix must be square and non-empty");
  require_finite(m, "matrix");

  Eigen::EigenSolver<Mat> solver(m, true);
  if (solver.info() != Eigen::Success) fail(ErrorKind::NumericalFailure, "eigensolver did not converge");

  const auto n = m.rows();
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();

  struct RealItem {
    double value;
    Vec vector;
  };
  struct PairItem {
    ConjugatePair pair;
    Mat plane;
  };
  std::vector<RealItem> real_items;
  std::vector<PairItem> pair_items;

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex lambda = values(k);
    Eigen::VectorXcd v = vectors.col(k);
    if (lambda.imag() == 0.0) {
      // Real Schur 1x1 block: the eigenvector is real up to a global phase.
      Eigen::Index pivot = 0;
      v.cwiseAbs().maxCoeff(&pivot);
      v /= v(pivot) / std::abs(v(pivot));
      Vec x = v.real();
      x.normalize();
      real_items.push_back({lambda.real(), std::move(x)});
    } else if (lambda.imag() > 0.0) {
      v.normalize();
      Mat plane(n, 2);
      plane.col(0) = v.real();
      plane.col(1) = v.imag();
      pair_items.push_back({{lambda.real(), lambda.imag()}, std::move(plane)});
    }
  }
  if (real_items.size() + 2 * pair_items.size() != static_cast<std::size_t>(n)) {
    fail(ErrorKind::NumericalFailure, "eigenvalues did not split into reals and conjugate pairs");
  }

  std::sort(real_items.begin(), real_items.end(),
            [](const RealItem& l, const RealItem& r) { return l.value < r.value; });
  std::sort(pair_items.begin(), pair_items.end(), [](const PairItem& l, const PairItem& r) {
    return l.pair.mu != r.pair.mu ? l.pair.mu < r.pair.mu : l.pair.nu < r.pair.nu;
  });

  EigenDecomposition out;
  out.real_vectors = Mat(n, static_cast<Eigen::Index>(real_items.size()));
  out.pair_planes = Mat(n, static_cast<Eigen::Index>(2 * pair_items.size()));
  for (std::size_t i = 0; i < real_items.size(); ++i) {
    out.reals.push_back(real_items[i].value);
    out.real_vectors.col(static_cast<Eigen::Index>(i)) = real_items[i].vector;
  }
  for (std::size_t i = 0; i < pair_items.size(); ++i) {
    out.pairs.push_back(pair_items[i].pair);
    out.pair_planes.middleCols(static_cast<Eigen::Index>(2 * i), 2) = pair_items[i].plane;
  }
  return out;
}

inline double determinant(const Mat& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidInput, "determinant of a non-square matrix");
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

}  // namespace balsub
