#pragma once

#include <string>

#include "graphmap.hpp"
#include "sign.hpp"

namespace balsub {

/// Connected component of the generic configurations: interval counts of the real
/// eigenvalues of φ plus the orientation of E induced by (V1, V2, V3).
struct ChamberLabel {
  int c = 0;  // conjugate pairs
  int x = 0;  // reals in (-inf, 0)
  int y = 0;  // reals in (0, 1)
  int z = 0;  // reals in (1, inf)
  int orientation = 1;

  friend bool operator==(const ChamberLabel&, const ChamberLabel&) = default;

  std::string to_string() const {
    return "(" + std::to_string(c) + "," + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) +
           ")" + (orientation > 0 ? "+" : "-");
  }
};

/// Sign of det(e_1..e_b, γ3 e_1..γ3 e_b) for a basis e of V1; independent of that basis.
inline int orient_triple(const Subspace& v1, const Subspace& v2, const Subspace& v3, const Tolerances& tol = {}) {
  if (intersect(v1, v3, tol).dim() != 0) fail(ErrorKind::NotTransversal, "V1 ∩ V3 ≠ 0");
  const GammaMap g3 = gamma(v1, v2, v3, tol);
  const auto b = static_cast<Eigen::Index>(v1.dim());
  Mat frame(v1.basis().rows(), 2 * b);
  frame << v1.basis(), g3.image(Mat::Identity(b, b));
  const double det = determinant(frame);
  if (det == 0.0) fail(ErrorKind::NumericalFailure, "degenerate orientation frame");
  return det > 0.0 ? 1 : -1;
}

/// Interval counts only; real eigenvalues must already be known to avoid 0 and 1.
inline ChamberLabel label_spectrum(const SpectralData& spectral) {
  ChamberLabel label;
  label.c = static_cast<int>(spectral.complex_pairs.size());
  for (double r : spectral.real_eigs) {
    if (r < 0.0) {
      ++label.x;
    } else if (r < 1.0) {
      ++label.y;
    } else {
      ++label.z;
    }
  }
  return label;
}

inline ChamberLabel classify(const Configuration& config, const SpectralData& spectral) {
  if (!spectral.genericity.generic()) fail(ErrorKind::NonGeneric, spectral.genericity.summary());
  ChamberLabel label = label_spectrum(spectral);
  label.orientation = orient_triple(config.space(0), config.space(1), config.space(2), config.tol());
  return label;
}

inline ChamberLabel classify(const Configuration& config) { return classify(config, phi_of(config)); }

/// det(λI - φ) as a monic polynomial of degree b.
inline Poly char_poly_map(const Configuration& config) {
  return Poly::monic_from_roots(phi_of(config).spectrum());
}

}  // namespace balsub
