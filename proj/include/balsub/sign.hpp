#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "graphmap.hpp"
#include "linalg.hpp"
#include "solution.hpp"

namespace balsub {

/// Real polynomial, coefficients in ascending degree. The zero polynomial has no coefficients.
struct Poly {
  std::vector<double> coeffs;

  static Poly from_coeffs(std::vector<double> c) {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    return Poly{std::move(c)};
  }

  /// prod (x - r) over the spectrum; conjugate pairs enter as x^2 - 2 mu x + (mu^2 + nu^2).
  static Poly monic_from_roots(const Spectrum& roots) {
    std::vector<double> c{1.0};
    auto multiply = [&c](const std::vector<double>& factor) {
      std::vector<double> out(c.size() + factor.size() - 1, 0.0);
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < factor.size(); ++j) out[i + j] += c[i] * factor[j];
      c = std::move(out);
    };
    for (double r : roots.reals) multiply({-r, 1.0});
    for (const auto& p : roots.pairs) multiply({p.modulus_sq(), -2.0 * p.mu, 1.0});
    return Poly{std::move(c)};
  }

  bool is_zero() const { return coeffs.empty(); }
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  double leading() const { return coeffs.empty() ? 0.0 : coeffs.back(); }

  Complex operator()(Complex x) const {
    Complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
};

/// Sylvester matrix of (f, g): deg g shifted rows of f, then deg f shifted rows of g.
inline Mat sylvester_matrix(const Poly& f, const Poly& g) {
  const auto m = static_cast<Eigen::Index>(f.degree());
  const auto n = static_cast<Eigen::Index>(g.degree());
  Mat s = Mat::Zero(m + n, m + n);
  for (Eigen::Index row = 0; row < n; ++row)
    for (Eigen::Index k = 0; k <= m; ++k) s(row, row + k) = f.coeffs[static_cast<std::size_t>(m - k)];
  for (Eigen::Index row = 0; row < m; ++row)
    for (Eigen::Index k = 0; k <= n; ++k) s(n + row, row + k) = g.coeffs[static_cast<std::size_t>(n - k)];
  return s;
}

/// res(p, q) = lc(p)^deg q * lc(q)^deg p * prod_{p(λ)=0} prod_{q(δ)=0} (δ - λ), via the
/// Sylvester determinant.
inline double resultant(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) fail(ErrorKind::InvalidInput, "resultant of the zero polynomial");
  return determinant(sylvester_matrix(q, p));
}

/// Factor (δ - λ) over one front value and one back value, folded over conjugates so the
/// result is real. Each argument is a real root or an (upper) conjugate pair.
namespace detail {

inline double pair_factor(const BlockEigen& front, const BlockEigen& back) {
  if (!front.is_pair && !back.is_pair) return back.alpha - front.alpha;
  if (!front.is_pair) {
    const double d = back.pair.mu - front.alpha;
    return d * d + back.pair.nu * back.pair.nu;
  }
  if (!back.is_pair) {
    const double d = back.alpha - front.pair.mu;
    return d * d + front.pair.nu * front.pair.nu;
  }
  const double dm = back.pair.mu - front.pair.mu;
  const double minus = back.pair.nu - front.pair.nu;
  const double plus = back.pair.nu + front.pair.nu;
  return (dm * dm + minus * minus) * (dm * dm + plus * plus);
}

inline std::vector<BlockEigen> as_blocks(const Spectrum& s) {
  std::vector<BlockEigen> out;
  for (double r : s.reals) out.push_back(BlockEigen::real(r));
  for (const auto& p : s.pairs) out.push_back(BlockEigen::complex(p.mu, p.nu));
  return out;
}

inline void require_separated(const Spectrum& front, const Spectrum& back, double sep_rel) {
  const double scale = std::max(front.max_modulus(), back.max_modulus());
  for (const Complex& l : front.values()) {
    for (const Complex& d : back.values()) {
      if (std::abs(d - l) <= sep_rel * scale) {
        fail(ErrorKind::NonGeneric, "front eigenvalue " + format_complex(l) + " coincides with back eigenvalue " +
                                        format_complex(d));
      }
    }
  }
}

}  // namespace detail

/// prod_{λ ∈ front} prod_{δ ∈ back} (δ - λ) from known roots (monic polynomials).
inline double resultant_from_roots(const Spectrum& front, const Spectrum& back) {
  double product = 1.0;
  for (const auto& f : detail::as_blocks(front))
    for (const auto& b : detail::as_blocks(back)) product *= detail::pair_factor(f, b);
  return product;
}

/// Sign of prod over real front/back eigenvalues of (β - α). Empty product is +1.
inline Sign sign_real(const std::vector<double>& front, const std::vector<double>& back, double sep_rel = 1e-8) {
  detail::require_separated(Spectrum{front, {}}, Spectrum{back, {}}, sep_rel);
  int negatives = 0;
  for (double alpha : front)
    for (double beta : back)
      if (beta < alpha) ++negatives;
  return negatives % 2 == 0 ? Sign::Positive : Sign::Negative;
}

/// Sign of the full complex product prod (δ - λ) over all front/back eigenvalues.
inline Sign sign_full(const Spectrum& front, const Spectrum& back, double sep_rel = 1e-8) {
  detail::require_separated(front, back, sep_rel);
  Complex product = 1.0;
  for (const Complex& l : front.values()) {
    for (const Complex& d : back.values()) {
      product *= (d - l);
      // Keep the running product near unit modulus; only its direction matters.
      product /= std::abs(product);
    }
  }
  if (std::abs(product.imag()) > 1e-6) fail(ErrorKind::NumericalFailure, "front/back resultant is not real");
  return product.real() > 0.0 ? Sign::Positive : Sign::Negative;
}

// ---------------------------------------------------------------------------
// Splitting maps ξ^{A,B}: Hom(A, B) -> ⊕_i Hom(V_i^A, B / V_i^B)
// ---------------------------------------------------------------------------

enum class SplitCase { TwoTwo, TwoFour, FourFour, FourTwo };

inline const char* to_string(SplitCase c) {
  switch (c) {
    case SplitCase::TwoTwo: return "2-2";
    case SplitCase::TwoFour: return "2-4";
    case SplitCase::FourFour: return "4-4";
    case SplitCase::FourTwo: return "4-2";
  }
  return "?";
}

inline SplitCase split_case(const BlockEigen& front, const BlockEigen& back) {
  if (!front.is_pair) return back.is_pair ? SplitCase::TwoFour : SplitCase::TwoTwo;
  return back.is_pair ? SplitCase::FourFour : SplitCase::FourTwo;
}

struct SplitBlockMatrix {
  SplitCase split_case;
  BlockEigen front;
  BlockEigen back;
  Mat matrix;
};

/// Splitting matrix of a front block and a back block in the canonical block bases.
inline SplitBlockMatrix splitting_matrix(const BlockEigen& front, const BlockEigen& back) {
  for (double v : {front.alpha, front.pair.mu, front.pair.nu, back.alpha, back.pair.mu, back.pair.nu}) {
    if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "non-finite block parameter");
  }
  const SplitCase sc = split_case(front, back);
  Mat m;
  switch (sc) {
    case SplitCase::TwoTwo: {
      const double a = front.alpha, b = back.alpha;
      m.resize(4, 4);
      m << 0, 0, -1, 0,
           0, 1, 0, 0,
           1, 1, -1, -1,
           b, a * b, -1, -a;
      break;
    }
    case SplitCase::TwoFour: {
      const double a = front.alpha, mu = back.pair.mu, nu = back.pair.nu, L = back.pair.modulus_sq();
      m.resize(8, 8);
      m << 0, 0, 0, 0, 1, 0, 0, 0,
           0, 0, 0, 0, 0, 0, 1, 0,
           0, 1, 0, 0, 0, 0, 0, 0,
           0, 0, 0, 1, 0, 0, 0, 0,
           1, 1, 0, 0, -1, -1, 0, 0,
           0, 0, 1, 1, 0, 0, -1, -1,
           -L, -a * L, 0, 0, mu, a * mu, -nu, -a * nu,
           0, 0, -L, -a * L, nu, a * nu, mu, a * mu;
      break;
    }
    case SplitCase::FourFour: {
      const double mu = front.pair.mu, nu = front.pair.nu;
      const double ka = back.pair.mu, th = back.pair.nu, K = back.pair.modulus_sq();
      m = Mat::Zero(16, 16);
      // V1, V2 rows: unit entries
      m(0, 8) = 1; m(1, 9) = 1; m(2, 12) = 1; m(3, 13) = 1;
      m(4, 2) = 1; m(5, 3) = 1; m(6, 6) = 1; m(7, 7) = 1;
      // V3 rows
      m.row(8) << 1, 0, 1, 0, 0, 0, 0, 0, -1, 0, -1, 0, 0, 0, 0, 0;
      m.row(9) << 0, 1, 0, 1, 0, 0, 0, 0, 0, -1, 0, -1, 0, 0, 0, 0;
      m.row(10) << 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, -1, 0, -1, 0;
      m.row(11) << 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, -1, 0, -1;
      // V4 rows
      m.row(12) << -K, 0, -mu * K, nu * K, 0, 0, 0, 0, ka, 0, mu * ka, -nu * ka, -th, 0, -mu * th, nu * th;
      m.row(13) << 0, -K, -nu * K, -mu * K, 0, 0, 0, 0, 0, ka, nu * ka, mu * ka, 0, -th, -nu * th, -mu * th;
      m.row(14) << 0, 0, 0, 0, -K, 0, -mu * K, nu * K, th, 0, mu * th, -nu * th, ka, 0, mu * ka, -nu * ka;
      m.row(15) << 0, 0, 0, 0, 0, -K, -nu * K, -mu * K, 0, th, nu * th, mu * th, 0, ka, nu * ka, mu * ka;
      break;
    }
    case SplitCase::FourTwo: {
      const double mu = front.pair.mu, nu = front.pair.nu, b = back.alpha;
      m.resize(8, 8);
      m << 0, 0, 0, 0, -1, 0, 0, 0,
           0, 0, 0, 0, 0, -1, 0, 0,
           0, 0, 1, 0, 0, 0, 0, 0,
           0, 0, 0, 1, 0, 0, 0, 0,
           1, 0, 1, 0, -1, 0, -1, 0,
           0, 1, 0, 1, 0, -1, 0, -1,
           b, 0, b * mu, -b * nu, -1, 0, -mu, nu,
           0, b, b * nu, b * mu, 0, -1, -nu, -mu;
      break;
    }
  }
  return {sc, front, back, std::move(m)};
}

/// Closed-form determinant of the splitting matrix.
inline double splitting_determinant_closed_form(const BlockEigen& front, const BlockEigen& back) {
  switch (split_case(front, back)) {
    case SplitCase::TwoTwo: return back.alpha - front.alpha;
    case SplitCase::TwoFour: {
      const double d = back.pair.mu - front.alpha;
      return back.pair.modulus_sq() * (d * d + back.pair.nu * back.pair.nu);
    }
    case SplitCase::FourFour: {
      const double K = back.pair.modulus_sq();
      const double dm = back.pair.mu - front.pair.mu;
      const double minus = back.pair.nu - front.pair.nu;
      const double plus = back.pair.nu + front.pair.nu;
      return K * K * (dm * dm + minus * minus) * (dm * dm + plus * plus);
    }
    case SplitCase::FourTwo: {
      const double d = back.alpha - front.pair.mu;
      return front.pair.nu * front.pair.nu + d * d;
    }
  }
  return 0.0;
}

/// Generators of V_i ∩ B and of the quotients B / (V_i ∩ B) (as orthogonal complements,
/// unnormalized) in the block basis (x, γ3 x) or (x, y, γ3 x, γ3 y).
struct BlockFrame {
  std::array<Mat, 4> subspaces;
  std::array<Mat, 4> quotients;
};

inline BlockFrame canonical_frame(const BlockEigen& e) {
  BlockFrame f;
  if (!e.is_pair) {
    const double b = e.alpha;
    f.subspaces = {Mat{{1.0}, {0.0}}, Mat{{0.0}, {1.0}}, Mat{{1.0}, {1.0}}, Mat{{1.0}, {b}}};
    f.quotients = {Mat{{0.0}, {-1.0}}, Mat{{1.0}, {0.0}}, Mat{{1.0}, {-1.0}}, Mat{{b}, {-1.0}}};
    return f;
  }
  const double mu = e.pair.mu, nu = e.pair.nu, L = e.pair.modulus_sq();
  f.subspaces = {
      Mat{{1, 0}, {0, 1}, {0, 0}, {0, 0}},
      Mat{{0, 0}, {0, 0}, {1, 0}, {0, 1}},
      Mat{{1, 0}, {0, 1}, {1, 0}, {0, 1}},
      Mat{{1, 0}, {0, 1}, {mu, nu}, {-nu, mu}},
  };
  f.quotients = {
      Mat{{0, 0}, {0, 0}, {1, 0}, {0, 1}},
      Mat{{1, 0}, {0, 1}, {0, 0}, {0, 0}},
      Mat{{1, 0}, {0, 1}, {-1, 0}, {0, -1}},
      Mat{{-L, 0}, {0, -L}, {mu, nu}, {-nu, mu}},
  };
  return f;
}

/// Splitting matrix from frames: for each i, one row per (quotient generator of B,
/// subspace generator of A), holding the Kronecker product of the two.
inline Mat assemble_splitting_matrix(const BlockFrame& front, const BlockFrame& back) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < 4; ++i) {
    const Mat& va = front.subspaces[i];
    const Mat& vb = back.quotients[i];
    for (Eigen::Index q = 0; q < vb.cols(); ++q) {
      for (Eigen::Index s = 0; s < va.cols(); ++s) {
        Vec row(vb.rows() * va.rows());
        for (Eigen::Index r = 0; r < vb.rows(); ++r) row.segment(r * va.rows(), va.rows()) = vb(r, q) * va.col(s);
        rows.push_back(std::move(row));
      }
    }
  }
  Mat out(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  return out;
}

/// Sign of det ξ_W = prod over (front block, back block) of det ξ^{A,B}.
inline Sign sign_by_splitting(const BalancedSolution& solution, const SpectralData& spectral) {
  std::vector<bool> front(spectral.blocks.size(), false);
  for (std::size_t idx : solution.selected_blocks) front.at(idx) = true;
  Sign s = Sign::Positive;
  for (std::size_t i = 0; i < spectral.blocks.size(); ++i) {
    if (!front[i]) continue;
    for (std::size_t j = 0; j < spectral.blocks.size(); ++j) {
      if (front[j]) continue;
      const double det = determinant(splitting_matrix(spectral.blocks[i].eigen, spectral.blocks[j].eigen).matrix);
      if (det == 0.0 || !std::isfinite(det)) fail(ErrorKind::NonGeneric, "singular splitting matrix");
      if (det < 0.0) s = s * Sign::Negative;
    }
  }
  return s;
}

/// Splits the block eigenvalues into the selected (front) and remaining (back) multisets.
inline std::pair<Spectrum, Spectrum> front_back_split(const std::vector<std::size_t>& selected,
                                                      const SpectralData& spectral) {
  std::vector<bool> front(spectral.blocks.size(), false);
  for (std::size_t idx : selected) front.at(idx) = true;
  Spectrum f, b;
  for (std::size_t i = 0; i < spectral.blocks.size(); ++i) {
    const BlockEigen& e = spectral.blocks[i].eigen;
    Spectrum& dst = front[i] ? f : b;
    if (e.is_pair) {
      dst.pairs.push_back(e.pair);
    } else {
      dst.reals.push_back(e.alpha);
    }
  }
  return {f, b};
}

/// Monic characteristic polynomials (χ_C, χ_D) of φ restricted to C = V1 ∩ W and to its
/// invariant complement D.
inline std::pair<Poly, Poly> char_polys_of_solution(const BalancedSolution& solution, const SpectralData& spectral) {
  const auto [front, back] = front_back_split(solution.selected_blocks, spectral);
  return {Poly::monic_from_roots(front), Poly::monic_from_roots(back)};
}

}  // namespace balsub
