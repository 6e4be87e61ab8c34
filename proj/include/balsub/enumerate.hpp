#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <tuple>
#include <vector>

#include "combinatorics.hpp"
#include "construct.hpp"
#include "graphmap.hpp"
#include "sign.hpp"
#include "solution.hpp"

namespace balsub {

/// Rank-based oracle: dim(W ∩ V_i) = a for every i.
inline bool is_balanced(const Configuration& config, const Subspace& W, std::size_t a, const Tolerances& tol) {
  if (W.ambient_dim() != config.ambient_dim()) fail(ErrorKind::DimensionMismatch, "W lives in the wrong space");
  if (W.dim() != 2 * a) fail(ErrorKind::DimensionMismatch, "W must have dimension 2a");
  for (const auto& v : config.spaces()) {
    if (intersect(W, v, tol).dim() != a) return false;
  }
  return true;
}

namespace detail {

template <typename Emit>
void block_subsets(const std::vector<Block>& blocks, std::size_t start, std::size_t dim_left,
                   std::vector<std::size_t>& chosen, Emit&& emit) {
  if (dim_left == 0) {
    emit(chosen);
    return;
  }
  for (std::size_t i = start; i < blocks.size(); ++i) {
    const std::size_t d = blocks[i].eigen.dim();
    if (d > dim_left) continue;
    chosen.push_back(i);
    block_subsets(blocks, i + 1, dim_left - d, chosen, emit);
    chosen.pop_back();
  }
}

}  // namespace detail

/// All 2a-dimensional balanced subspaces of a generic configuration, one per set of blocks
/// of total dimension 2a, in lexicographic order of block indices.
inline SolutionList enumerate_balanced(const Configuration& config, const SpectralData& spectral, std::size_t a) {
  const std::size_t b = config.b();
  if (a == 0 || a >= b) fail(ErrorKind::InvalidA, "need 0 < a < b (a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
  if (!spectral.genericity.generic()) fail(ErrorKind::NonGeneric, spectral.genericity.summary());

  const Tolerances& tol = config.tol();
  SolutionList list;
  list.config_digest = digest(config);
  list.a = a;

  std::vector<std::size_t> chosen;
  detail::block_subsets(spectral.blocks, 0, 2 * a, chosen, [&](const std::vector<std::size_t>& sel) {
    BalancedSolution s;
    s.a = a;
    s.selected_blocks = sel;
    Mat frames(static_cast<Eigen::Index>(config.ambient_dim()), static_cast<Eigen::Index>(2 * a));
    Eigen::Index col = 0;
    for (std::size_t idx : sel) {
      const Mat& f = spectral.blocks[idx].frame;
      frames.middleCols(col, f.cols()) = f;
      col += f.cols();
    }
    s.W = orthonormalize(frames, tol);
    if (s.W.dim() != 2 * a) fail(ErrorKind::NumericalFailure, "block frames are not independent");
    std::tie(s.front_eigs, s.back_eigs) = front_back_split(sel, spectral);
    s.sign = sign_full(s.front_eigs, s.back_eigs, tol.eig_sep_rel);
    s.resultant = resultant_from_roots(s.front_eigs, s.back_eigs);
    s.order_dependent = a % 2 == 1 || b % 2 == 1;
    list.solutions.push_back(std::move(s));
  });
  return list;
}

inline SolutionList enumerate_balanced(const Configuration& config, std::size_t a) {
  return enumerate_balanced(config, phi_of(config), a);
}

/// The subset H ⊆ {1..b} of the combinatorial model: real blocks take 1..b-2c in
/// ascending eigenvalue order, pair k takes {b-2c+2k+1, b-2c+2k+2}.
inline IndexSet solution_index_set(const BalancedSolution& solution, const SpectralData& spectral) {
  const std::size_t r = spectral.real_eigs.size();
  IndexSet h;
  for (std::size_t idx : solution.selected_blocks) {
    if (idx < r) {
      h.push_back(static_cast<int>(idx + 1));
    } else {
      const std::size_t k = idx - r;
      h.push_back(static_cast<int>(r + 2 * k + 1));
      h.push_back(static_cast<int>(r + 2 * k + 2));
    }
  }
  std::sort(h.begin(), h.end());
  return h;
}

/// Counts balanced subspaces of a random generic configuration with exactly c pairs.
inline std::size_t count_by_enumeration(std::size_t b, std::size_t a, std::size_t c, std::uint64_t seed,
                                        const Tolerances& tol = {}) {
  if (2 * c > b) fail(ErrorKind::InvalidInput, "need 2c <= b");
  std::mt19937_64 rng(seed);
  const Spectrum spectrum = random_spectrum(b, c, rng);
  const Configuration config = from_spectrum(spectrum, rng(), tol);
  return enumerate_balanced(config, a).count();
}

}  // namespace balsub
