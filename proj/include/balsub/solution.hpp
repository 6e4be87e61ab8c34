#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace balsub {

enum class Sign : int { Negative = -1, Undefined = 0, Positive = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }

inline Sign operator*(Sign l, Sign r) { return static_cast<Sign>(to_int(l) * to_int(r)); }

/// One 2a-dimensional balanced subspace, identified by the blocks it contains.
struct BalancedSolution {
  std::size_t a = 0;
  std::vector<std::size_t> selected_blocks;  // ascending indices into SpectralData::blocks
  Subspace W;
  Spectrum front_eigs;  // eigenvalues of the selected blocks
  Spectrum back_eigs;   // eigenvalues of the remaining blocks
  Sign sign = Sign::Undefined;
  double resultant = 0.0;        // product over front/back of (back - front)
  bool order_dependent = false;  // a or b odd: the sign depends on the order of V1..V4
};

struct SolutionList {
  std::string config_digest;
  std::size_t a = 0;
  std::vector<BalancedSolution> solutions;

  std::size_t count() const { return solutions.size(); }

  long long signed_sum() const {
    long long s = 0;
    for (const auto& sol : solutions) s += to_int(sol.sign);
    return s;
  }
};

}  // namespace balsub
