#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "solution.hpp"

namespace balsub {

using BigInt = boost::multiprecision::cpp_int;

/// Subset of {1..b}, ascending.
using IndexSet = std::vector<int>;

/// binom(n, k), zero outside 0 <= k <= n.
inline BigInt binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

namespace detail {

inline void require_abc(int a, int b, int c) {
  if (b < 0 || a < 0 || a > b || c < 0 || 2 * c > b) {
    fail(ErrorKind::InvalidInput, "need 0 <= a <= b and 0 <= 2c <= b (a=" + std::to_string(a) +
                                      ", b=" + std::to_string(b) + ", c=" + std::to_string(c) + ")");
  }
}

/// Block B_i = {b-2i+1, b-2i+2}, indexed from the back.
inline int meets_block(const IndexSet& h, int b, int i) {
  const int lo = b - 2 * i + 1;
  return static_cast<int>(std::count(h.begin(), h.end(), lo) + std::count(h.begin(), h.end(), lo + 1));
}

template <typename Visit>
void for_each_subset(int b, int a, Visit&& visit) {
  if (a < 0 || a > b) return;
  IndexSet h(static_cast<std::size_t>(a));
  for (int i = 0; i < a; ++i) h[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    visit(h);
    int i = a - 1;
    while (i >= 0 && h[static_cast<std::size_t>(i)] == b - a + i + 1) --i;
    if (i < 0) return;
    ++h[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < a; ++j) h[static_cast<std::size_t>(j)] = h[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace detail

/// N_R(b, a, c) = sum_i binom(c, i) binom(b - 2c, a - 2i).
inline BigInt count_real(int b, int a, int c) {
  detail::require_abc(a, b, c);
  BigInt n = 0;
  for (int i = 0; i <= c; ++i) n += binomial(c, i) * binomial(b - 2 * c, a - 2 * i);
  return n;
}

/// The signed sum predicted for sol(a, b, c): 0 for a odd and b even, else binom(b/2, a/2).
inline BigInt expected_signed_sum(int a, int b) {
  if (a % 2 == 1 && b % 2 == 0) return 0;
  return binomial(b / 2, a / 2);
}

struct SolSet {
  int a = 0, b = 0, c = 0;
  std::vector<IndexSet> members;
};

inline bool in_sol(const IndexSet& h, int a, int b, int c) {
  if (static_cast<int>(h.size()) != a) return false;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] < 1 || h[i] > b) return false;
    if (i > 0 && h[i] <= h[i - 1]) return false;
  }
  for (int i = 1; i <= c; ++i)
    if (detail::meets_block(h, b, i) == 1) return false;
  return true;
}

/// Exhaustive sol(a, b, c) in lexicographic order.
inline SolSet enumerate_sol(int a, int b, int c) {
  detail::require_abc(a, b, c);
  SolSet s{a, b, c, {}};
  detail::for_each_subset(b, a, [&](const IndexSet& h) {
    if (in_sol(h, a, b, c)) s.members.push_back(h);
  });
  return s;
}

/// Sign of ρ_H: H ∩ {1..b-2c} ascending followed by the rest of {1..b-2c} ascending.
inline Sign sign_of_H(const IndexSet& h, int b, int c) {
  detail::require_abc(static_cast<int>(h.size()), b, c);
  if (!in_sol(h, static_cast<int>(h.size()), b, c)) fail(ErrorKind::InvalidInput, "H is not in sol(a, b, c)");
  const int n = b - 2 * c;
  std::vector<int> perm;
  for (int x : h)
    if (x <= n) perm.push_back(x);
  for (int x = 1; x <= n; ++x)
    if (!std::binary_search(h.begin(), h.end(), x)) perm.push_back(x);
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? Sign::Positive : Sign::Negative;
}

/// |C_S| for |S| = s_size: 2^|S| binom(v - |S|, floor((a - |S|)/2)) when b is odd or
/// a - |S| >= 0 is even, 0 otherwise.
inline BigInt cs_cardinality(int s_size, int a, int b) {
  if (b < 0 || a < 0 || a > b || s_size < 0 || s_size > b / 2) {
    fail(ErrorKind::InvalidInput, "need 0 <= a <= b and 0 <= |S| <= floor(b/2)");
  }
  const int v = b / 2;
  const int rest = a - s_size;
  if (rest < 0) return 0;
  if (b % 2 == 0 && rest % 2 != 0) return 0;
  return (BigInt(1) << s_size) * binomial(v - s_size, rest / 2);
}

struct CSCell {
  std::vector<int> S;  // block indices in {1..v}, ascending
  std::vector<IndexSet> members;
};

/// C_S: a-subsets meeting block B_i in exactly one element iff i ∈ S.
inline CSCell cs_cell(const std::vector<int>& S, int a, int b) {
  detail::require_abc(a, b, 0);
  const int v = b / 2;
  for (int i : S)
    if (i < 1 || i > v) fail(ErrorKind::InvalidInput, "block index out of range");
  CSCell cell{S, {}};
  std::sort(cell.S.begin(), cell.S.end());
  detail::for_each_subset(b, a, [&](const IndexSet& h) {
    for (int i = 1; i <= v; ++i) {
      const bool in_s = std::binary_search(cell.S.begin(), cell.S.end(), i);
      if ((detail::meets_block(h, b, i) == 1) != in_s) return;
    }
    cell.members.push_back(h);
  });
  return cell;
}

/// Every C_S for S ⊆ {1..v}, S enumerated by bitmask.
inline std::vector<CSCell> cs_partition(int a, int b) {
  detail::require_abc(a, b, 0);
  const int v = b / 2;
  std::vector<CSCell> cells;
  for (std::uint32_t mask = 0; mask < (1u << v); ++mask) {
    std::vector<int> S;
    for (int i = 0; i < v; ++i)
      if (mask & (1u << i)) S.push_back(i + 1);
    cells.push_back(cs_cell(S, a, b));
  }
  return cells;
}

/// Sum of ε(H) over a cell, with signs taken in S_{b-2c}. The cell must avoid blocks 1..c.
inline long long signed_sum_cell(const CSCell& cell, int b, int c) {
  for (int i : cell.S)
    if (i <= c) fail(ErrorKind::InvalidInput, "cell meets one of the first c blocks in a single element");
  long long s = 0;
  for (const auto& h : cell.members) s += to_int(sign_of_H(h, b, c));
  return s;
}

/// binom(v, u) + sum_{i>=1} 4^i binom(v - c, 2i) binom(v - 2i, u - i) for a = 2u, b = 2v.
inline BigInt four_adic_count(int u, int v, int c) {
  if (u < 0 || v < 0 || u > v || c < 0 || c > v) fail(ErrorKind::InvalidInput, "need 0 <= u <= v and 0 <= c <= v");
  BigInt n = binomial(v, u);
  BigInt four_pow = 1;
  for (int i = 1; i <= v; ++i) {
    four_pow *= 4;
    n += four_pow * binomial(v - c, 2 * i) * binomial(v - 2 * i, u - i);
  }
  return n;
}

/// Number of carries when m is added to n - m in base p.
inline int kummer_carries(const BigInt& n, const BigInt& m, unsigned p) {
  if (m < 0 || n < m) fail(ErrorKind::InvalidInput, "need n >= m >= 0");
  if (p < 2) fail(ErrorKind::InvalidInput, "p must be prime");
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) fail(ErrorKind::InvalidInput, "p must be prime");
  BigInt x = m, y = n - m;
  int carries = 0;
  unsigned carry = 0;
  while (x > 0 || y > 0 || carry > 0) {
    const unsigned dx = static_cast<unsigned>(x % p);
    const unsigned dy = static_cast<unsigned>(y % p);
    carry = (dx + dy + carry) >= p ? 1u : 0u;
    carries += static_cast<int>(carry);
    x /= p;
    y /= p;
  }
  return carries;
}

/// Coefficient of x1^a x2^{b-a} in (x1 + x2)^{b-2c} (x1^2 + x2^2)^c, by repeated polynomial
/// multiplication (coefficients indexed by the exponent of x1).
inline BigInt factorization_count_gf(int a, int b, int c) {
  detail::require_abc(a, b, c);
  std::vector<BigInt> poly{1};
  auto multiply = [&poly](const std::vector<BigInt>& factor) {
    std::vector<BigInt> out(poly.size() + factor.size() - 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = 0; j < factor.size(); ++j) out[i + j] += poly[i] * factor[j];
    poly = std::move(out);
  };
  for (int i = 0; i < b - 2 * c; ++i) multiply({1, 1});
  for (int i = 0; i < c; ++i) multiply({1, 0, 1});
  return poly.at(static_cast<std::size_t>(a));
}

/// Residues of N_R(b, a, c) modulo 2^{k+1} across every admissible c.
struct ModReport {
  int a = 0, b = 0, k = 0;
  BigInt modulus;
  std::vector<BigInt> counts;    // c = 0..floor(b/2)
  std::vector<BigInt> residues;
  BigInt c_empty;                // |C_∅|
  bool constant = false;         // all residues equal
  bool matches_c_empty = false;  // every count ≡ |C_∅|
  bool hypothesis = false;       // 2^k divides a and b
  /// For k = 1 with a or b odd: whether binom(v-1, floor((a-1)/2)) is even, i.e. the
  /// predicted mod-4 constancy.
  std::optional<bool> odd_prediction;

  bool holds() const {
    if (odd_prediction) return (constant && matches_c_empty) == *odd_prediction;
    if (hypothesis) return constant && matches_c_empty;
    return true;
  }
};

inline ModReport mod_theorem_check(int a, int b, int k) {
  detail::require_abc(a, b, 0);
  if (k < 1 || k > 30) fail(ErrorKind::InvalidInput, "modulus exponent must be in 1..30");
  ModReport r;
  r.a = a;
  r.b = b;
  r.k = k;
  r.modulus = BigInt(1) << (k + 1);
  const int v = b / 2;
  r.c_empty = cs_cardinality(0, a, b);
  const BigInt target = r.c_empty % r.modulus;
  r.constant = true;
  r.matches_c_empty = true;
  for (int c = 0; c <= v; ++c) {
    r.counts.push_back(count_real(b, a, c));
    r.residues.push_back(r.counts.back() % r.modulus);
    if (r.residues.back() != r.residues.front()) r.constant = false;
    if (r.residues.back() != target) r.matches_c_empty = false;
  }
  const int step = 1 << k;
  r.hypothesis = a % step == 0 && b % step == 0;
  if (k == 1 && (a % 2 == 1 || b % 2 == 1)) {
    const int half = a >= 1 ? (a - 1) / 2 : -1;  // floor((a-1)/2)
    r.odd_prediction = binomial(v - 1, half) % 2 == 0;
  }
  return r;
}

}  // namespace balsub
