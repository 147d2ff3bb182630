#ifndef PILEX_DECOMPOSE_HPP
#define PILEX_DECOMPOSE_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pilex/matrix.hpp"
#include "pilex/prob_fns.hpp"

namespace pilex {

// ── Color functions and their orbit classes ─────────────────────────────────

// e: {1..n} -> {1..2^q}. The gamma pattern (gamma(e(1)),..,gamma(e(n))) is
// the exponent signature that drives every tau-product below.
struct ColorFunction {
  int q;
  std::vector<int> values;

  ColorFunction(int q, std::vector<int> values);
  int n() const { return static_cast<int>(values.size()); }
  int operator()(int position) const { return values[static_cast<std::size_t>(position) - 1]; }
  std::vector<int> gamma_pattern() const;

  friend bool operator==(const ColorFunction&, const ColorFunction&) = default;
  friend auto operator<=>(const ColorFunction&, const ColorFunction&) = default;
};

// Orbit of a color function under post-composition with the
// spectrum-preserving group; representative is the lexicographically least
// member and size is the normalizing factor S_e.
struct OrbitClass {
  ColorFunction representative;
  std::uint64_t size;
};

std::vector<OrbitClass> enumerate_classes(int q, int n,
                                          const Guards& guards = default_guards());

// The simplex vector e(p): component s = moment(tau0, gamma(s), q-gamma(s))
// * (1 - sum p_i) + sum_{e(i)=s} p_i. `p` supplies p_1..p_n.
SimplexVector e_of_p(const ColorFunction& e, std::span<const Rat> p,
                     const DiscreteMeasure& tau0);

// ── Matrices of tau-products ────────────────────────────────────────────────

// Class-indexed matrix: row e carries taus[e], column f contributes
// prod_r tau_{e,r}^{gamma(f(r))} (1-tau_{e,r})^{q-gamma(f(r))}. Well-defined
// on classes since post-composition preserves gamma patterns. Note that two
// distinct classes can share a gamma pattern (first at q=2), which makes
// their columns identical and this matrix singular; the decomposition
// therefore runs on the pattern-indexed matrix below.
RatMatrix build_matrix(const std::vector<OrbitClass>& classes,
                       const std::vector<std::vector<Rat>>& taus, int q);

// All gamma patterns {0..q}^n in lexicographic order.
std::vector<std::vector<int>> gamma_patterns(int q, int n,
                                             const Guards& guards = default_guards());

// Pattern-indexed matrix: one tau row per pattern, columns are the distinct
// gamma patterns themselves.
RatMatrix build_pattern_matrix(const std::vector<std::vector<int>>& patterns,
                               const std::vector<std::vector<Rat>>& taus, int q);

struct TauTable {
  std::vector<std::vector<Rat>> rows;  // aligned with the pattern list
  Rat det;                             // exact, nonzero
  std::uint64_t seed = 0;
  int attempts = 0;  // 0 = the deterministic gamma-indicator table
};

// Picks one tau row per pattern such that the pattern matrix has exactly
// certified nonzero determinant. The deterministic first attempt sets
// tau_r = pattern_r / q (for q = 1 this yields the identity matrix); if that
// is singular, seeded random rational rows are tried, then a fixed
// derived-seed stream.
TauTable choose_regular_taus(const std::vector<std::vector<int>>& patterns, int q,
                             std::uint64_t seed, const Guards& guards = default_guards());

// ── Decomposition results ───────────────────────────────────────────────────

struct VerifiedValue {
  StateDescription sd;
  Rat lhs;  // the symmetrized product function (or mixture)
  Rat rhs;  // (1+lambda) w1 - lambda w2
};

struct DecompositionResult {
  Rat lambda;
  ProbFn w1, w2;  // mixtures of v_n building blocks
  TauTable taus;
  int verified_length = 0;
  std::vector<VerifiedValue> certificate;
};

// Writes the SPx closure z_x as (1+lambda) w1 - lambda w2 with w1, w2
// mixtures of v^{p,tau}_{2^q} functions, exactly. The identity is verified
// on every state description of length <= verify_length and recorded in the
// certificate; lambda depends only on (q, tau table), not on x, for x with
// generic coincidence structure.
DecompositionResult decompose_z(const SimplexVector& x, std::uint64_t seed, int verify_length,
                                const Guards& guards = default_guards());

// Same for a finite mixture sum_k mu_k z_{x_k}, under one shared tau table.
DecompositionResult decompose_mixture(const std::vector<std::pair<Rat, SimplexVector>>& mix,
                                      std::uint64_t seed, int verify_length,
                                      const Guards& guards = default_guards());

}  // namespace pilex

#endif
