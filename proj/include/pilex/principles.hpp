#ifndef PILEX_PRINCIPLES_HPP
#define PILEX_PRINCIPLES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pilex/prob_fns.hpp"

namespace pilex {

// Bounded brute-force verification of the rational principles. "pass" means
// no violating instance exists in the enumerated space; the spaces and their
// scan orders are fixed:
//   - state descriptions are scanned by length ascending, then by
//     lexicographic atom-index order;
//   - permutations are scanned in lexicographic image order, inner to the
//     state-description scan;
//   - the witness is the first violation met in that order, so reports are
//     reproducible across runs and machines.
// Ax enumerates all (2^q)! atom permutations for q <= 2. For q = 3 it tests
// the 36 spectrum-preserving permutations plus the adjacent transpositions
// (i, i+1) with gamma(i) != gamma(i+1), which refute Ax for every
// non-atom-exchangeable function this library constructs.

enum class Principle { Axioms, Ex, Px, Ax, SPx, WIP, ULiConsistency };

std::string principle_name(Principle p);

struct Witness {
  std::optional<StateDescription> theta, phi;
  std::optional<std::string> theta_sentence, phi_sentence;  // WIP pairs
  std::optional<std::vector<int>> permutation;
  std::optional<Rat> lhs, rhs;
  std::string note;
};

struct PrincipleReport {
  Principle principle;
  bool pass = false;
  std::optional<Witness> witness;
  int q = 0;
  int n = 0;
  std::vector<std::pair<std::string, std::string>> extra_bounds;
};

// Probability-function axioms on quantifier-free sentences: w(T) = 1,
// nonnegativity, total mass 1 at each length <= n, and exact marginalization
// between consecutive lengths.
PrincipleReport check_axioms(const ProbFn& fn, int q, int n,
                             const Guards& guards = default_guards());

// Invariance principles Ex, Px, Ax, SPx, checked on all state descriptions
// of length <= n.
PrincipleReport check_invariance(const ProbFn& fn, Principle principle, int q, int n,
                                 const Guards& guards = default_guards());

struct WipBounds {
  int preds_per_side = 2;   // capped at q/2
  int consts_per_side = 2;
};

// Product factorization over disjoint signatures: theta ranges over literal
// conjunctions in the first predicate block and constants a_1.., phi over
// the second block and the constants directly after theta's.
PrincipleReport check_wip(const ProbFn& fn, int q, const WipBounds& bounds = {},
                          const Guards& guards = default_guards());

// Restriction consistency: the L_{q_large} member of the family, restricted
// to L_{q_small}, agrees with direct evaluation on all descriptions of
// length <= n.
PrincipleReport check_uli_consistency(const ProbFn& fn, int q_small, int q_large, int n,
                                      const Guards& guards = default_guards());

// One report per applicable principle (Ax only within its guard, WIP only
// for q >= 2, ULi only for language families), in declaration order.
std::vector<PrincipleReport> classify(const ProbFn& fn, int q, int n,
                                      const Guards& guards = default_guards());

// ── The Px-without-SPx counterexample ───────────────────────────────────────
//
// The symmetrized product function over L_3 built from
// b = <1/19,2/19,4/19,5/19,2/19,3/19,1/19,1/19>: averaging w_{sigma.b} over
// the six predicate-induced atom permutations yields a function that is
// predicate exchangeable but assigns different values to the two length-5
// descriptions Theta = a2 a5 a7 a7 a4 and Phi = a3 a5 a6 a6 a7, which share
// the P-spectrum [[],[1,1],[2,1],[]].

struct PxNotSpxExample {
  StateDescription theta, phi;
  PSpectrum spectrum_theta, spectrum_phi;
  ProbFn w;
  Rat w_theta, w_phi;
  // The published totals for this construction, 1094/(6*19^5) and
  // 1224/(6*19^5); they disagree with the permutation expansion and are kept
  // for the comparison report.
  Rat printed_theta, printed_phi;
  PrincipleReport px_report;   // full scan at q=3, n=5
  PrincipleReport spx_report;  // verdict on the canonical (theta, phi) pair
};

PxNotSpxExample run_px_not_spx_example(const Guards& guards = default_guards());

}  // namespace pilex

#endif
