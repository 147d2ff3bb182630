#ifndef PILEX_SPECTRA_HPP
#define PILEX_SPECTRA_HPP

#include <map>
#include <string>
#include <vector>

#include "pilex/lang.hpp"
#include "pilex/perms.hpp"
#include "pilex/rational.hpp"

namespace pilex {

// The P-spectrum of a state description: for each negation-count level
// i = 0..q, the multiset of sizes of groups of constants carrying the same
// level-i atom. Multisets are stored descending-sorted so equality of
// spectra is structural equality.
class PSpectrum {
 public:
  PSpectrum(int q, std::vector<std::vector<int>> levels);

  int q() const { return q_; }
  const std::vector<int>& level(int i) const;
  const std::vector<std::vector<int>>& levels() const { return levels_; }
  int total() const;  // number of constants classified

  std::string to_string() const;  // "[[],[1,1],[2,1],[]]"

  friend bool operator==(const PSpectrum&, const PSpectrum&) = default;
  friend auto operator<=>(const PSpectrum&, const PSpectrum&) = default;

 private:
  int q_;
  std::vector<std::vector<int>> levels_;
};

PSpectrum pspectrum(const StateDescription& sd);

// All state descriptions of length n grouped by P-spectrum. Cells are keyed
// by spectrum and each cell lists its members in lexicographic order.
std::map<PSpectrum, std::vector<StateDescription>> spectrum_partition(
    int q, int n, const Guards& guards = default_guards());

// The group of atom permutations preserving P-spectra: exactly the
// permutations acting within each gamma level, of order prod_k (C(q,k))!.
// Enumerated in lexicographic image order.
std::vector<AtomPermutation> spec_perm_group(int q, const Guards& guards = default_guards());

std::uint64_t spec_perm_group_size(int q);

// Orbit of `upsilon` under spectrum-preserving atom permutations composed
// with constant permutations, sorted lexicographically. At the scales the
// tests pin down, this orbit coincides with the set of descriptions sharing
// upsilon's P-spectrum.
std::vector<StateDescription> spectrum_orbit(int Q, const StateDescription& upsilon,
                                             const Guards& guards = default_guards());

// The finite orbit-counting ratio: the fraction of orbit members whose
// first theta.size() constants carry exactly theta's atoms.
Rat spectrum_class_ratio(int Q, const StateDescription& upsilon,
                         const StateDescription& theta,
                         const Guards& guards = default_guards());

}  // namespace pilex

#endif
