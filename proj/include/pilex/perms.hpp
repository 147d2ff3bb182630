#ifndef PILEX_PERMS_HPP
#define PILEX_PERMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "pilex/lang.hpp"

namespace pilex {

// Permutations are stored as 1-based images: image[i-1] is where i goes.
// Composition acts on the left: (f.compose(g))(x) = f(g(x)).

struct PredPermutation {
  int q;
  std::vector<int> image;

  PredPermutation(int q, std::vector<int> image);
  int operator()(int predicate) const { return image[static_cast<std::size_t>(predicate) - 1]; }
};

struct ConstPermutation {
  int n;
  std::vector<int> image;

  ConstPermutation(int n, std::vector<int> image);
  int operator()(int constant) const { return image[static_cast<std::size_t>(constant) - 1]; }
  ConstPermutation inverse() const;
};

struct AtomPermutation {
  int q;
  std::vector<int> image;  // bijection on 1..2^q

  AtomPermutation(int q, std::vector<int> image);
  static AtomPermutation identity(int q);

  int operator()(int atom_index) const { return image[static_cast<std::size_t>(atom_index) - 1]; }
  AtomPermutation compose(const AtomPermutation& other) const;
  AtomPermutation inverse() const;
  bool gamma_preserving() const;

  std::string to_string() const;  // "[2,1,3]"

  friend bool operator==(const AtomPermutation&, const AtomPermutation&) = default;
  friend auto operator<=>(const AtomPermutation&, const AtomPermutation&) = default;
};

// The atom permutation obtained by moving sign-sequence coordinates along a
// predicate permutation: the image atom negates P_{p(i)} iff the source atom
// negates P_i. Always gamma-preserving.
AtomPermutation induced_atom_perm(const PredPermutation& p);

std::vector<PredPermutation> all_pred_perms(int q);
std::vector<ConstPermutation> all_const_perms(int n);
std::vector<AtomPermutation> all_atom_perms(int q, const Guards& guards = default_guards());

// h'_i = ap(h_{cp^{-1}(i)}); null pointers act as identities.
StateDescription apply(const StateDescription& sd, const AtomPermutation* ap,
                       const ConstPermutation* cp);
StateDescription apply(const StateDescription& sd, const AtomPermutation& ap);
StateDescription apply(const StateDescription& sd, const ConstPermutation& cp);

std::string format_perm(const std::vector<int>& image);  // "[2,1,3]"

}  // namespace pilex

#endif
