#include "pilex/perms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pilex {

namespace {

void check_bijection(const std::vector<int>& image, int size, const char* what) {
  if (static_cast<int>(image.size()) != size) {
    throw BoundsError(std::string(what) + " image has wrong size");
  }
  std::vector<bool> seen(static_cast<std::size_t>(size), false);
  for (int v : image) {
    if (v < 1 || v > size || seen[static_cast<std::size_t>(v) - 1]) {
      throw BoundsError(std::string(what) + " image is not a bijection");
    }
    seen[static_cast<std::size_t>(v) - 1] = true;
  }
}

}  // namespace

PredPermutation::PredPermutation(int q, std::vector<int> image)
    : q(q), image(std::move(image)) {
  check_bijection(this->image, q, "predicate permutation");
}

ConstPermutation::ConstPermutation(int n, std::vector<int> image)
    : n(n), image(std::move(image)) {
  check_bijection(this->image, n, "constant permutation");
}

ConstPermutation ConstPermutation::inverse() const {
  std::vector<int> inv(image.size());
  for (int i = 1; i <= n; ++i) inv[static_cast<std::size_t>((*this)(i)) - 1] = i;
  return ConstPermutation(n, std::move(inv));
}

AtomPermutation::AtomPermutation(int q, std::vector<int> image)
    : q(q), image(std::move(image)) {
  check_bijection(this->image, 1 << q, "atom permutation");
}

AtomPermutation AtomPermutation::identity(int q) {
  std::vector<int> image(std::size_t{1} << q);
  std::iota(image.begin(), image.end(), 1);
  return AtomPermutation(q, std::move(image));
}

AtomPermutation AtomPermutation::compose(const AtomPermutation& other) const {
  if (q != other.q) throw BoundsError("composing atom permutations of different languages");
  std::vector<int> image(this->image.size());
  for (int i = 1; i <= (1 << q); ++i) {
    image[static_cast<std::size_t>(i) - 1] = (*this)(other(i));
  }
  return AtomPermutation(q, std::move(image));
}

AtomPermutation AtomPermutation::inverse() const {
  std::vector<int> inv(image.size());
  for (int i = 1; i <= (1 << q); ++i) inv[static_cast<std::size_t>((*this)(i)) - 1] = i;
  return AtomPermutation(q, std::move(inv));
}

bool AtomPermutation::gamma_preserving() const {
  for (int i = 1; i <= (1 << q); ++i) {
    if (gamma(q, i) != gamma(q, (*this)(i))) return false;
  }
  return true;
}

std::string AtomPermutation::to_string() const { return format_perm(image); }

AtomPermutation induced_atom_perm(const PredPermutation& p) {
  const int q = p.q;
  std::vector<int> image(std::size_t{1} << q);
  for (int i = 1; i <= (1 << q); ++i) {
    Atom a(q, i);
    std::vector<bool> negated(static_cast<std::size_t>(q), false);
    for (int k = 1; k <= q; ++k) negated[static_cast<std::size_t>(p(k)) - 1] = a.negated(k);
    image[static_cast<std::size_t>(i) - 1] = Atom::from_signs(negated).index();
  }
  return AtomPermutation(q, std::move(image));
}

namespace {

std::vector<std::vector<int>> all_images(int size) {
  std::vector<int> image(static_cast<std::size_t>(size));
  std::iota(image.begin(), image.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

}  // namespace

std::vector<PredPermutation> all_pred_perms(int q) {
  std::vector<PredPermutation> out;
  for (auto& image : all_images(q)) out.emplace_back(q, std::move(image));
  return out;
}

std::vector<ConstPermutation> all_const_perms(int n) {
  std::vector<ConstPermutation> out;
  for (auto& image : all_images(n)) out.emplace_back(n, std::move(image));
  return out;
}

std::vector<AtomPermutation> all_atom_perms(int q, const Guards& guards) {
  std::uint64_t count = 1;
  for (int i = 2; i <= (1 << q); ++i) {
    count *= static_cast<std::uint64_t>(i);
    if (count > guards.max_enum) {
      throw GuardError("(2^q)! atom permutations exceed the enumeration guard");
    }
  }
  std::vector<AtomPermutation> out;
  for (auto& image : all_images(1 << q)) out.emplace_back(q, std::move(image));
  return out;
}

StateDescription apply(const StateDescription& sd, const AtomPermutation* ap,
                       const ConstPermutation* cp) {
  if (ap && ap->q != sd.q()) throw BoundsError("atom permutation language mismatch");
  if (cp && cp->n != sd.size()) throw BoundsError("constant permutation size mismatch");
  const int n = sd.size();
  std::vector<int> h(static_cast<std::size_t>(n));
  std::optional<ConstPermutation> inv;
  if (cp) inv = cp->inverse();
  for (int i = 1; i <= n; ++i) {
    int source = inv ? (*inv)(i) : i;
    int atom = sd.atom_index(source);
    h[static_cast<std::size_t>(i) - 1] = ap ? (*ap)(atom) : atom;
  }
  return StateDescription(sd.q(), std::move(h));
}

StateDescription apply(const StateDescription& sd, const AtomPermutation& ap) {
  return apply(sd, &ap, nullptr);
}

StateDescription apply(const StateDescription& sd, const ConstPermutation& cp) {
  return apply(sd, nullptr, &cp);
}

std::string format_perm(const std::vector<int>& image) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (i) os << ',';
    os << image[i];
  }
  os << ']';
  return os.str();
}

}  // namespace pilex
