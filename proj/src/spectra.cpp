#include "pilex/spectra.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace pilex {

PSpectrum::PSpectrum(int q, std::vector<std::vector<int>> levels)
    : q_(q), levels_(std::move(levels)) {
  if (static_cast<int>(levels_.size()) != q + 1) {
    throw BoundsError("P-spectrum needs q+1 levels");
  }
  for (auto& level : levels_) {
    if (!std::is_sorted(level.begin(), level.end(), std::greater<int>())) {
      throw BoundsError("P-spectrum levels must be descending-sorted");
    }
    for (int size : level) {
      if (size < 1) throw BoundsError("P-spectrum class sizes must be positive");
    }
  }
  // A single all-positive and a single all-negative atom exist, so those
  // levels can hold at most one equivalence class.
  if (levels_.front().size() > 1 || levels_.back().size() > 1) {
    throw BoundsError("levels 0 and q admit at most one equivalence class");
  }
}

const std::vector<int>& PSpectrum::level(int i) const {
  if (i < 0 || i > q_) throw BoundsError("P-spectrum level out of range");
  return levels_[static_cast<std::size_t>(i)];
}

int PSpectrum::total() const {
  int sum = 0;
  for (const auto& level : levels_) sum += std::accumulate(level.begin(), level.end(), 0);
  return sum;
}

std::string PSpectrum::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i <= q_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < levels_[static_cast<std::size_t>(i)].size(); ++j) {
      if (j) os << ',';
      os << levels_[static_cast<std::size_t>(i)][j];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

PSpectrum pspectrum(const StateDescription& sd) {
  const int q = sd.q();
  // Group constants by atom, then collect group sizes per gamma level.
  std::map<int, int> group_size;
  for (int i = 1; i <= sd.size(); ++i) ++group_size[sd.atom_index(i)];
  std::vector<std::vector<int>> levels(static_cast<std::size_t>(q) + 1);
  for (const auto& [atom, size] : group_size) {
    levels[static_cast<std::size_t>(gamma(q, atom))].push_back(size);
  }
  for (auto& level : levels) std::sort(level.begin(), level.end(), std::greater<int>());
  return PSpectrum(q, std::move(levels));
}

std::map<PSpectrum, std::vector<StateDescription>> spectrum_partition(int q, int n,
                                                                      const Guards& guards) {
  const std::uint64_t size = sd_space_size(q, n, guards);
  std::map<PSpectrum, std::vector<StateDescription>> cells;
  for (std::uint64_t rank = 0; rank < size; ++rank) {
    StateDescription sd = sd_from_rank(q, n, rank);
    cells[pspectrum(sd)].push_back(std::move(sd));
  }
  return cells;
}

std::uint64_t spec_perm_group_size(int q) {
  std::uint64_t size = 1;
  for (int k = 0; k <= q; ++k) {
    // (C(q,k))!
    std::uint64_t binom = 1;
    for (int i = 1; i <= k; ++i) {
      binom = binom * static_cast<std::uint64_t>(q - i + 1) / static_cast<std::uint64_t>(i);
    }
    for (std::uint64_t f = 2; f <= binom; ++f) size *= f;
  }
  return size;
}

std::vector<AtomPermutation> spec_perm_group(int q, const Guards& guards) {
  if (q < 1) throw BoundsError("predicate count must be positive");
  if (q > guards.max_group_q) {
    throw GuardError("spectrum-preserving group guarded to q <= " +
                     std::to_string(guards.max_group_q));
  }
  std::vector<std::vector<int>> levels(static_cast<std::size_t>(q) + 1);
  for (int i = 1; i <= (1 << q); ++i) {
    levels[static_cast<std::size_t>(gamma(q, i))].push_back(i);
  }
  // Direct product of the symmetric groups on each level, in lexicographic
  // image order.
  std::vector<AtomPermutation> group;
  std::vector<int> image(std::size_t{1} << q);
  auto emit = [&](auto&& self, std::size_t level) -> void {
    if (level == levels.size()) {
      group.emplace_back(q, image);
      return;
    }
    std::vector<int> targets = levels[level];
    std::sort(targets.begin(), targets.end());
    do {
      for (std::size_t j = 0; j < targets.size(); ++j) {
        image[static_cast<std::size_t>(levels[level][j]) - 1] = targets[j];
      }
      self(self, level + 1);
    } while (std::next_permutation(targets.begin(), targets.end()));
  };
  emit(emit, 0);
  std::sort(group.begin(), group.end());
  return group;
}

std::vector<StateDescription> spectrum_orbit(int Q, const StateDescription& upsilon,
                                             const Guards& guards) {
  if (upsilon.q() != Q) throw BoundsError("language mismatch in orbit enumeration");
  const auto group = spec_perm_group(Q, guards);
  const auto const_perms = all_const_perms(upsilon.size());
  if (group.size() * const_perms.size() > guards.max_enum) {
    throw GuardError("orbit enumeration exceeds guard");
  }
  std::set<StateDescription> orbit;
  for (const auto& sigma : group) {
    for (const auto& rho : const_perms) {
      orbit.insert(apply(upsilon, &sigma, &rho));
    }
  }
  return {orbit.begin(), orbit.end()};
}

Rat spectrum_class_ratio(int Q, const StateDescription& upsilon, const StateDescription& theta,
                         const Guards& guards) {
  if (theta.q() != Q) throw BoundsError("language mismatch in ratio");
  if (theta.size() > upsilon.size()) {
    throw BoundsError("theta longer than upsilon in spectrum_class_ratio");
  }
  const auto orbit = spectrum_orbit(Q, upsilon, guards);
  std::uint64_t matching = 0;
  for (const auto& member : orbit) {
    if (member.prefix(theta.size()) == theta) ++matching;
  }
  Rat ratio(static_cast<unsigned long>(matching), static_cast<unsigned long>(orbit.size()));
  ratio.canonicalize();
  return ratio;
}

}  // namespace pilex
