#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "pilex/spectra.hpp"

using namespace pilex;

namespace {

PSpectrum spectrum(int q, std::vector<std::vector<int>> levels) {
  return PSpectrum(q, std::move(levels));
}

}  // namespace

TEST_CASE("P-spectrum of the worked pair") {
  StateDescription theta = parse_sd("q=3: @2 @5 @7 @7 @4");
  StateDescription phi = parse_sd("q=3: @3 @5 @6 @6 @7");
  PSpectrum expected = spectrum(3, {{}, {1, 1}, {2, 1}, {}});
  CHECK(pspectrum(theta) == expected);
  CHECK(pspectrum(phi) == expected);
  CHECK(pspectrum(theta).to_string() == "[[],[1,1],[2,1],[]]");

  CHECK(pspectrum(parse_sd("q=1: + +")) == spectrum(1, {{2}, {}}));
  CHECK(pspectrum(parse_sd("q=1:")).total() == 0);
}

TEST_CASE("pspectrum matches the from-scratch oracle") {
  for (int q = 1; q <= 3; ++q) {
    for (int n = 0; n <= 3; ++n) {
      for (std::uint64_t rank = 0; rank < sd_space_size(q, n); ++rank) {
        StateDescription sd = sd_from_rank(q, n, rank);
        CHECK(pspectrum(sd).levels() == pilex_test::oracle_pspectrum(q, sd.atom_indices()));
      }
    }
  }
}

TEST_CASE("spectrum_partition covers the space with the right cells") {
  CHECK(spectrum_partition(1, 1).size() == 2);

  auto cells21 = spectrum_partition(2, 1);
  REQUIRE(cells21.size() == 3);
  CHECK(cells21.at(spectrum(2, {{1}, {}, {}})).size() == 1);
  CHECK(cells21.at(spectrum(2, {{}, {1}, {}})).size() == 2);
  CHECK(cells21.at(spectrum(2, {{}, {}, {1}})).size() == 1);

  auto cells22 = spectrum_partition(2, 2);
  CHECK(cells22.size() == 7);
  std::size_t total = 0;
  std::set<StateDescription> seen;
  for (const auto& [spec, members] : cells22) {
    total += members.size();
    for (const auto& sd : members) {
      CHECK(pspectrum(sd) == spec);
      seen.insert(sd);
    }
  }
  CHECK(total == 16);
  CHECK(seen.size() == 16);
}

TEST_CASE("spectrum-preserving group has the level-factorial order") {
  auto g1 = spec_perm_group(1);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0] == AtomPermutation::identity(1));

  auto g2 = spec_perm_group(2);
  REQUIRE(g2.size() == 2);
  CHECK(g2[0] == AtomPermutation::identity(2));
  CHECK(g2[1].image == std::vector<int>{1, 3, 2, 4});

  CHECK(spec_perm_group(3).size() == 36);
  CHECK(spec_perm_group_size(3) == 36);
  CHECK(spec_perm_group_size(4) == 414720);  // 1! 4! 6! 4! 1!
  CHECK(spec_perm_group(4).size() == 414720);
  CHECK_THROWS_AS(spec_perm_group(5), GuardError);
}

TEST_CASE("the group is exactly the spectrum-preserving set at small scale") {
  for (int q = 1; q <= 3; ++q) {
    const auto group = spec_perm_group(q);
    const std::set<AtomPermutation> group_set(group.begin(), group.end());

    // Single-atom descriptions force gamma preservation, so scan all atom
    // permutations against singletons first and the survivors against every
    // description of length <= 3.
    std::set<AtomPermutation> preserving;
    for (const auto& sigma : all_atom_perms(q)) {
      bool ok = true;
      for (int atom = 1; atom <= (1 << q) && ok; ++atom) {
        StateDescription sd(q, {atom});
        ok = pspectrum(apply(sd, sigma)) == pspectrum(sd);
      }
      for (int n = 2; n <= 3 && ok; ++n) {
        for (std::uint64_t rank = 0; rank < sd_space_size(q, n) && ok; ++rank) {
          StateDescription sd = sd_from_rank(q, n, rank);
          ok = pspectrum(apply(sd, sigma)) == pspectrum(sd);
        }
      }
      if (ok) preserving.insert(sigma);
    }
    CHECK(preserving == group_set);
  }
}

TEST_CASE("every Px-induced permutation preserves spectra") {
  for (int q = 1; q <= 3; ++q) {
    const auto group = spec_perm_group(q);
    const std::set<AtomPermutation> group_set(group.begin(), group.end());
    for (const auto& image : pilex_test::oracle_all_perms(q)) {
      CHECK(group_set.count(induced_atom_perm(PredPermutation(q, image))) == 1);
    }
  }
}

TEST_CASE("pspectrum is invariant under constant and gamma-preserving permutations") {
  for (int q = 1; q <= 3; ++q) {
    const auto group = spec_perm_group(q);
    for (int n = 0; n <= 3; ++n) {
      const auto const_perms = all_const_perms(n);
      for (std::uint64_t rank = 0; rank < sd_space_size(q, n); ++rank) {
        StateDescription sd = sd_from_rank(q, n, rank);
        PSpectrum spec = pspectrum(sd);
        for (const auto& rho : const_perms) CHECK(pspectrum(apply(sd, rho)) == spec);
        for (const auto& sigma : group) CHECK(pspectrum(apply(sd, sigma)) == spec);
      }
    }
  }
}

TEST_CASE("spectrum orbits coincide with equal-spectrum classes at small scale") {
  for (int Q = 1; Q <= 2; ++Q) {
    for (int N = 1; N <= 3; ++N) {
      for (std::uint64_t rank = 0; rank < sd_space_size(Q, N); ++rank) {
        StateDescription upsilon = sd_from_rank(Q, N, rank);
        auto orbit = spectrum_orbit(Q, upsilon);
        std::set<StateDescription> orbit_set(orbit.begin(), orbit.end());
        std::set<StateDescription> same_spectrum;
        for (std::uint64_t r2 = 0; r2 < sd_space_size(Q, N); ++r2) {
          StateDescription other = sd_from_rank(Q, N, r2);
          if (pspectrum(other) == pspectrum(upsilon)) same_spectrum.insert(other);
        }
        CHECK(orbit_set == same_spectrum);
      }
    }
  }
}

TEST_CASE("spectrum_class_ratio on tiny orbits") {
  StateDescription upsilon = parse_sd("q=1: + -");
  CHECK(spectrum_class_ratio(1, upsilon, parse_sd("q=1: +")) == Rat(1, 2));
  CHECK(spectrum_class_ratio(1, parse_sd("q=1: + +"), parse_sd("q=1: +")) == 1);

  // The extensions of fixed length partition the orbit.
  for (int Q = 1; Q <= 2; ++Q) {
    for (int N = 1; N <= 3; ++N) {
      StateDescription big = sd_from_rank(Q, N, sd_space_size(Q, N) / 3);
      for (int n = 0; n <= N; ++n) {
        Rat sum(0);
        for (std::uint64_t rank = 0; rank < sd_space_size(Q, n); ++rank) {
          Rat r = spectrum_class_ratio(Q, big, sd_from_rank(Q, n, rank));
          CHECK(r >= 0);
          CHECK(r <= 1);
          sum += r;
        }
        CHECK(sum == 1);
      }
    }
  }
}
