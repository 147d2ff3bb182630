#include <doctest.h>

#include "oracles.hpp"
#include "pilex/prob_fns.hpp"

using namespace pilex;

namespace {

PTParams single_color_params(const Rat& tau1) {
  return PTParams({Rat(0), Rat(1)}, {tau1}, DiscreteMeasure::point_mass(Rat(1, 2)));
}

SimplexVector example_b() {
  std::vector<Rat> b;
  for (int numerator : {1, 2, 4, 5, 2, 3, 1, 1}) b.emplace_back(numerator, 19);
  return SimplexVector(3, b);
}

}  // namespace

TEST_CASE("moments of discrete measures") {
  CHECK(moment(DiscreteMeasure::point_mass(Rat(1, 2)), 1, 1) == Rat(1, 4));
  DiscreteMeasure endpoints({Rat(0), Rat(1)}, {Rat(1, 2), Rat(1, 2)});
  CHECK(moment(endpoints, 1, 1) == 0);
  CHECK(moment(endpoints, 2, 3) == 0);
  CHECK(moment(endpoints, 0, 0) == 1);
  CHECK(moment(DiscreteMeasure::point_mass(Rat(1, 3)), 2, 1) == Rat(2, 27));
  CHECK_THROWS_AS(DiscreteMeasure({Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(1, 2)}), BoundsError);
  CHECK_THROWS_AS(DiscreteMeasure({Rat(1, 2)}, {Rat(2, 3)}), BoundsError);
}

TEST_CASE("product functions") {
  SimplexVector b = example_b();
  StateDescription theta = parse_sd("q=3: @2 @5 @7 @7 @4");
  // Identity monomial b2 b4 b5 b7^2 = (2*5*2*1*1)/19^5.
  CHECK(wx_eval(b, theta) == Rat(20, 2476099));
  CHECK(wx_eval(b, parse_sd("q=3:")) == 1);

  SimplexVector x(2, {Rat(1, 2), Rat(1, 4), Rat(1, 8), Rat(1, 8)});
  Rat sum(0);
  for (int atom = 1; atom <= 4; ++atom) sum += wx_eval(x, StateDescription(2, {atom}));
  CHECK(sum == 1);
  CHECK_THROWS_AS(wx_eval(x, theta), BoundsError);
  CHECK_THROWS_AS(SimplexVector(2, {Rat(1), Rat(1, 2), Rat(-1, 2), Rat(0)}), BoundsError);
}

TEST_CASE("single-term color products") {
  PTParams params = single_color_params(Rat(1, 3));
  StateDescription one = parse_sd("q=1: +");
  std::vector<int> c1{1};
  CHECK(jpt_eval(params, one, c1) == Rat(2, 3));

  StateDescription mixed = parse_sd("q=1: + -");
  std::vector<int> c11{1, 1};
  CHECK(jpt_eval(params, mixed, c11) == 0);

  StateDescription same = parse_sd("q=1: + +");
  CHECK(jpt_eval(params, same, c11) == Rat(2, 3));

  std::vector<int> bad{2};
  CHECK_THROWS_AS(jpt_eval(params, one, bad), BoundsError);
}

TEST_CASE("v sums over color sequences") {
  PTParams params = single_color_params(Rat(1, 3));
  CHECK(vpt_eval(params, parse_sd("q=1: + +")) == Rat(2, 3));
  CHECK(vpt_eval(params, parse_sd("q=1:")) == 1);

  // One fresh color drawn from the point mass at 1/2 in L_2.
  PTParams fresh({Rat(1)}, {}, DiscreteMeasure::point_mass(Rat(1, 2)));
  CHECK(vpt_eval(fresh, parse_sd("q=2: ++")) == Rat(1, 4));

  Rat total(0);
  for (std::uint64_t rank = 0; rank < sd_space_size(2, 2); ++rank) {
    total += vpt_eval(fresh, sd_from_rank(2, 2, rank));
  }
  CHECK(total == 1);
}

TEST_CASE("v against its literal color-sequence expansion") {
  PTParams params({Rat(1, 4), Rat(1, 2), Rat(1, 4)}, {Rat(1, 3), Rat(2, 5)},
                  DiscreteMeasure({Rat(1, 5), Rat(4, 5)}, {Rat(1, 2), Rat(1, 2)}));
  for (int q = 1; q <= 2; ++q) {
    for (int n = 0; n <= 3; ++n) {
      for (std::uint64_t rank = 0; rank < sd_space_size(q, n); ++rank) {
        StateDescription sd = sd_from_rank(q, n, rank);
        // Oracle: enumerate all color sequences in {0,1,2}^n literally.
        Rat expected(0);
        std::vector<int> colors(static_cast<std::size_t>(n), 0);
        while (true) {
          expected += jpt_eval(params, sd, colors);
          int pos = n - 1;
          while (pos >= 0 && colors[static_cast<std::size_t>(pos)] == 2) {
            colors[static_cast<std::size_t>(pos)] = 0;
            --pos;
          }
          if (pos < 0) break;
          ++colors[static_cast<std::size_t>(pos)];
        }
        REQUIRE(vpt_eval(params, sd) == expected);
      }
    }
  }
}

TEST_CASE("finitary form of v") {
  // Two colors carrying all the mass: agrees with v on every description.
  PTParams tail_zero({Rat(0), Rat(1, 2), Rat(1, 2)}, {Rat(1, 3), Rat(1, 5)},
                     DiscreteMeasure::point_mass(Rat(1, 2)));
  CHECK(vptn_eval(tail_zero, 2, parse_sd("q=1: +")) == Rat(11, 15));
  for (int n = 0; n <= 2; ++n) {
    for (std::uint64_t rank = 0; rank < sd_space_size(1, n); ++rank) {
      StateDescription sd = sd_from_rank(1, n, rank);
      CHECK(vptn_eval(tail_zero, 2, sd) == vpt_eval(tail_zero, sd));
    }
  }

  // Remainder mass 1/2 on the point measure at 1/2.
  PTParams with_remainder({Rat(1, 2), Rat(1, 2)}, {Rat(1, 3)},
                          DiscreteMeasure::point_mass(Rat(1, 2)));
  CHECK(vptn_eval(with_remainder, 1, parse_sd("q=1: +")) == Rat(7, 12));
  CHECK(vptn_eval(with_remainder, 1, parse_sd("q=1:")) == 1);
}

TEST_CASE("SPx closures of product functions") {
  SimplexVector x(2, {Rat(1, 2), Rat(1, 4), Rat(1, 8), Rat(1, 8)});
  CHECK(zx_eval(x, parse_sd("q=2: +-")) == Rat(3, 16));
  CHECK(zx_eval(x, parse_sd("q=2: ++")) == Rat(1, 2));
  Rat both = (Rat(1, 4) * Rat(1, 8) + Rat(1, 8) * Rat(1, 8)) / 2;
  CHECK(zx_eval(x, parse_sd("q=2: @2 @4")) == both);
  CHECK(zx_eval(x, parse_sd("q=2: @3 @4")) == both);
}

TEST_CASE("the symmetrized product function of the worked example") {
  SimplexVector b = example_b();
  std::vector<ProbFn::Component> components;
  for (const auto& p : all_pred_perms(3)) {
    components.push_back({Rat(1, 6), ProbFn::wx(b.permuted(induced_atom_perm(p)))});
  }
  ProbFn w = ProbFn::mixture(std::move(components));

  StateDescription theta = parse_sd("q=3: @2 @5 @7 @7 @4");
  StateDescription phi = parse_sd("q=3: @3 @5 @6 @6 @7");

  // Independent oracle: expand the six predicate permutations textually and
  // sum the monomials over the common denominator 19^5.
  auto oracle_value = [&](const StateDescription& sd) -> Rat {
    const std::vector<int> numerators{1, 2, 4, 5, 2, 3, 1, 1};
    Rat total(0);
    for (const auto& image : pilex_test::oracle_all_perms(3)) {
      Rat term(1);
      for (int i = 1; i <= sd.size(); ++i) {
        // (sigma.b)_h = b_{sigma^{-1}(h)}: find the preimage textually.
        int preimage = 0;
        for (int candidate = 1; candidate <= 8; ++candidate) {
          if (pilex_test::oracle_perm_atom(image, 3, candidate) == sd.atom_index(i)) {
            preimage = candidate;
            break;
          }
        }
        term *= Rat(numerators[static_cast<std::size_t>(preimage) - 1], 19);
      }
      total += term;
    }
    return total / 6;
  };

  const Rat w_theta = eval_sd(w, theta);
  const Rat w_phi = eval_sd(w, phi);
  CHECK(w_theta == oracle_value(theta));
  CHECK(w_phi == oracle_value(phi));
  CHECK(w_theta == pilex_test::frac(1176, 6L * 2476099));
  CHECK(w_phi == pilex_test::frac(984, 6L * 2476099));
  CHECK(w_theta != w_phi);
  // The totals printed alongside the construction do not match its own
  // permutation expansion.
  CHECK(w_theta != pilex_test::frac(1094, 6L * 2476099));
  CHECK(w_phi != pilex_test::frac(1224, 6L * 2476099));
}

TEST_CASE("sentence evaluation by state-description expansion") {
  SimplexVector x(2, {Rat(1, 2), Rat(1, 4), Rat(1, 8), Rat(1, 8)});
  ProbFn wx = ProbFn::wx(x);
  CHECK(eval_qf(wx, parse_qf("P1(a1) | ~P1(a1)")) == 1);
  CHECK(eval_qf(wx, parse_qf("P1(a1)")) == Rat(3, 4));  // x1 + x2

  PTParams fresh({Rat(1)}, {}, DiscreteMeasure::point_mass(Rat(1, 2)));
  ProbFn v = ProbFn::vpt(fresh);
  CHECK(eval_qf(v, parse_qf("P1(a1) & P2(a2)")) == Rat(1, 4));
}

TEST_CASE("restriction to a smaller language") {
  PTParams params = single_color_params(Rat(1, 3));
  ProbFn v = ProbFn::vpt(params);
  StateDescription p_atom = parse_sd("q=1: +");
  CHECK(eval_sd(v, p_atom) == Rat(2, 3));
  // Both extensions of the positive L_1 atom into L_2, summed: 4/9 + 2/9.
  CHECK(restrict_atom(2, 1, 1) == 1);
  CHECK(restrict_atom(2, 2, 1) == 1);
  CHECK(restrict_atom(2, 3, 1) == 2);
  CHECK(eval_sd(v, StateDescription(2, {1})) == Rat(4, 9));
  CHECK(eval_sd(v, StateDescription(2, {2})) == Rat(2, 9));
  CHECK(restricted_eval(v, 2, p_atom) == Rat(2, 3));
  CHECK(restricted_eval(v, 2, parse_sd("q=1:")) == 1);
  CHECK_THROWS_AS(restricted_eval(ProbFn::wx(SimplexVector(1, {Rat(1, 2), Rat(1, 2)})), 2,
                                  p_atom),
                  FamilyError);
}

TEST_CASE("restriction is coherent across a two-language gap") {
  PTParams colored({Rat(1, 4), Rat(1, 2), Rat(1, 4)}, {Rat(1, 3), Rat(2, 5)},
                   DiscreteMeasure({Rat(1, 5), Rat(4, 5)}, {Rat(1, 2), Rat(1, 2)}));
  ProbFn v = ProbFn::vpt(colored);
  for (int n = 0; n <= 2; ++n) {
    for (std::uint64_t rank = 0; rank < sd_space_size(1, n); ++rank) {
      StateDescription sd = sd_from_rank(1, n, rank);
      CHECK(restricted_eval(v, 3, sd) == eval_sd(v, sd));
    }
  }
}

TEST_CASE("sentences with unmentioned leading constants marginalize away") {
  SimplexVector x(2, {Rat(1, 2), Rat(1, 4), Rat(1, 8), Rat(1, 8)});
  ProbFn fn = ProbFn::wx(x);
  CHECK(eval_qf(fn, parse_qf("P1(a2)")) == eval_qf(fn, parse_qf("P1(a1)")));
  CHECK(eval_qf(fn, parse_qf("P1(a3)")) == Rat(3, 4));
}

TEST_CASE("normalization, marginalization and constant exchangeability") {
  PTParams colored({Rat(1, 4), Rat(1, 2), Rat(1, 4)}, {Rat(1, 3), Rat(2, 5)},
                   DiscreteMeasure({Rat(1, 5), Rat(4, 5)}, {Rat(1, 2), Rat(1, 2)}));
  SimplexVector x2(2, {Rat(1, 2), Rat(1, 4), Rat(1, 8), Rat(1, 8)});
  SimplexVector x3(3, {Rat(1, 4), Rat(1, 8), Rat(1, 8), Rat(1, 8), Rat(1, 16), Rat(1, 16),
                       Rat(1, 8), Rat(1, 8)});
  std::vector<std::pair<int, ProbFn>> fns{{2, ProbFn::vpt(colored)},
                                          {2, ProbFn::wx(x2)},
                                          {2, ProbFn::zx(x2)},
                                          {2, ProbFn::vptn(colored, 2)},
                                          {3, ProbFn::vpt(colored)},
                                          {3, ProbFn::wx(x3)},
                                          {3, ProbFn::zx(x3)}};
  for (const auto& [q, fn] : fns) {
    const int atoms_q = 1 << q;
    for (int n = 0; n <= 3; ++n) {
      Rat total(0);
      for (std::uint64_t rank = 0; rank < sd_space_size(q, n); ++rank) {
        StateDescription sd = sd_from_rank(q, n, rank);
        const Rat value = eval_sd(fn, sd);
        total += value;
        if (n < 3) {
          Rat extended(0);
          for (int atom = 1; atom <= atoms_q; ++atom) extended += eval_sd(fn, sd.extended(atom));
          CHECK(extended == value);
        }
        for (const auto& rho : all_const_perms(n)) {
          CHECK(eval_sd(fn, apply(sd, rho)) == value);
        }
      }
      CHECK(total == 1);
    }
  }
}

TEST_CASE("closures and color families assign equal values across a spectrum cell") {
  PTParams colored({Rat(1, 4), Rat(1, 2), Rat(1, 4)}, {Rat(1, 3), Rat(2, 5)},
                   DiscreteMeasure({Rat(1, 5), Rat(4, 5)}, {Rat(1, 2), Rat(1, 2)}));
  SimplexVector x3(3, {Rat(1, 4), Rat(1, 8), Rat(1, 8), Rat(1, 8), Rat(1, 16), Rat(1, 16),
                       Rat(1, 8), Rat(1, 8)});
  std::vector<std::pair<int, ProbFn>> fns{{3, ProbFn::zx(x3)},
                                          {3, ProbFn::vpt(colored)},
                                          {2, ProbFn::vptn(colored, 2)}};
  for (const auto& [q, fn] : fns) {
    for (int n = 1; n <= 3; ++n) {
      std::map<PSpectrum, Rat> cell_value;
      for (std::uint64_t rank = 0; rank < sd_space_size(q, n); ++rank) {
        StateDescription sd = sd_from_rank(q, n, rank);
        auto [it, inserted] = cell_value.try_emplace(pspectrum(sd), eval_sd(fn, sd));
        if (!inserted) CHECK(eval_sd(fn, sd) == it->second);
      }
    }
  }
}

TEST_CASE("singleton mixtures evaluate to the underlying function") {
  SimplexVector x(2, {Rat(1, 2), Rat(1, 4), Rat(1, 8), Rat(1, 8)});
  ProbFn single = ProbFn::mixture({{Rat(1), ProbFn::wx(x)}});
  for (std::uint64_t rank = 0; rank < sd_space_size(2, 2); ++rank) {
    StateDescription sd = sd_from_rank(2, 2, rank);
    CHECK(eval_sd(single, sd) == wx_eval(x, sd));
  }
}

TEST_CASE("v is invariant under joint reordering of the color parameters") {
  PTParams order_a({Rat(0), Rat(1, 3), Rat(2, 3)}, {Rat(1, 7), Rat(3, 7)},
                   DiscreteMeasure::point_mass(Rat(1, 2)));
  PTParams order_b({Rat(0), Rat(2, 3), Rat(1, 3)}, {Rat(3, 7), Rat(1, 7)},
                   DiscreteMeasure::point_mass(Rat(1, 2)));
  CHECK(order_a == order_b);  // canonical form sorts by descending p
  for (std::uint64_t rank = 0; rank < sd_space_size(2, 2); ++rank) {
    StateDescription sd = sd_from_rank(2, 2, rank);
    CHECK(vpt_eval(order_a, sd) == vpt_eval(order_b, sd));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(PTParams({Rat(1, 2)}, {}, DiscreteMeasure::point_mass(Rat(1, 2))),
                  BoundsError);
  CHECK_THROWS_AS(PTParams({Rat(1), Rat(1)}, {Rat(1, 2)},
                           DiscreteMeasure::point_mass(Rat(1, 2))),
                  BoundsError);
  CHECK_THROWS_AS(PTParams({Rat(1, 2), Rat(1, 2)}, {Rat(3, 2)},
                           DiscreteMeasure::point_mass(Rat(1, 2))),
                  BoundsError);
  CHECK_THROWS_AS(ProbFn::mixture({{Rat(1, 2), ProbFn::vpt(single_color_params(Rat(1, 3)))}}),
                  BoundsError);
  CHECK_NOTHROW(
      ProbFn::mixture_unchecked({{Rat(1, 2), ProbFn::vpt(single_color_params(Rat(1, 3)))}}));
  CHECK_THROWS_AS(ProbFn::signed_combination(
                      {{Rat(2), ProbFn::vpt(single_color_params(Rat(1, 3)))},
                       {Rat(-2), ProbFn::vpt(single_color_params(Rat(1, 5)))}}),
                  BoundsError);
}
