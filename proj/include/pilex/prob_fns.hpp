#ifndef PILEX_PROB_FNS_HPP
#define PILEX_PROB_FNS_HPP

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pilex/lang.hpp"
#include "pilex/perms.hpp"
#include "pilex/rational.hpp"
#include "pilex/spectra.hpp"

namespace pilex {

// A point on the simplex D_{2^q}: exact nonnegative weights over the atoms
// of L_q summing to exactly 1.
class SimplexVector {
 public:
  SimplexVector(int q, std::vector<Rat> components);

  int q() const { return q_; }
  const Rat& component(int atom_index) const;  // 1-based
  const std::vector<Rat>& components() const { return x_; }

  // (sigma . x)_i = x_{sigma^{-1}(i)}.
  SimplexVector permuted(const AtomPermutation& sigma) const;

  friend bool operator==(const SimplexVector&, const SimplexVector&) = default;

 private:
  int q_;
  std::vector<Rat> x_;
};

// Finitely supported measure on [0,1] with rational points and weights.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<Rat> points, std::vector<Rat> weights);
  static DiscreteMeasure point_mass(const Rat& point);

  std::size_t size() const { return points_.size(); }
  const std::vector<Rat>& points() const { return points_; }
  const std::vector<Rat>& weights() const { return weights_; }

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  std::vector<Rat> points_, weights_;
};

// integral of x^a (1-x)^b d m(x)
Rat moment(const DiscreteMeasure& m, int a, int b);

// Parameters <p, tau> for the v and v_n families: p_0..p_N summing to 1,
// point values tau_1..tau_N in [0,1], and the color-0 measure tau_0.
// Construction canonicalizes to p_1 >= p_2 >= ... by jointly reordering the
// (p_i, tau_i) pairs; evaluation is invariant under that reordering.
class PTParams {
 public:
  PTParams(std::vector<Rat> p, std::vector<Rat> tau, DiscreteMeasure tau0);

  int color_count() const { return static_cast<int>(p_.size()) - 1; }  // N
  const Rat& p(int color) const;    // color in 0..N
  const Rat& tau(int color) const;  // color in 1..N
  const DiscreteMeasure& tau0() const { return tau0_; }

  friend bool operator==(const PTParams&, const PTParams&) = default;

 private:
  std::vector<Rat> p_;    // p_0..p_N
  std::vector<Rat> tau_;  // tau_1..tau_N
  DiscreteMeasure tau0_;
};

// An evaluable probability function (or signed combination of them).
class ProbFn {
 public:
  enum class Kind { Wx, Vpt, Vptn, Zx, Mixture, Signed };

  struct Component;  // { Rat weight; ProbFn fn; }, defined below

  static ProbFn wx(SimplexVector x);
  static ProbFn vpt(PTParams params);
  static ProbFn vptn(PTParams params, int n);
  static ProbFn zx(SimplexVector x);
  // Mixture weights must be nonnegative and sum to exactly 1.
  static ProbFn mixture(std::vector<Component> components);
  // Same shape without the normalization check, for feeding deliberately
  // broken inputs to the principle checkers.
  static ProbFn mixture_unchecked(std::vector<Component> components);
  // Coefficients of any sign summing to exactly 1.
  static ProbFn signed_combination(std::vector<Component> components);

  Kind kind() const;
  const SimplexVector& simplex() const;
  const PTParams& pt_params() const;
  int vptn_n() const;
  const std::vector<Component>& components() const;

  // vpt/vptn families (and their mixtures) have q-independent parameters and
  // can be evaluated in any unary language; wx/zx are tied to one q.
  bool is_language_family() const;
  std::optional<int> fixed_q() const;

 private:
  struct Node;
  explicit ProbFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ProbFn::Component {
  Rat weight;
  ProbFn fn;
};

// ── Evaluation ──────────────────────────────────────────────────────────────

Rat wx_eval(const SimplexVector& x, const StateDescription& sd);

// One term of the v sum: the product over constants prescribed by the color
// sequence (colors[i] in 0..N), zero when a repeated nonzero color carries a
// different atom.
Rat jpt_eval(const PTParams& params, const StateDescription& sd, std::span<const int> colors);

Rat vpt_eval(const PTParams& params, const StateDescription& sd);

Rat vptn_eval(const PTParams& params, int n, const StateDescription& sd,
              const Guards& guards = default_guards());

Rat zx_eval(const SimplexVector& x, const StateDescription& sd,
            const Guards& guards = default_guards());

// Generic evaluator for any ProbFn (weighted sums for mixtures and signed
// combinations; intermediate signed values may leave [0,1]).
Rat eval_sd(const ProbFn& fn, const StateDescription& sd,
            const Guards& guards = default_guards());

// Sum of eval_sd over the state descriptions on the mentioned-constant
// prefix that model the sentence.
Rat eval_qf(const ProbFn& fn, const QFSentence& s, const Guards& guards = default_guards());

// Value of `sd` under the restriction of `fn`'s L_{via_q} member to
// L_{sd.q()}: the sum over all L_{via_q} state descriptions whose atom-wise
// restriction to the first sd.q() predicates equals sd. Requires a
// language-family fn.
Rat restricted_eval(const ProbFn& fn, int via_q, const StateDescription& sd,
                    const Guards& guards = default_guards());

// Atom of L_Q restricted to the first q predicates (q <= Q).
int restrict_atom(int Q, int atom_index, int q);

}  // namespace pilex

#endif
