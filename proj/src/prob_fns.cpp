#include "pilex/prob_fns.hpp"

#include <algorithm>
#include <numeric>

namespace pilex {

SimplexVector::SimplexVector(int q, std::vector<Rat> components)
    : q_(q), x_(std::move(components)) {
  if (q < 1) throw BoundsError("simplex vector needs q >= 1");
  if (x_.size() != (std::size_t{1} << q)) {
    throw BoundsError("simplex vector needs 2^q components, got " + std::to_string(x_.size()));
  }
  Rat sum(0);
  for (const Rat& v : x_) {
    if (v < 0) throw BoundsError("simplex component is negative: " + format_rat(v));
    sum += v;
  }
  if (sum != 1) throw BoundsError("simplex components sum to " + format_rat(sum) + ", not 1");
}

const Rat& SimplexVector::component(int atom_index) const {
  if (atom_index < 1 || atom_index > (1 << q_)) throw BoundsError("atom index out of range");
  return x_[static_cast<std::size_t>(atom_index) - 1];
}

SimplexVector SimplexVector::permuted(const AtomPermutation& sigma) const {
  if (sigma.q != q_) throw BoundsError("permutation language mismatch");
  std::vector<Rat> y(x_.size());
  for (int i = 1; i <= (1 << q_); ++i) {
    y[static_cast<std::size_t>(sigma(i)) - 1] = x_[static_cast<std::size_t>(i) - 1];
  }
  return SimplexVector(q_, std::move(y));
}

DiscreteMeasure::DiscreteMeasure(std::vector<Rat> points, std::vector<Rat> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.size() != weights_.size()) {
    throw BoundsError("measure points and weights differ in length");
  }
  if (points_.empty()) throw BoundsError("measure needs at least one point");
  Rat sum(0);
  for (const Rat& w : weights_) {
    if (w < 0) throw BoundsError("measure weight is negative");
    sum += w;
  }
  if (sum != 1) throw BoundsError("measure weights sum to " + format_rat(sum) + ", not 1");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] < 0 || points_[i] > 1) throw BoundsError("measure point outside [0,1]");
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (points_[i] == points_[j]) throw BoundsError("measure points must be distinct");
    }
  }
}

DiscreteMeasure DiscreteMeasure::point_mass(const Rat& point) {
  return DiscreteMeasure({point}, {Rat(1)});
}

Rat moment(const DiscreteMeasure& m, int a, int b) {
  if (a < 0 || b < 0) throw BoundsError("moment exponents must be nonnegative");
  Rat sum(0);
  for (std::size_t k = 0; k < m.size(); ++k) {
    Rat term = m.weights()[k];
    const Rat& p = m.points()[k];
    Rat complement = 1 - p;
    for (int i = 0; i < a; ++i) term *= p;
    for (int i = 0; i < b; ++i) term *= complement;
    sum += term;
  }
  return sum;
}

PTParams::PTParams(std::vector<Rat> p, std::vector<Rat> tau, DiscreteMeasure tau0)
    : p_(std::move(p)), tau_(std::move(tau)), tau0_(std::move(tau0)) {
  if (p_.empty()) throw BoundsError("p must supply at least p_0");
  if (tau_.size() + 1 != p_.size()) {
    throw BoundsError("need one tau per nonzero color: |tau| = |p| - 1");
  }
  Rat sum(0);
  for (const Rat& v : p_) {
    if (v < 0) throw BoundsError("p entries must be nonnegative");
    sum += v;
  }
  if (sum != 1) throw BoundsError("p entries sum to " + format_rat(sum) + ", not 1");
  for (const Rat& t : tau_) {
    if (t < 0 || t > 1) throw BoundsError("tau values must lie in [0,1]");
  }
  // Canonical form: p_1 >= p_2 >= ..., reordering (p_i, tau_i) jointly.
  std::vector<std::size_t> order(tau_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p_[a + 1] > p_[b + 1]; });
  std::vector<Rat> p_sorted{p_[0]}, tau_sorted;
  p_sorted.reserve(p_.size());
  tau_sorted.reserve(tau_.size());
  for (std::size_t i : order) {
    p_sorted.push_back(p_[i + 1]);
    tau_sorted.push_back(tau_[i]);
  }
  p_ = std::move(p_sorted);
  tau_ = std::move(tau_sorted);
}

const Rat& PTParams::p(int color) const {
  if (color < 0 || color > color_count()) throw BoundsError("color out of range");
  return p_[static_cast<std::size_t>(color)];
}

const Rat& PTParams::tau(int color) const {
  if (color < 1 || color > color_count()) throw BoundsError("color out of range");
  return tau_[static_cast<std::size_t>(color) - 1];
}

// ── ProbFn ──────────────────────────────────────────────────────────────────

struct ProbFn::Node {
  Kind kind;
  std::optional<SimplexVector> simplex;
  std::optional<PTParams> params;
  int vptn_n = 0;
  std::vector<Component> components;
};

ProbFn::Kind ProbFn::kind() const { return node_->kind; }

ProbFn ProbFn::wx(SimplexVector x) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Wx;
  node->simplex = std::move(x);
  return ProbFn(std::move(node));
}

ProbFn ProbFn::vpt(PTParams params) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Vpt;
  node->params = std::move(params);
  return ProbFn(std::move(node));
}

ProbFn ProbFn::vptn(PTParams params, int n) {
  if (n < 1) throw BoundsError("vptn needs n >= 1");
  if (params.color_count() < n) throw BoundsError("vptn needs p_1..p_n and tau_1..tau_n");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Vptn;
  node->params = std::move(params);
  node->vptn_n = n;
  return ProbFn(std::move(node));
}

ProbFn ProbFn::zx(SimplexVector x) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Zx;
  node->simplex = std::move(x);
  return ProbFn(std::move(node));
}

namespace {

void check_components_nonempty(const std::vector<ProbFn::Component>& components) {
  if (components.empty()) throw BoundsError("empty combination");
}

}  // namespace

ProbFn ProbFn::mixture(std::vector<Component> components) {
  check_components_nonempty(components);
  Rat sum(0);
  for (const auto& c : components) {
    if (c.weight < 0) throw BoundsError("mixture weight is negative");
    sum += c.weight;
  }
  if (sum != 1) throw BoundsError("mixture weights sum to " + format_rat(sum) + ", not 1");
  return mixture_unchecked(std::move(components));
}

ProbFn ProbFn::mixture_unchecked(std::vector<Component> components) {
  check_components_nonempty(components);
  auto node = std::make_shared<Node>();
  node->kind = Kind::Mixture;
  node->components = std::move(components);
  return ProbFn(std::move(node));
}

ProbFn ProbFn::signed_combination(std::vector<Component> components) {
  check_components_nonempty(components);
  Rat sum(0);
  for (const auto& c : components) sum += c.weight;
  if (sum != 1) {
    throw BoundsError("signed coefficients sum to " + format_rat(sum) + ", not 1");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Signed;
  node->components = std::move(components);
  return ProbFn(std::move(node));
}

const SimplexVector& ProbFn::simplex() const {
  if (!node_->simplex) throw BoundsError("function has no simplex parameter");
  return *node_->simplex;
}

const PTParams& ProbFn::pt_params() const {
  if (!node_->params) throw BoundsError("function has no <p,tau> parameters");
  return *node_->params;
}

int ProbFn::vptn_n() const {
  if (node_->kind != Kind::Vptn) throw BoundsError("not a vptn function");
  return node_->vptn_n;
}

const std::vector<ProbFn::Component>& ProbFn::components() const { return node_->components; }

bool ProbFn::is_language_family() const {
  switch (kind()) {
    case Kind::Vpt:
    case Kind::Vptn:
      return true;
    case Kind::Wx:
    case Kind::Zx:
      return false;
    case Kind::Mixture:
    case Kind::Signed:
      return std::all_of(components().begin(), components().end(),
                         [](const Component& c) { return c.fn.is_language_family(); });
  }
  throw InternalError("unreachable function kind");
}

std::optional<int> ProbFn::fixed_q() const {
  switch (kind()) {
    case Kind::Wx:
    case Kind::Zx:
      return simplex().q();
    case Kind::Vpt:
    case Kind::Vptn:
      return std::nullopt;
    case Kind::Mixture:
    case Kind::Signed: {
      std::optional<int> q;
      for (const auto& c : components()) {
        auto sub = c.fn.fixed_q();
        if (!sub) continue;
        if (q && *q != *sub) throw BoundsError("mixture components disagree on q");
        q = sub;
      }
      return q;
    }
  }
  throw InternalError("unreachable function kind");
}

// ── Evaluation ──────────────────────────────────────────────────────────────

Rat wx_eval(const SimplexVector& x, const StateDescription& sd) {
  if (x.q() != sd.q()) throw BoundsError("wx dimension mismatch");
  Rat product(1);
  for (int i = 1; i <= sd.size(); ++i) product *= x.component(sd.atom_index(i));
  return product;
}

namespace {

// b_{h,c} table indexed by [gamma(h)][c]: tau_c^gamma (1-tau_c)^(q-gamma) for
// c > 0 and the tau_0 moment for c = 0.
std::vector<std::vector<Rat>> color_profile_table(const PTParams& params, int q) {
  const int N = params.color_count();
  std::vector<std::vector<Rat>> b(static_cast<std::size_t>(q) + 1,
                                  std::vector<Rat>(static_cast<std::size_t>(N) + 1));
  for (int g = 0; g <= q; ++g) {
    b[static_cast<std::size_t>(g)][0] = moment(params.tau0(), g, q - g);
    for (int c = 1; c <= N; ++c) {
      Rat v(1);
      const Rat& t = params.tau(c);
      Rat complement = 1 - t;
      for (int i = 0; i < g; ++i) v *= t;
      for (int i = 0; i < q - g; ++i) v *= complement;
      b[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)] = v;
    }
  }
  return b;
}

}  // namespace

Rat jpt_eval(const PTParams& params, const StateDescription& sd, std::span<const int> colors) {
  if (static_cast<int>(colors.size()) != sd.size()) {
    throw BoundsError("color sequence length mismatch");
  }
  const int N = params.color_count();
  for (int c : colors) {
    if (c < 0 || c > N) throw BoundsError("color out of range");
  }
  const auto b = color_profile_table(params, sd.q());
  // locked[c] = atom carried by the first occurrence of nonzero color c.
  std::vector<int> locked(static_cast<std::size_t>(N) + 1, 0);
  Rat product(1);
  for (int m = 1; m <= sd.size(); ++m) {
    const int c = colors[static_cast<std::size_t>(m) - 1];
    const int h = sd.atom_index(m);
    const int g = gamma(sd.q(), h);
    if (c == 0) {
      product *= params.p(0) * b[static_cast<std::size_t>(g)][0];
    } else if (locked[static_cast<std::size_t>(c)] == 0) {
      locked[static_cast<std::size_t>(c)] = h;
      product *= params.p(c) * b[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)];
    } else if (locked[static_cast<std::size_t>(c)] == h) {
      product *= params.p(c);
    } else {
      return Rat(0);
    }
    if (product == 0) return Rat(0);
  }
  return product;
}

Rat vpt_eval(const PTParams& params, const StateDescription& sd) {
  if (sd.empty()) return Rat(1);
  const int q = sd.q();
  const int N = params.color_count();
  const auto b = color_profile_table(params, q);
  std::vector<int> locked(static_cast<std::size_t>(N) + 1, 0);
  Rat total(0);
  // Depth-first sum over color sequences; colors with p_c = 0 and repeated
  // colors on mismatched atoms contribute nothing and are pruned.
  auto rec = [&](auto&& self, int m, const Rat& acc) -> void {
    if (m > sd.size()) {
      total += acc;
      return;
    }
    const int h = sd.atom_index(m);
    const int g = gamma(q, h);
    if (params.p(0) != 0) {
      Rat next = acc * params.p(0) * b[static_cast<std::size_t>(g)][0];
      if (next != 0) self(self, m + 1, next);
    }
    for (int c = 1; c <= N; ++c) {
      if (params.p(c) == 0) continue;
      int& lock = locked[static_cast<std::size_t>(c)];
      if (lock == 0) {
        Rat next = acc * params.p(c) * b[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)];
        if (next != 0) {
          lock = h;
          self(self, m + 1, next);
          lock = 0;
        }
      } else if (lock == h) {
        self(self, m + 1, acc * params.p(c));
      }
    }
  };
  rec(rec, 1, Rat(1));
  return total;
}

Rat vptn_eval(const PTParams& params, int n, const StateDescription& sd, const Guards& guards) {
  if (n < 1) throw BoundsError("vptn needs n >= 1");
  if (params.color_count() < n) throw BoundsError("vptn needs p_1..p_n and tau_1..tau_n");
  if (sd.empty()) return Rat(1);
  const int q = sd.q();
  const int A = 1 << q;
  // Guard the (2^q)^n color-function space.
  std::uint64_t space = 1;
  for (int i = 0; i < n; ++i) {
    space *= static_cast<std::uint64_t>(A);
    if (space > guards.max_enum) throw GuardError("vptn color-function space exceeds guard");
  }

  Rat remainder(1);
  for (int i = 1; i <= n; ++i) remainder -= params.p(i);

  // Base components f^q(s,0) * R, shared by every e.
  std::vector<Rat> base(static_cast<std::size_t>(A));
  for (int s = 1; s <= A; ++s) {
    base[static_cast<std::size_t>(s) - 1] = moment(params.tau0(), gamma(q, s), q - gamma(q, s)) * remainder;
  }
  // tau_r^g (1-tau_r)^(q-g) per position r and level g.
  std::vector<std::vector<Rat>> pos_factor(static_cast<std::size_t>(n),
                                           std::vector<Rat>(static_cast<std::size_t>(q) + 1));
  for (int r = 1; r <= n; ++r) {
    const Rat& t = params.tau(r);
    Rat complement = 1 - t;
    for (int g = 0; g <= q; ++g) {
      Rat v(1);
      for (int i = 0; i < g; ++i) v *= t;
      for (int i = 0; i < q - g; ++i) v *= complement;
      pos_factor[static_cast<std::size_t>(r) - 1][static_cast<std::size_t>(g)] = v;
    }
  }

  Rat total(0);
  // Odometer over e with x = e(p) kept incrementally up to date; e starts as
  // the constant-1 function, so all of p_1..p_n sits on the first component.
  std::vector<int> e(static_cast<std::size_t>(n), 1);
  std::vector<Rat> x = base;
  for (int i = 1; i <= n; ++i) x[0] += params.p(i);
  while (true) {
    Rat factor(1);
    for (int r = 1; r <= n; ++r) {
      int g = gamma(q, e[static_cast<std::size_t>(r) - 1]);
      factor *= pos_factor[static_cast<std::size_t>(r) - 1][static_cast<std::size_t>(g)];
    }
    if (factor != 0) {
      Rat w(1);
      for (int i = 1; i <= sd.size(); ++i) {
        w *= x[static_cast<std::size_t>(sd.atom_index(i)) - 1];
        if (w == 0) break;
      }
      total += factor * w;
    }
    // Odometer step, keeping x = e(p) incrementally up to date.
    int pos = n - 1;
    while (pos >= 0) {
      x[static_cast<std::size_t>(e[static_cast<std::size_t>(pos)]) - 1] -= params.p(pos + 1);
      if (e[static_cast<std::size_t>(pos)] < A) {
        ++e[static_cast<std::size_t>(pos)];
        x[static_cast<std::size_t>(e[static_cast<std::size_t>(pos)]) - 1] += params.p(pos + 1);
        break;
      }
      e[static_cast<std::size_t>(pos)] = 1;
      x[0] += params.p(pos + 1);
      --pos;
    }
    if (pos < 0) break;
  }
  return total;
}

Rat zx_eval(const SimplexVector& x, const StateDescription& sd, const Guards& guards) {
  if (x.q() != sd.q()) throw BoundsError("zx dimension mismatch");
  const auto group = spec_perm_group(x.q(), guards);
  Rat total(0);
  for (const auto& sigma : group) total += wx_eval(x.permuted(sigma), sd);
  Rat avg = total / Rat(static_cast<unsigned long>(group.size()));
  return avg;
}

Rat eval_sd(const ProbFn& fn, const StateDescription& sd, const Guards& guards) {
  switch (fn.kind()) {
    case ProbFn::Kind::Wx:
      return wx_eval(fn.simplex(), sd);
    case ProbFn::Kind::Vpt:
      return vpt_eval(fn.pt_params(), sd);
    case ProbFn::Kind::Vptn:
      return vptn_eval(fn.pt_params(), fn.vptn_n(), sd, guards);
    case ProbFn::Kind::Zx:
      return zx_eval(fn.simplex(), sd, guards);
    case ProbFn::Kind::Mixture:
    case ProbFn::Kind::Signed: {
      Rat total(0);
      for (const auto& c : fn.components()) total += c.weight * eval_sd(c.fn, sd, guards);
      return total;
    }
  }
  throw InternalError("unreachable function kind");
}

Rat eval_qf(const ProbFn& fn, const QFSentence& s, const Guards& guards) {
  int q = fn.fixed_q().value_or(0);
  const auto preds = s.mentioned_predicates();
  const int max_pred = preds.empty() ? 1 : *preds.rbegin();
  if (q == 0) q = max_pred;
  if (max_pred > q) throw BoundsError("sentence mentions P" + std::to_string(max_pred) +
                                      " beyond the evaluation language");
  const int n = s.max_constant();
  const std::uint64_t space = sd_space_size(q, n, guards);
  Rat total(0);
  for (std::uint64_t rank = 0; rank < space; ++rank) {
    StateDescription sd = sd_from_rank(q, n, rank);
    if (models(sd, s)) total += eval_sd(fn, sd, guards);
  }
  return total;
}

int restrict_atom(int Q, int atom_index, int q) {
  if (q < 1 || q > Q) throw BoundsError("restriction language out of range");
  if (atom_index < 1 || atom_index > (1 << Q)) throw BoundsError("atom index out of range");
  return ((atom_index - 1) >> (Q - q)) + 1;
}

Rat restricted_eval(const ProbFn& fn, int via_q, const StateDescription& sd,
                    const Guards& guards) {
  if (!fn.is_language_family()) {
    throw FamilyError("restriction requires a language-family function (vpt/vptn)");
  }
  const int q = sd.q();
  if (via_q < q) throw BoundsError("restriction target exceeds evaluation language");
  if (via_q > guards.max_q_syntax) throw GuardError("evaluation language exceeds guard");
  const int n = sd.size();
  if (n == 0) return eval_sd(fn, StateDescription(via_q, {}), guards);
  const int expansion = 1 << (via_q - q);
  std::uint64_t space = 1;
  for (int i = 0; i < n; ++i) {
    space *= static_cast<std::uint64_t>(expansion);
    if (space > guards.max_enum) throw GuardError("restriction expansion exceeds guard");
  }
  Rat total(0);
  std::vector<int> choice(static_cast<std::size_t>(n), 0);  // 0..expansion-1 per constant
  while (true) {
    std::vector<int> h(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      h[static_cast<std::size_t>(i)] =
          (sd.atom_index(i + 1) - 1) * expansion + choice[static_cast<std::size_t>(i)] + 1;
    }
    total += eval_sd(fn, StateDescription(via_q, std::move(h)), guards);
    int pos = n - 1;
    while (pos >= 0 && choice[static_cast<std::size_t>(pos)] == expansion - 1) {
      choice[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++choice[static_cast<std::size_t>(pos)];
  }
  return total;
}

}  // namespace pilex
