#include "pilex/decompose.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "pilex/spectra.hpp"

namespace pilex {

ColorFunction::ColorFunction(int q, std::vector<int> values)
    : q(q), values(std::move(values)) {
  if (q < 1) throw BoundsError("color function needs q >= 1");
  for (int v : this->values) {
    if (v < 1 || v > (1 << q)) throw BoundsError("color function value out of range");
  }
}

std::vector<int> ColorFunction::gamma_pattern() const {
  std::vector<int> pattern;
  pattern.reserve(values.size());
  for (int v : values) pattern.push_back(gamma(q, v));
  return pattern;
}

namespace {

std::uint64_t checked_power(std::uint64_t base, int exponent, std::uint64_t limit,
                            const char* what) {
  std::uint64_t value = 1;
  for (int i = 0; i < exponent; ++i) {
    if (value > limit / base) throw GuardError(std::string(what) + " exceeds guard");
    value *= base;
  }
  if (value > limit) throw GuardError(std::string(what) + " exceeds guard");
  return value;
}

}  // namespace

std::vector<OrbitClass> enumerate_classes(int q, int n, const Guards& guards) {
  if (n < 1) throw BoundsError("need n >= 1");
  if (q > 3 || (q == 3 && !guards.allow_q3_classes)) {
    throw GuardError("orbit-class enumeration guarded to q <= 2 (q = 3 behind its flag)");
  }
  const std::uint64_t A = std::uint64_t{1} << q;
  const std::uint64_t space =
      checked_power(A, n, guards.max_enum, "color-function space (2^q)^n");
  const auto group = spec_perm_group(q, guards);

  std::vector<bool> seen(space, false);
  std::vector<OrbitClass> classes;
  std::vector<int> e(static_cast<std::size_t>(n), 1);
  auto encode = [&](const std::vector<int>& f) {
    std::uint64_t rank = 0;
    for (int v : f) rank = rank * A + static_cast<std::uint64_t>(v - 1);
    return rank;
  };
  for (std::uint64_t rank = 0; rank < space; ++rank) {
    if (!seen[rank]) {
      // First encounter in ascending rank order makes e the lexicographic
      // least orbit member.
      std::uint64_t orbit_size = 0;
      std::vector<int> image(static_cast<std::size_t>(n));
      for (const auto& sigma : group) {
        for (int i = 0; i < n; ++i) image[static_cast<std::size_t>(i)] = sigma(e[static_cast<std::size_t>(i)]);
        const std::uint64_t image_rank = encode(image);
        if (!seen[image_rank]) {
          seen[image_rank] = true;
          ++orbit_size;
        }
      }
      classes.push_back({ColorFunction(q, e), orbit_size});
    }
    // Odometer step.
    for (int i = n - 1; i >= 0; --i) {
      if (e[static_cast<std::size_t>(i)] < static_cast<int>(A)) {
        ++e[static_cast<std::size_t>(i)];
        break;
      }
      e[static_cast<std::size_t>(i)] = 1;
    }
  }
  return classes;
}

SimplexVector e_of_p(const ColorFunction& e, std::span<const Rat> p,
                     const DiscreteMeasure& tau0) {
  if (static_cast<int>(p.size()) != e.n()) throw BoundsError("need one p_i per position");
  Rat sum(0);
  for (const Rat& v : p) {
    if (v < 0) throw BoundsError("p entries must be nonnegative");
    sum += v;
  }
  if (sum > 1) throw BoundsError("sum of p exceeds 1");
  const Rat remainder = 1 - sum;
  const int q = e.q;
  std::vector<Rat> x(std::size_t{1} << q, Rat(0));
  for (int s = 1; s <= (1 << q); ++s) {
    x[static_cast<std::size_t>(s) - 1] = moment(tau0, gamma(q, s), q - gamma(q, s)) * remainder;
  }
  for (int i = 1; i <= e.n(); ++i) {
    x[static_cast<std::size_t>(e(i)) - 1] += p[static_cast<std::size_t>(i) - 1];
  }
  return SimplexVector(q, std::move(x));
}

namespace {

Rat tau_product(const std::vector<Rat>& tau_row, const std::vector<int>& pattern, int q) {
  if (tau_row.size() != pattern.size()) throw BoundsError("tau row length mismatch");
  Rat value(1);
  for (std::size_t r = 0; r < pattern.size(); ++r) {
    const int g = pattern[r];
    if (g < 0 || g > q) throw BoundsError("pattern entry out of range");
    const Rat& t = tau_row[r];
    if (t < 0 || t > 1) throw BoundsError("tau outside [0,1]");
    Rat complement = 1 - t;
    for (int i = 0; i < g; ++i) value *= t;
    for (int i = 0; i < q - g; ++i) value *= complement;
    if (value == 0) return value;
  }
  return value;
}

}  // namespace

RatMatrix build_matrix(const std::vector<OrbitClass>& classes,
                       const std::vector<std::vector<Rat>>& taus, int q) {
  if (classes.empty()) throw BoundsError("empty class list");
  if (taus.size() != classes.size()) throw BoundsError("need one tau row per class");
  std::vector<std::vector<int>> patterns;
  patterns.reserve(classes.size());
  for (const auto& cls : classes) patterns.push_back(cls.representative.gamma_pattern());
  RatMatrix m(classes.size(), classes.size());
  for (std::size_t row = 0; row < classes.size(); ++row) {
    for (std::size_t col = 0; col < classes.size(); ++col) {
      m.at(row, col) = tau_product(taus[row], patterns[col], q);
    }
  }
  return m;
}

std::vector<std::vector<int>> gamma_patterns(int q, int n, const Guards& guards) {
  if (q < 1 || n < 1) throw BoundsError("need q >= 1 and n >= 1");
  const std::uint64_t count = checked_power(static_cast<std::uint64_t>(q) + 1, n,
                                            guards.max_enum, "pattern space (q+1)^n");
  std::vector<std::vector<int>> patterns;
  patterns.reserve(count);
  std::vector<int> pattern(static_cast<std::size_t>(n), 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    patterns.push_back(pattern);
    for (int pos = n - 1; pos >= 0; --pos) {
      if (pattern[static_cast<std::size_t>(pos)] < q) {
        ++pattern[static_cast<std::size_t>(pos)];
        break;
      }
      pattern[static_cast<std::size_t>(pos)] = 0;
    }
  }
  return patterns;
}

RatMatrix build_pattern_matrix(const std::vector<std::vector<int>>& patterns,
                               const std::vector<std::vector<Rat>>& taus, int q) {
  if (patterns.empty()) throw BoundsError("empty pattern list");
  if (taus.size() != patterns.size()) throw BoundsError("need one tau row per pattern");
  RatMatrix m(patterns.size(), patterns.size());
  for (std::size_t row = 0; row < patterns.size(); ++row) {
    for (std::size_t col = 0; col < patterns.size(); ++col) {
      m.at(row, col) = tau_product(taus[row], patterns[col], q);
    }
  }
  return m;
}

TauTable choose_regular_taus(const std::vector<std::vector<int>>& patterns, int q,
                             std::uint64_t seed, const Guards& guards) {
  if (patterns.empty()) throw BoundsError("empty pattern list");
  const std::size_t n = patterns.front().size();
  (void)guards;

  auto try_table = [&](std::vector<std::vector<Rat>> rows, int attempt,
                       TauTable* out) -> bool {
    RatMatrix m = build_pattern_matrix(patterns, rows, q);
    Rat det = determinant(m);
    if (det == 0) return false;
    out->rows = std::move(rows);
    out->det = std::move(det);
    out->seed = seed;
    out->attempts = attempt;
    return true;
  };

  TauTable table;

  // Deterministic first attempt: tau_r = pattern_r / q. For q = 1 this is
  // the endpoint table whose matrix is the identity.
  {
    std::vector<std::vector<Rat>> rows;
    rows.reserve(patterns.size());
    for (const auto& pattern : patterns) {
      std::vector<Rat> row;
      row.reserve(n);
      for (int g : pattern) {
        Rat t(g, q);
        t.canonicalize();
        row.push_back(std::move(t));
      }
      rows.push_back(std::move(row));
    }
    if (try_table(std::move(rows), 0, &table)) return table;
  }

  // Seeded random rational rows, values strictly inside (0,1).
  auto sample_rows = [&](std::mt19937_64& rng) {
    std::uniform_int_distribution<int> numerator(1, 63);
    std::vector<std::vector<Rat>> rows(patterns.size());
    for (auto& row : rows) {
      row.reserve(n);
      for (std::size_t r = 0; r < n; ++r) {
        Rat t(numerator(rng), 64);
        t.canonicalize();
        row.push_back(std::move(t));
      }
    }
    return rows;
  };

  std::mt19937_64 rng(seed);
  for (int attempt = 1; attempt <= 8; ++attempt) {
    if (try_table(sample_rows(rng), attempt, &table)) return table;
  }
  // Fixed derived-seed stream, independent of the caller's seed.
  std::mt19937_64 fallback_rng(0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(q));
  for (int attempt = 9; attempt <= 12; ++attempt) {
    if (try_table(sample_rows(fallback_rng), attempt, &table)) return table;
  }
  std::ostringstream os;
  os << "no regular tau table found after 13 attempts (deterministic + 8 from seed " << seed
     << " + 4 from the derived seed)";
  throw RegularitySearchError(os.str());
}

// ── Decomposition ───────────────────────────────────────────────────────────

namespace {

// Canonical orbit representative of a simplex vector: components sorted
// descending within each gamma level.
std::vector<Rat> canonical_vector(std::vector<Rat> x, int q) {
  for (int level = 0; level <= q; ++level) {
    std::vector<std::size_t> slots;
    for (int s = 1; s <= (1 << q); ++s) {
      if (gamma(q, s) == level) slots.push_back(static_cast<std::size_t>(s) - 1);
    }
    std::vector<Rat> values;
    values.reserve(slots.size());
    for (std::size_t slot : slots) values.push_back(x[slot]);
    std::sort(values.begin(), values.end(), std::greater<Rat>());
    for (std::size_t i = 0; i < slots.size(); ++i) x[slots[i]] = std::move(values[i]);
  }
  return x;
}

struct Pipeline {
  int q = 0;
  int n = 0;               // 2^q
  std::uint64_t space = 0;  // (2^q)^n color functions
  std::vector<std::vector<int>> patterns;
  std::size_t pi_star = 0;  // index of (gamma(1),..,gamma(2^q))
  TauTable taus;
  RatMatrix matrix{0, 0};
  std::vector<Rat> extraction;  // c with B^T c = unit(pi_star)
  std::vector<OrbitClass> pi_star_classes;
  DiscreteMeasure tau0 = DiscreteMeasure::point_mass(Rat(1, 2));
};

Pipeline make_pipeline(int q, std::uint64_t seed, const Guards& guards) {
  if (q < 1) throw BoundsError("need q >= 1");
  if (q > guards.max_decompose_q) {
    throw GuardError("decomposition guarded to q <= " + std::to_string(guards.max_decompose_q));
  }
  Pipeline p;
  p.q = q;
  p.n = 1 << q;
  p.space = checked_power(std::uint64_t{1} << q, p.n, guards.max_enum, "color-function space");
  p.patterns = gamma_patterns(q, p.n, guards);

  std::vector<int> pi_star;
  for (int r = 1; r <= p.n; ++r) pi_star.push_back(gamma(q, r));
  p.pi_star = static_cast<std::size_t>(
      std::find(p.patterns.begin(), p.patterns.end(), pi_star) - p.patterns.begin());

  p.taus = choose_regular_taus(p.patterns, q, seed, guards);
  p.matrix = build_pattern_matrix(p.patterns, p.taus.rows, q);

  // Solve B^T c = unit(pi_star): c_t is row pi_star of B^{-1}.
  RatMatrix transposed(p.patterns.size(), p.patterns.size());
  for (std::size_t r = 0; r < p.patterns.size(); ++r) {
    for (std::size_t c = 0; c < p.patterns.size(); ++c) {
      transposed.at(r, c) = p.matrix.at(c, r);
    }
  }
  std::vector<Rat> unit(p.patterns.size(), Rat(0));
  unit[p.pi_star] = 1;
  p.extraction = solve_linear_system(transposed, unit);

  for (auto& cls : enumerate_classes(q, p.n, guards)) {
    if (cls.representative.gamma_pattern() == p.patterns[p.pi_star]) {
      p.pi_star_classes.push_back(std::move(cls));
    }
  }
  return p;
}

// Expresses z_y as sum over canonical merged vectors y' of d_{y'} *
// W_{pi*}(y'), where W_{pi*}(y') sums w_{e(y')} over the level-preserving
// color functions e. Classes whose merge lands back in y's own orbit fold
// into the left-hand side; the rest strictly shrink the support.
using NodeCoefficients = std::map<std::vector<Rat>, Rat>;

const NodeCoefficients& solve_z(const Pipeline& p, const std::vector<Rat>& y,
                                std::map<std::vector<Rat>, NodeCoefficients>& memo) {
  const std::vector<Rat> key = canonical_vector(y, p.q);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  Rat fold(0);
  std::vector<std::pair<std::uint64_t, std::vector<Rat>>> merged;
  for (const auto& cls : p.pi_star_classes) {
    std::vector<Rat> image =
        e_of_p(cls.representative, std::span<const Rat>(key), p.tau0).components();
    if (canonical_vector(image, p.q) == key) {
      fold += Rat(static_cast<unsigned long>(cls.size));
    } else {
      merged.emplace_back(cls.size, std::move(image));
    }
  }
  NodeCoefficients expr;
  expr[key] = 1 / fold;
  for (const auto& [size, image] : merged) {
    const NodeCoefficients& sub = solve_z(p, image, memo);
    const Rat scale = Rat(static_cast<unsigned long>(size)) / fold;
    for (const auto& [node, coeff] : sub) expr[node] -= scale * coeff;
  }
  return memo.emplace(key, std::move(expr)).first->second;
}

struct Assembled {
  Rat lambda;
  ProbFn w1, w2;
  // Per node: the canonical vector and per-row extraction coefficients, for
  // the shared-table verification below.
  std::vector<std::pair<std::vector<Rat>, Rat>> nodes;  // (vector, d)
};

Assembled assemble(const Pipeline& p, const NodeCoefficients& node_coeffs) {
  Assembled out{Rat(0), ProbFn::wx(SimplexVector(1, {Rat(1), Rat(0)})),
                ProbFn::wx(SimplexVector(1, {Rat(1), Rat(0)})), {}};

  std::vector<ProbFn::Component> positive, negative;
  Rat positive_mass(0), negative_mass(0);
  Rat total(0);
  for (const auto& [node, d] : node_coeffs) {
    out.nodes.emplace_back(node, d);
    std::vector<Rat> params_p;
    params_p.reserve(node.size() + 1);
    params_p.emplace_back(0);
    for (const Rat& v : node) params_p.push_back(v);
    for (std::size_t t = 0; t < p.extraction.size(); ++t) {
      Rat coeff = d * p.extraction[t];
      if (coeff == 0) continue;
      total += coeff;
      ProbFn fn = ProbFn::vptn(PTParams(params_p, p.taus.rows[t], p.tau0), p.n);
      if (coeff > 0) {
        positive_mass += coeff;
        positive.push_back({std::move(coeff), std::move(fn)});
      } else {
        negative_mass -= coeff;
        negative.push_back({-std::move(coeff), std::move(fn)});
      }
    }
  }
  if (total != 1) {
    throw InternalError("decomposition coefficients sum to " + format_rat(total) + ", not 1");
  }
  out.lambda = negative_mass;
  if (positive_mass != 1 + out.lambda) throw InternalError("coefficient split is inconsistent");

  for (auto& c : positive) c.weight /= positive_mass;
  out.w1 = ProbFn::mixture(std::move(positive));
  if (negative.empty()) {
    out.w2 = out.w1;
  } else {
    for (auto& c : negative) c.weight /= negative_mass;
    out.w2 = ProbFn::mixture(std::move(negative));
  }
  return out;
}

// Exact values of v^{y,tau_t}_n for every tau row at one state description,
// sharing the per-pattern lump sums across rows.
class VptnTableEvaluator {
 public:
  VptnTableEvaluator(const Pipeline& p, const std::vector<Rat>& y) : p_(p) {
    // Precompute e(y) for every color function e, plus its pattern index.
    vectors_.reserve(p.space);
    pattern_index_.reserve(p.space);
    std::vector<int> e(static_cast<std::size_t>(p.n), 1);
    std::vector<Rat> x(static_cast<std::size_t>(p.n), Rat(0));
    for (int i = 0; i < p.n; ++i) x[0] += y[static_cast<std::size_t>(i)];
    std::vector<int> pattern(static_cast<std::size_t>(p.n), 0);
    while (true) {
      vectors_.push_back(x);
      for (int i = 0; i < p.n; ++i) {
        pattern[static_cast<std::size_t>(i)] = gamma(p.q, e[static_cast<std::size_t>(i)]);
      }
      pattern_index_.push_back(static_cast<std::size_t>(
          std::find(p.patterns.begin(), p.patterns.end(), pattern) - p.patterns.begin()));
      int pos = p.n - 1;
      while (pos >= 0) {
        auto& ep = e[static_cast<std::size_t>(pos)];
        x[static_cast<std::size_t>(ep) - 1] -= y[static_cast<std::size_t>(pos)];
        if (ep < p.n) {
          ++ep;
          x[static_cast<std::size_t>(ep) - 1] += y[static_cast<std::size_t>(pos)];
          break;
        }
        ep = 1;
        x[0] += y[static_cast<std::size_t>(pos)];
        --pos;
      }
      if (pos < 0) break;
    }
  }

  // values[t] = v^{y,tau_t}_n(sd)
  std::vector<Rat> values(const StateDescription& sd) const {
    const std::size_t P = p_.patterns.size();
    std::vector<Rat> lumps(P, Rat(0));
    for (std::size_t idx = 0; idx < vectors_.size(); ++idx) {
      Rat w(1);
      for (int i = 1; i <= sd.size(); ++i) {
        w *= vectors_[idx][static_cast<std::size_t>(sd.atom_index(i)) - 1];
        if (w == 0) break;
      }
      if (w != 0) lumps[pattern_index_[idx]] += w;
    }
    std::vector<Rat> out(P, Rat(0));
    for (std::size_t t = 0; t < P; ++t) {
      for (std::size_t pi = 0; pi < P; ++pi) {
        const Rat& entry = p_.matrix.at(t, pi);
        if (entry != 0 && lumps[pi] != 0) out[t] += entry * lumps[pi];
      }
    }
    return out;
  }

 private:
  const Pipeline& p_;
  std::vector<std::vector<Rat>> vectors_;
  std::vector<std::size_t> pattern_index_;
};

DecompositionResult decompose_core(const std::vector<std::pair<Rat, SimplexVector>>& mix,
                                   std::uint64_t seed, int verify_length,
                                   const Guards& guards) {
  if (mix.empty()) throw BoundsError("empty mixture");
  const int q = mix.front().second.q();
  Rat weight_sum(0);
  for (const auto& [weight, x] : mix) {
    if (x.q() != q) throw BoundsError("mixture components disagree on q");
    if (weight < 0) throw BoundsError("mixture weight is negative");
    weight_sum += weight;
  }
  if (weight_sum != 1) throw BoundsError("mixture weights must sum to 1");
  if (verify_length < 0) throw BoundsError("negative verification length");
  sd_space_size(q, verify_length, guards);

  Pipeline p = make_pipeline(q, seed, guards);

  // Combine the per-component node coefficients, weighted by the mixture.
  std::map<std::vector<Rat>, NodeCoefficients> memo;
  NodeCoefficients combined;
  for (const auto& [weight, x] : mix) {
    const NodeCoefficients& expr = solve_z(p, x.components(), memo);
    for (const auto& [node, d] : expr) combined[node] += weight * d;
  }
  for (auto it = combined.begin(); it != combined.end();) {
    it = it->second == 0 ? combined.erase(it) : std::next(it);
  }

  Assembled assembled = assemble(p, combined);

  DecompositionResult result{std::move(assembled.lambda), std::move(assembled.w1),
                             std::move(assembled.w2),     p.taus,
                             verify_length,               {}};

  // Verify (1+lambda) w1 - lambda w2 against the direct group average on
  // every description up to the requested length.
  std::vector<VptnTableEvaluator> evaluators;
  evaluators.reserve(assembled.nodes.size());
  for (const auto& [node, d] : assembled.nodes) evaluators.emplace_back(p, node);

  const Rat one_plus_lambda = 1 + result.lambda;
  for (int len = 0; len <= verify_length; ++len) {
    const std::uint64_t space = sd_space_size(q, len, guards);
    for (std::uint64_t rank = 0; rank < space; ++rank) {
      StateDescription sd = sd_from_rank(q, len, rank);
      Rat lhs(0);
      for (const auto& [weight, x] : mix) lhs += weight * zx_eval(x, sd, guards);

      // w1(sd) and w2(sd) through the shared tables: every component of w1
      // and w2 is one of the v^{node,tau_t}_n evaluated here.
      Rat w1_value(0), w2_value(0);
      for (std::size_t j = 0; j < assembled.nodes.size(); ++j) {
        const auto& [node, d] = assembled.nodes[j];
        const std::vector<Rat> v = evaluators[j].values(sd);
        for (std::size_t t = 0; t < v.size(); ++t) {
          Rat coeff = d * p.extraction[t];
          if (coeff > 0) {
            w1_value += coeff / one_plus_lambda * v[t];
          } else if (coeff < 0) {
            w2_value += -coeff / result.lambda * v[t];
          }
        }
      }
      Rat rhs = result.lambda == 0 ? w1_value
                                   : one_plus_lambda * w1_value - result.lambda * w2_value;
      if (rhs != lhs) {
        throw InternalError("decomposition verification mismatch at " + format_sd(sd));
      }
      result.certificate.push_back({std::move(sd), std::move(lhs), std::move(rhs)});
    }
  }
  return result;
}

}  // namespace

DecompositionResult decompose_z(const SimplexVector& x, std::uint64_t seed, int verify_length,
                                const Guards& guards) {
  return decompose_core({{Rat(1), x}}, seed, verify_length, guards);
}

DecompositionResult decompose_mixture(const std::vector<std::pair<Rat, SimplexVector>>& mix,
                                      std::uint64_t seed, int verify_length,
                                      const Guards& guards) {
  return decompose_core(mix, seed, verify_length, guards);
}

}  // namespace pilex
