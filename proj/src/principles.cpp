#include "pilex/principles.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pilex {

std::string principle_name(Principle p) {
  switch (p) {
    case Principle::Axioms: return "Axioms";
    case Principle::Ex: return "Ex";
    case Principle::Px: return "Px";
    case Principle::Ax: return "Ax";
    case Principle::SPx: return "SPx";
    case Principle::WIP: return "WIP";
    case Principle::ULiConsistency: return "ULiConsistency";
  }
  throw InternalError("unreachable principle");
}

namespace {

// Values of fn on every state description of length <= max_n, rank-indexed
// per length. The checkers share one table per run.
class ValueTable {
 public:
  ValueTable(const ProbFn& fn, int q, int max_n, const Guards& guards) : q_(q) {
    tables_.resize(static_cast<std::size_t>(max_n) + 1);
    for (int n = 0; n <= max_n; ++n) {
      const std::uint64_t space = sd_space_size(q, n, guards);
      auto& table = tables_[static_cast<std::size_t>(n)];
      table.reserve(space);
      for (std::uint64_t rank = 0; rank < space; ++rank) {
        table.push_back(eval_sd(fn, sd_from_rank(q, n, rank), guards));
      }
    }
  }

  const Rat& value(int n, std::uint64_t rank) const {
    return tables_[static_cast<std::size_t>(n)][rank];
  }
  const Rat& value(const StateDescription& sd) const {
    return value(sd.size(), sd_rank(sd));
  }
  int max_n() const { return static_cast<int>(tables_.size()) - 1; }
  int q() const { return q_; }

 private:
  int q_;
  std::vector<std::vector<Rat>> tables_;
};

PrincipleReport make_report(Principle principle, int q, int n) {
  PrincipleReport report;
  report.principle = principle;
  report.pass = true;
  report.q = q;
  report.n = n;
  return report;
}

}  // namespace

PrincipleReport check_axioms(const ProbFn& fn, int q, int n, const Guards& guards) {
  PrincipleReport report = make_report(Principle::Axioms, q, n);
  ValueTable table(fn, q, n, guards);

  if (table.value(0, 0) != 1) {
    report.pass = false;
    Witness w;
    w.lhs = table.value(0, 0);
    w.rhs = Rat(1);
    w.note = "normalization fails at length 0: w(T) != 1";
    report.witness = std::move(w);
    return report;
  }
  for (int len = 1; len <= n; ++len) {
    const std::uint64_t space = sd_space_size(q, len, guards);
    Rat mass(0);
    for (std::uint64_t rank = 0; rank < space; ++rank) {
      const Rat& v = table.value(len, rank);
      if (v < 0) {
        report.pass = false;
        Witness w;
        w.theta = sd_from_rank(q, len, rank);
        w.lhs = v;
        w.note = "negative value";
        report.witness = std::move(w);
        return report;
      }
      mass += v;
    }
    if (mass != 1) {
      report.pass = false;
      Witness w;
      w.lhs = mass;
      w.rhs = Rat(1);
      w.note = "normalization fails at length " + std::to_string(len);
      report.witness = std::move(w);
      return report;
    }
  }
  for (int len = 0; len < n; ++len) {
    const std::uint64_t space = sd_space_size(q, len, guards);
    for (std::uint64_t rank = 0; rank < space; ++rank) {
      Rat extended_mass(0);
      for (int atom = 1; atom <= (1 << q); ++atom) {
        extended_mass +=
            table.value(len + 1, (rank << q) | static_cast<std::uint64_t>(atom - 1));
      }
      if (extended_mass != table.value(len, rank)) {
        report.pass = false;
        Witness w;
        w.theta = sd_from_rank(q, len, rank);
        w.lhs = table.value(len, rank);
        w.rhs = extended_mass;
        w.note = "marginalization fails between lengths " + std::to_string(len) + " and " +
                 std::to_string(len + 1);
        report.witness = std::move(w);
        return report;
      }
    }
  }
  return report;
}

namespace {

PrincipleReport check_perm_invariance(const ProbFn& fn, Principle principle, int q, int n,
                                      const std::vector<AtomPermutation>* atom_perms,
                                      bool constant_perms, const Guards& guards) {
  PrincipleReport report = make_report(principle, q, n);
  ValueTable table(fn, q, n, guards);
  for (int len = 0; len <= n; ++len) {
    const std::uint64_t space = sd_space_size(q, len, guards);
    std::vector<ConstPermutation> rho;
    if (constant_perms) rho = all_const_perms(len);
    for (std::uint64_t rank = 0; rank < space; ++rank) {
      StateDescription sd = sd_from_rank(q, len, rank);
      const Rat& value = table.value(len, rank);
      if (atom_perms) {
        for (const auto& sigma : *atom_perms) {
          StateDescription image = apply(sd, sigma);
          const Rat& image_value = table.value(image);
          if (image_value != value) {
            report.pass = false;
            Witness w;
            w.theta = sd;
            w.phi = std::move(image);
            w.permutation = sigma.image;
            w.lhs = value;
            w.rhs = image_value;
            report.witness = std::move(w);
            return report;
          }
        }
      } else {
        for (const auto& perm : rho) {
          StateDescription image = apply(sd, perm);
          const Rat& image_value = table.value(image);
          if (image_value != value) {
            report.pass = false;
            Witness w;
            w.theta = sd;
            w.phi = std::move(image);
            w.permutation = perm.image;
            w.lhs = value;
            w.rhs = image_value;
            report.witness = std::move(w);
            return report;
          }
        }
      }
    }
  }
  return report;
}

PrincipleReport check_spectrum_invariance(const ProbFn& fn, int q, int n, const Guards& guards) {
  PrincipleReport report = make_report(Principle::SPx, q, n);
  ValueTable table(fn, q, n, guards);
  for (int len = 0; len <= n; ++len) {
    const std::uint64_t space = sd_space_size(q, len, guards);
    std::map<PSpectrum, std::pair<StateDescription, Rat>> cells;
    for (std::uint64_t rank = 0; rank < space; ++rank) {
      StateDescription sd = sd_from_rank(q, len, rank);
      const Rat& value = table.value(len, rank);
      auto [it, inserted] = cells.try_emplace(pspectrum(sd), sd, value);
      if (!inserted && it->second.second != value) {
        report.pass = false;
        Witness w;
        w.theta = it->second.first;
        w.phi = std::move(sd);
        w.lhs = it->second.second;
        w.rhs = value;
        report.witness = std::move(w);
        return report;
      }
    }
  }
  return report;
}

// Adjacent atom transpositions that cross gamma levels; together with the
// spectrum-preserving group these refute Ax whenever SPx-only symmetry
// holds, and they are cheap and deterministic.
std::vector<AtomPermutation> gamma_breaking_transpositions(int q) {
  std::vector<AtomPermutation> out;
  for (int i = 1; i < (1 << q); ++i) {
    if (gamma(q, i) == gamma(q, i + 1)) continue;
    AtomPermutation t = AtomPermutation::identity(q);
    std::swap(t.image[static_cast<std::size_t>(i) - 1], t.image[static_cast<std::size_t>(i)]);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

PrincipleReport check_invariance(const ProbFn& fn, Principle principle, int q, int n,
                                 const Guards& guards) {
  switch (principle) {
    case Principle::Ex:
      return check_perm_invariance(fn, principle, q, n, nullptr, true, guards);
    case Principle::Px: {
      std::vector<AtomPermutation> perms;
      for (const auto& p : all_pred_perms(q)) perms.push_back(induced_atom_perm(p));
      std::sort(perms.begin(), perms.end());
      return check_perm_invariance(fn, principle, q, n, &perms, false, guards);
    }
    case Principle::Ax: {
      std::vector<AtomPermutation> perms;
      if (q <= 2) {
        perms = all_atom_perms(q, guards);
      } else if (q == 3) {
        perms = spec_perm_group(q, guards);
        for (auto& t : gamma_breaking_transpositions(q)) perms.push_back(std::move(t));
        std::sort(perms.begin(), perms.end());
      } else {
        throw GuardError("Ax checking guarded to q <= 3");
      }
      auto report = check_perm_invariance(fn, principle, q, n, &perms, false, guards);
      if (report.pass && q == 3) {
        report.extra_bounds.emplace_back("permutations", "spectrum-preserving + transpositions");
      }
      return report;
    }
    case Principle::SPx:
      return check_spectrum_invariance(fn, q, n, guards);
    default:
      throw BoundsError("check_invariance handles Ex, Px, Ax, SPx");
  }
}

// ── WIP ─────────────────────────────────────────────────────────────────────

namespace {

struct Literal {
  int slot;  // 1-based constant slot within the side
  int pred;
  bool positive;
};

struct Conjunct {
  std::vector<Literal> literals;
  int constant_count = 0;  // max slot used

  std::string to_string(int constant_offset) const {
    std::string s;
    for (std::size_t i = 0; i < literals.size(); ++i) {
      if (i) s += " & ";
      if (!literals[i].positive) s += "~";
      s += "P" + std::to_string(literals[i].pred) + "(a" +
           std::to_string(constant_offset + literals[i].slot) + ")";
    }
    return s;
  }
};

// All consistent literal conjunctions over preds x slots, compact in the
// slots (slot j used only when slot j-1 is), ordered by literal count then
// lexicographically. The first element is the single positive literal on
// the first predicate and first slot.
std::vector<Conjunct> enumerate_conjuncts(const std::vector<int>& preds, int max_slots) {
  const std::size_t cells = preds.size() * static_cast<std::size_t>(max_slots);
  if (cells > 16) throw GuardError("WIP side enumeration too large");
  std::uint64_t codes = 1;
  for (std::size_t i = 0; i < cells; ++i) codes *= 3;
  std::vector<Conjunct> out;
  for (std::uint64_t code = 1; code < codes; ++code) {
    std::uint64_t c = code;
    Conjunct conj;
    std::vector<bool> slot_used(static_cast<std::size_t>(max_slots) + 1, false);
    for (int slot = 1; slot <= max_slots; ++slot) {
      for (int pred : preds) {
        int digit = static_cast<int>(c % 3);
        c /= 3;
        if (digit == 0) continue;
        conj.literals.push_back({slot, pred, digit == 1});
        slot_used[static_cast<std::size_t>(slot)] = true;
      }
    }
    bool compact = true;
    for (int slot = 1; slot <= max_slots; ++slot) {
      if (slot_used[static_cast<std::size_t>(slot)] && slot > 1 &&
          !slot_used[static_cast<std::size_t>(slot) - 1]) {
        compact = false;
      }
      if (slot_used[static_cast<std::size_t>(slot)]) conj.constant_count = slot;
    }
    if (!compact) continue;
    out.push_back(std::move(conj));
  }
  std::stable_sort(out.begin(), out.end(), [](const Conjunct& a, const Conjunct& b) {
    if (a.literals.size() != b.literals.size()) return a.literals.size() < b.literals.size();
    auto key = [](const Literal& l) { return std::tuple(l.slot, l.pred, !l.positive); };
    return std::lexicographical_compare(a.literals.begin(), a.literals.end(), b.literals.begin(),
                                        b.literals.end(),
                                        [&](const Literal& x, const Literal& y) {
                                          return key(x) < key(y);
                                        });
  });
  return out;
}

// Allowed atoms per constant slot under a conjunct placed at a constant
// offset; slots beyond the conjunct are unconstrained.
std::vector<std::vector<int>> allowed_atoms(const Conjunct& conj, int q, int offset,
                                            int total_constants) {
  std::vector<std::vector<int>> allowed(static_cast<std::size_t>(total_constants));
  for (int constant = 1; constant <= total_constants; ++constant) {
    for (int atom = 1; atom <= (1 << q); ++atom) {
      bool ok = true;
      for (const auto& literal : conj.literals) {
        if (offset + literal.slot != constant) continue;
        bool value = !Atom(q, atom).negated(literal.pred);
        if (value != literal.positive) {
          ok = false;
          break;
        }
      }
      if (ok) allowed[static_cast<std::size_t>(constant) - 1].push_back(atom);
    }
  }
  return allowed;
}

Rat constrained_sum(const ValueTable& table, int q,
                    const std::vector<std::vector<int>>& allowed) {
  const int n = static_cast<int>(allowed.size());
  Rat total(0);
  auto rec = [&](auto&& self, int constant, std::uint64_t rank) -> void {
    if (constant > n) {
      total += table.value(n, rank);
      return;
    }
    for (int atom : allowed[static_cast<std::size_t>(constant) - 1]) {
      self(self, constant + 1, (rank << q) | static_cast<std::uint64_t>(atom - 1));
    }
  };
  rec(rec, 1, 0);
  return total;
}

std::vector<std::vector<int>> merge_constraints(const std::vector<std::vector<int>>& a,
                                                const std::vector<std::vector<int>>& b) {
  std::vector<std::vector<int>> out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& left = i < a.size() ? a[i] : std::vector<int>{};
    const auto& right = i < b.size() ? b[i] : std::vector<int>{};
    if (left.empty() || right.empty()) {
      out[i] = left.empty() ? right : left;
      continue;
    }
    std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                          std::back_inserter(out[i]));
  }
  return out;
}

}  // namespace

PrincipleReport check_wip(const ProbFn& fn, int q, const WipBounds& bounds,
                          const Guards& guards) {
  if (q < 2) throw BoundsError("WIP checking needs q >= 2");
  const int side = std::min(bounds.preds_per_side, q / 2);
  std::vector<int> left_preds, right_preds;
  for (int i = 1; i <= side; ++i) left_preds.push_back(i);
  for (int i = side + 1; i <= 2 * side; ++i) right_preds.push_back(i);

  PrincipleReport report = make_report(Principle::WIP, q, 2 * bounds.consts_per_side);
  report.extra_bounds.emplace_back("preds_per_side", std::to_string(side));
  report.extra_bounds.emplace_back("consts_per_side", std::to_string(bounds.consts_per_side));

  const int max_len = 2 * bounds.consts_per_side;
  ValueTable table(fn, q, max_len, guards);

  const auto thetas = enumerate_conjuncts(left_preds, bounds.consts_per_side);
  const auto phis = enumerate_conjuncts(right_preds, bounds.consts_per_side);

  for (const auto& theta : thetas) {
    const int offset = theta.constant_count;
    const Rat theta_value =
        constrained_sum(table, q, allowed_atoms(theta, q, 0, theta.constant_count));
    for (const auto& phi : phis) {
      const int joint_len = offset + phi.constant_count;
      const auto theta_constraints = allowed_atoms(theta, q, 0, joint_len);
      const auto phi_constraints = allowed_atoms(phi, q, offset, joint_len);
      const Rat phi_value = constrained_sum(table, q, phi_constraints);
      const Rat joint =
          constrained_sum(table, q, merge_constraints(theta_constraints, phi_constraints));
      if (joint != theta_value * phi_value) {
        report.pass = false;
        Witness w;
        w.theta_sentence = theta.to_string(0);
        w.phi_sentence = phi.to_string(offset);
        w.lhs = joint;
        w.rhs = theta_value * phi_value;
        report.witness = std::move(w);
        return report;
      }
    }
  }
  return report;
}

PrincipleReport check_uli_consistency(const ProbFn& fn, int q_small, int q_large, int n,
                                      const Guards& guards) {
  if (!fn.is_language_family()) {
    throw FamilyError("ULi consistency requires a language-family function");
  }
  if (q_small < 1 || q_small > q_large) throw BoundsError("need 1 <= q_small <= q_large");
  PrincipleReport report = make_report(Principle::ULiConsistency, q_small, n);
  report.extra_bounds.emplace_back("q_large", std::to_string(q_large));
  for (int len = 0; len <= n; ++len) {
    const std::uint64_t space = sd_space_size(q_small, len, guards);
    for (std::uint64_t rank = 0; rank < space; ++rank) {
      StateDescription sd = sd_from_rank(q_small, len, rank);
      Rat direct = eval_sd(fn, sd, guards);
      Rat via = restricted_eval(fn, q_large, sd, guards);
      if (direct != via) {
        report.pass = false;
        Witness w;
        w.theta = std::move(sd);
        w.lhs = direct;
        w.rhs = via;
        w.note = "restriction from L_" + std::to_string(q_large) + " disagrees";
        report.witness = std::move(w);
        return report;
      }
    }
  }
  return report;
}

std::vector<PrincipleReport> classify(const ProbFn& fn, int q, int n, const Guards& guards) {
  std::vector<PrincipleReport> reports;
  reports.push_back(check_axioms(fn, q, n, guards));
  reports.push_back(check_invariance(fn, Principle::Ex, q, n, guards));
  reports.push_back(check_invariance(fn, Principle::Px, q, n, guards));
  if (q <= 3) reports.push_back(check_invariance(fn, Principle::Ax, q, n, guards));
  reports.push_back(check_invariance(fn, Principle::SPx, q, n, guards));
  if (q >= 2) reports.push_back(check_wip(fn, q, WipBounds{}, guards));
  if (fn.is_language_family()) {
    reports.push_back(check_uli_consistency(fn, q, q + 1, n, guards));
  }
  return reports;
}

// ── Worked counterexample ───────────────────────────────────────────────────

PxNotSpxExample run_px_not_spx_example(const Guards& guards) {
  const int q = 3;
  std::vector<Rat> b;
  for (int numerator : {1, 2, 4, 5, 2, 3, 1, 1}) b.emplace_back(numerator, 19);
  SimplexVector base(q, b);

  std::vector<ProbFn::Component> components;
  const Rat weight(1, 6);
  for (const auto& p : all_pred_perms(q)) {
    components.push_back({weight, ProbFn::wx(base.permuted(induced_atom_perm(p)))});
  }

  PxNotSpxExample ex{
      .theta = parse_sd("q=3: ++- -++ --+ --+ +--"),
      .phi = parse_sd("q=3: +-+ -++ -+- -+- --+"),
      .spectrum_theta = pspectrum(parse_sd("q=3: ++- -++ --+ --+ +--")),
      .spectrum_phi = pspectrum(parse_sd("q=3: +-+ -++ -+- -+- --+")),
      .w = ProbFn::mixture(std::move(components)),
      .w_theta = Rat(0),
      .w_phi = Rat(0),
      .printed_theta = Rat(1094, 6 * 2476099),  // 19^5 = 2476099
      .printed_phi = Rat(1224, 6 * 2476099),
      .px_report = {},
      .spx_report = {},
  };
  ex.printed_theta.canonicalize();
  ex.printed_phi.canonicalize();
  ex.w_theta = eval_sd(ex.w, ex.theta, guards);
  ex.w_phi = eval_sd(ex.w, ex.phi, guards);
  ex.px_report = check_invariance(ex.w, Principle::Px, q, 5, guards);

  // SPx verdict on the canonical pair: same spectrum, different value.
  ex.spx_report = PrincipleReport{.principle = Principle::SPx,
                                  .pass = !(ex.spectrum_theta == ex.spectrum_phi &&
                                            ex.w_theta != ex.w_phi),
                                  .witness = std::nullopt,
                                  .q = q,
                                  .n = 5,
                                  .extra_bounds = {{"scope", "canonical pair"}}};
  if (!ex.spx_report.pass) {
    Witness w;
    w.theta = ex.theta;
    w.phi = ex.phi;
    w.lhs = ex.w_theta;
    w.rhs = ex.w_phi;
    ex.spx_report.witness = std::move(w);
  }
  return ex;
}

}  // namespace pilex
