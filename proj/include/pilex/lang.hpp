#ifndef PILEX_LANG_HPP
#define PILEX_LANG_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pilex/errors.hpp"

namespace pilex {

// ── Atoms ───────────────────────────────────────────────────────────────────
//
// An atom of L_q is a full conjunction of signed predicates P_1..P_q in one
// variable. Atoms are indexed 1..2^q in lexicographic order: index-1 written
// in binary over q bits (most significant bit = P_1) gives the sign string,
// with bit 1 meaning negated. So atom 1 is all-positive and atom 2^q is
// all-negative, and the sign-complement of atom i is atom 2^q+1-i.

class Atom {
 public:
  Atom(int q, int index, const Guards& guards = default_guards());

  // `negated[k]` is the sign of P_{k+1} (true = negated).
  static Atom from_signs(const std::vector<bool>& negated,
                         const Guards& guards = default_guards());

  int q() const { return q_; }
  int index() const { return index_; }

  bool negated(int predicate) const;  // predicate in 1..q
  int negation_count() const;
  Atom complement() const { return Atom(q_, (1 << q_) + 1 - index_); }

  std::string to_string() const;  // sign string, e.g. "+-+"

  friend bool operator==(const Atom& a, const Atom& b) = default;
  friend auto operator<=>(const Atom& a, const Atom& b) = default;

 private:
  int q_;
  int index_;
};

// All 2^q atoms in lexicographic order.
std::vector<Atom> atoms(int q, const Guards& guards = default_guards());

// Number of negated predicates (the gamma function). Also available on a raw
// 1-based atom index, which is what the enumeration-heavy code uses.
int gamma(const Atom& atom);
int gamma(int q, int atom_index);

int atom_count(int q);  // 2^q, guarded

// ── State descriptions ──────────────────────────────────────────────────────
//
// A state description assigns one atom to each of a_1..a_n; n = 0 is the
// empty description (top), which every evaluator maps to 1.

class StateDescription {
 public:
  StateDescription(int q, std::vector<int> atom_indices,
                   const Guards& guards = default_guards());

  int q() const { return q_; }
  int size() const { return static_cast<int>(h_.size()); }
  bool empty() const { return h_.empty(); }

  // Atom index carried by constant a_i, i in 1..n.
  int atom_index(int i) const;
  const std::vector<int>& atom_indices() const { return h_; }

  // The length-m prefix (a_1..a_m), m <= n.
  StateDescription prefix(int m) const;
  StateDescription extended(int atom_index) const;

  friend bool operator==(const StateDescription&, const StateDescription&) = default;
  friend auto operator<=>(const StateDescription&, const StateDescription&) = default;

 private:
  int q_;
  std::vector<int> h_;
};

// Grammar: `q=<int>:` followed by n whitespace-separated tokens, each either
// a sign string of length q over {+,-} or an atom index `@<int>`.
StateDescription parse_sd(std::string_view text,
                          const Guards& guards = default_guards());
std::string format_sd(const StateDescription& sd);          // sign strings
std::string format_sd_indices(const StateDescription& sd);  // "@k" tokens

// Enumeration helpers. State descriptions of fixed length are ranked
// lexicographically by their atom-index sequences, rank 0 = all atoms 1.
std::uint64_t sd_space_size(int q, int n, const Guards& guards = default_guards());
StateDescription sd_from_rank(int q, int n, std::uint64_t rank);
std::uint64_t sd_rank(const StateDescription& sd);

// ── Quantifier-free sentences ───────────────────────────────────────────────

class QFSentence {
 public:
  enum class Kind { Literal, Not, And, Or };

  static QFSentence literal(int predicate, int constant, bool positive);
  static QFSentence negation(QFSentence operand);
  static QFSentence conjunction(std::vector<QFSentence> operands);
  static QFSentence disjunction(std::vector<QFSentence> operands);

  Kind kind() const { return node_->kind; }
  // Literal accessors; only valid when kind() == Literal.
  int predicate() const { return node_->predicate; }
  int constant() const { return node_->constant; }
  bool positive() const { return node_->positive; }
  const std::vector<QFSentence>& operands() const { return node_->operands; }

  std::set<int> mentioned_predicates() const;
  std::set<int> mentioned_constants() const;
  int max_constant() const;  // 0 for constant-free (impossible here) trees

  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    int predicate = 0;
    int constant = 0;
    bool positive = true;
    std::vector<QFSentence> operands;
  };
  explicit QFSentence(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar: literals `P<i>(a<j>)`, negation `~`, conjunction `&`,
// disjunction `|`, parentheses. `~` binds tightest, then `&`, then `|`.
QFSentence parse_qf(std::string_view text);

// Truth of `s` under the literal assignment induced by `sd`. Every constant
// mentioned in `s` must be assigned by `sd`.
bool models(const StateDescription& sd, const QFSentence& s);

}  // namespace pilex

#endif
