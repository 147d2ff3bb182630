#include "pilex/lang.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace pilex {

namespace {

void check_q(int q, const Guards& guards) {
  if (q < 1) throw BoundsError("predicate count must be positive, got " + std::to_string(q));
  if (q > guards.max_q_syntax) {
    throw GuardError("predicate count " + std::to_string(q) + " exceeds guard " +
                     std::to_string(guards.max_q_syntax));
  }
}

}  // namespace

Atom::Atom(int q, int index, const Guards& guards) : q_(q), index_(index) {
  check_q(q, guards);
  if (index < 1 || index > (1 << q)) {
    throw BoundsError("atom index " + std::to_string(index) + " out of range for q=" +
                      std::to_string(q));
  }
}

Atom Atom::from_signs(const std::vector<bool>& negated, const Guards& guards) {
  int q = static_cast<int>(negated.size());
  check_q(q, guards);
  int bits = 0;
  for (int k = 0; k < q; ++k) bits = (bits << 1) | (negated[k] ? 1 : 0);
  return Atom(q, bits + 1, guards);
}

bool Atom::negated(int predicate) const {
  if (predicate < 1 || predicate > q_) {
    throw BoundsError("predicate " + std::to_string(predicate) + " out of range for q=" +
                      std::to_string(q_));
  }
  return ((index_ - 1) >> (q_ - predicate)) & 1;
}

int Atom::negation_count() const { return std::popcount(static_cast<unsigned>(index_ - 1)); }

std::string Atom::to_string() const {
  std::string s(q_, '+');
  for (int k = 1; k <= q_; ++k) {
    if (negated(k)) s[k - 1] = '-';
  }
  return s;
}

std::vector<Atom> atoms(int q, const Guards& guards) {
  check_q(q, guards);
  std::vector<Atom> out;
  out.reserve(std::size_t{1} << q);
  for (int i = 1; i <= (1 << q); ++i) out.emplace_back(q, i, guards);
  return out;
}

int gamma(const Atom& atom) { return atom.negation_count(); }

int gamma(int q, int atom_index) {
  if (atom_index < 1 || atom_index > (1 << q)) {
    throw BoundsError("atom index " + std::to_string(atom_index) + " out of range for q=" +
                      std::to_string(q));
  }
  return std::popcount(static_cast<unsigned>(atom_index - 1));
}

int atom_count(int q) {
  check_q(q, default_guards());
  return 1 << q;
}

StateDescription::StateDescription(int q, std::vector<int> atom_indices, const Guards& guards)
    : q_(q), h_(std::move(atom_indices)) {
  check_q(q, guards);
  for (int h : h_) {
    if (h < 1 || h > (1 << q)) {
      throw BoundsError("atom index " + std::to_string(h) + " out of range for q=" +
                        std::to_string(q));
    }
  }
}

int StateDescription::atom_index(int i) const {
  if (i < 1 || i > size()) {
    throw BoundsError("constant a_" + std::to_string(i) + " not assigned (n=" +
                      std::to_string(size()) + ")");
  }
  return h_[static_cast<std::size_t>(i) - 1];
}

StateDescription StateDescription::prefix(int m) const {
  if (m < 0 || m > size()) throw BoundsError("prefix length out of range");
  return StateDescription(q_, std::vector<int>(h_.begin(), h_.begin() + m));
}

StateDescription StateDescription::extended(int atom_index) const {
  std::vector<int> h = h_;
  h.push_back(atom_index);
  return StateDescription(q_, std::move(h));
}

StateDescription parse_sd(std::string_view text, const Guards& guards) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos >= text.size() || text[pos] != 'q') throw ParseError("expected 'q=' header", pos);
  ++pos;
  if (pos >= text.size() || text[pos] != '=') throw ParseError("expected '=' after 'q'", pos);
  ++pos;
  std::size_t qstart = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == qstart) throw ParseError("expected predicate count after 'q='", pos);
  int q = std::stoi(std::string(text.substr(qstart, pos - qstart)));
  check_q(q, guards);
  skip_ws();
  if (pos >= text.size() || text[pos] != ':') throw ParseError("expected ':' after q", pos);
  ++pos;

  std::vector<int> h;
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] == '@') {
      std::size_t istart = ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == istart) throw ParseError("expected atom index after '@'", pos);
      int idx = std::stoi(std::string(text.substr(istart, pos - istart)));
      if (idx < 1 || idx > (1 << q)) throw ParseError("atom index out of range", istart);
      h.push_back(idx);
    } else {
      std::vector<bool> negated;
      std::size_t tstart = pos;
      while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negated.push_back(text[pos] == '-');
        ++pos;
      }
      if (negated.empty()) throw ParseError("invalid sign mark", pos);
      if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
        throw ParseError("invalid sign mark", pos);
      }
      if (static_cast<int>(negated.size()) != q) {
        throw ParseError("sign string has length " + std::to_string(negated.size()) +
                             ", expected " + std::to_string(q),
                         tstart);
      }
      h.push_back(Atom::from_signs(negated, guards).index());
    }
  }
  return StateDescription(q, std::move(h), guards);
}

std::string format_sd(const StateDescription& sd) {
  std::ostringstream os;
  os << "q=" << sd.q() << ":";
  for (int i = 1; i <= sd.size(); ++i) os << ' ' << Atom(sd.q(), sd.atom_index(i)).to_string();
  return os.str();
}

std::string format_sd_indices(const StateDescription& sd) {
  std::ostringstream os;
  os << "q=" << sd.q() << ":";
  for (int i = 1; i <= sd.size(); ++i) os << " @" << sd.atom_index(i);
  return os.str();
}

std::uint64_t sd_space_size(int q, int n, const Guards& guards) {
  check_q(q, guards);
  if (n < 0) throw BoundsError("negative length");
  if (static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(n) >= 63) {
    throw GuardError("state-description space 2^(q*n) overflows the enumeration guard");
  }
  std::uint64_t size = std::uint64_t{1} << (q * n);
  if (size > guards.max_enum) {
    throw GuardError("state-description space " + std::to_string(size) + " exceeds guard " +
                     std::to_string(guards.max_enum));
  }
  return size;
}

StateDescription sd_from_rank(int q, int n, std::uint64_t rank) {
  std::vector<int> h(static_cast<std::size_t>(n));
  const std::uint64_t base = std::uint64_t{1} << q;
  for (int i = n - 1; i >= 0; --i) {
    h[static_cast<std::size_t>(i)] = static_cast<int>(rank % base) + 1;
    rank /= base;
  }
  return StateDescription(q, std::move(h));
}

std::uint64_t sd_rank(const StateDescription& sd) {
  std::uint64_t rank = 0;
  for (int i = 1; i <= sd.size(); ++i) {
    rank = (rank << sd.q()) | static_cast<std::uint64_t>(sd.atom_index(i) - 1);
  }
  return rank;
}

// ── QFSentence ──────────────────────────────────────────────────────────────

QFSentence QFSentence::literal(int predicate, int constant, bool positive) {
  if (predicate < 1 || constant < 1) throw BoundsError("literal indices must be positive");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Literal;
  node->predicate = predicate;
  node->constant = constant;
  node->positive = positive;
  return QFSentence(std::move(node));
}

QFSentence QFSentence::negation(QFSentence operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Not;
  node->operands.push_back(std::move(operand));
  return QFSentence(std::move(node));
}

QFSentence QFSentence::conjunction(std::vector<QFSentence> operands) {
  if (operands.empty()) throw BoundsError("empty conjunction");
  auto node = std::make_shared<Node>();
  node->kind = Kind::And;
  node->operands = std::move(operands);
  return QFSentence(std::move(node));
}

QFSentence QFSentence::disjunction(std::vector<QFSentence> operands) {
  if (operands.empty()) throw BoundsError("empty disjunction");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Or;
  node->operands = std::move(operands);
  return QFSentence(std::move(node));
}

namespace {

void collect(const QFSentence& s, std::set<int>* preds, std::set<int>* consts) {
  if (s.kind() == QFSentence::Kind::Literal) {
    if (preds) preds->insert(s.predicate());
    if (consts) consts->insert(s.constant());
    return;
  }
  for (const auto& op : s.operands()) collect(op, preds, consts);
}

}  // namespace

std::set<int> QFSentence::mentioned_predicates() const {
  std::set<int> out;
  collect(*this, &out, nullptr);
  return out;
}

std::set<int> QFSentence::mentioned_constants() const {
  std::set<int> out;
  collect(*this, nullptr, &out);
  return out;
}

int QFSentence::max_constant() const {
  auto consts = mentioned_constants();
  return consts.empty() ? 0 : *consts.rbegin();
}

std::string QFSentence::to_string() const {
  switch (kind()) {
    case Kind::Literal: {
      std::string s = positive() ? "" : "~";
      return s + "P" + std::to_string(predicate()) + "(a" + std::to_string(constant()) + ")";
    }
    case Kind::Not:
      return "~(" + operands()[0].to_string() + ")";
    case Kind::And:
    case Kind::Or: {
      const char* sep = kind() == Kind::And ? " & " : " | ";
      std::string s = "(";
      for (std::size_t i = 0; i < operands().size(); ++i) {
        if (i) s += sep;
        s += operands()[i].to_string();
      }
      return s + ")";
    }
  }
  throw InternalError("unreachable sentence kind");
}

namespace {

// Recursive-descent parser for the `~ & |` grammar.
class QFParser {
 public:
  explicit QFParser(std::string_view text) : text_(text) {}

  QFSentence parse() {
    QFSentence s = parse_or();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError("unexpected trailing input", pos_);
    return s;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int parse_index(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError(std::string("expected ") + what, pos_);
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  QFSentence parse_or() {
    std::vector<QFSentence> parts;
    parts.push_back(parse_and());
    while (eat('|')) parts.push_back(parse_and());
    return parts.size() == 1 ? std::move(parts[0]) : QFSentence::disjunction(std::move(parts));
  }

  QFSentence parse_and() {
    std::vector<QFSentence> parts;
    parts.push_back(parse_unary());
    while (eat('&')) parts.push_back(parse_unary());
    return parts.size() == 1 ? std::move(parts[0]) : QFSentence::conjunction(std::move(parts));
  }

  QFSentence parse_unary() {
    skip_ws();
    if (eat('~')) return QFSentence::negation(parse_unary());
    if (eat('(')) {
      QFSentence s = parse_or();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return s;
    }
    if (pos_ < text_.size() && text_[pos_] == 'P') {
      ++pos_;
      int pred = parse_index("predicate index");
      if (!eat('(')) throw ParseError("expected '(' in literal", pos_);
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != 'a') throw ParseError("expected 'a'", pos_);
      ++pos_;
      int cons = parse_index("constant index");
      if (!eat(')')) throw ParseError("expected ')' in literal", pos_);
      return QFSentence::literal(pred, cons, true);
    }
    throw ParseError("expected literal, '~' or '('", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QFSentence parse_qf(std::string_view text) { return QFParser(text).parse(); }

bool models(const StateDescription& sd, const QFSentence& s) {
  switch (s.kind()) {
    case QFSentence::Kind::Literal: {
      if (s.predicate() > sd.q()) {
        throw BoundsError("predicate P" + std::to_string(s.predicate()) +
                          " not in language L_" + std::to_string(sd.q()));
      }
      Atom atom(sd.q(), sd.atom_index(s.constant()));
      bool value = !atom.negated(s.predicate());
      return s.positive() ? value : !value;
    }
    case QFSentence::Kind::Not:
      return !models(sd, s.operands()[0]);
    case QFSentence::Kind::And:
      return std::all_of(s.operands().begin(), s.operands().end(),
                         [&](const QFSentence& op) { return models(sd, op); });
    case QFSentence::Kind::Or:
      return std::any_of(s.operands().begin(), s.operands().end(),
                         [&](const QFSentence& op) { return models(sd, op); });
  }
  throw InternalError("unreachable sentence kind");
}

}  // namespace pilex
