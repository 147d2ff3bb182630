#ifndef PILEX_ERRORS_HPP
#define PILEX_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pilex {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input. `position` is a 0-based offset into the input
// when known, or npos.
struct ParseError : Error {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  explicit ParseError(const std::string& what, std::size_t position = npos)
      : Error(what), position(position) {}
  std::size_t position;
};

// Structural misuse: size mismatches, invalid indices, malformed parameters.
struct BoundsError : Error {
  using Error::Error;
};

// A resource guard would be exceeded (enumeration too large, q too big).
struct GuardError : Error {
  using Error::Error;
};

// Operation requires a language-family function (vpt/vptn or mixtures).
struct FamilyError : Error {
  using Error::Error;
};

// Exact linear algebra hit a singular matrix.
struct SingularMatrixError : Error {
  using Error::Error;
};

// The regularity search ran out of attempts; message lists the seeds tried.
struct RegularitySearchError : Error {
  using Error::Error;
};

// An identity the construction guarantees failed to verify. Must not occur.
struct InternalError : Error {
  using Error::Error;
};

// Enumeration budgets. Every enumerating operation is exponential in
// something, so callers can widen (or tighten) these explicitly.
struct Guards {
  int max_q_syntax = 16;                        // atoms, parsing, formatting
  std::uint64_t max_enum = std::uint64_t{1} << 24;  // state-description spaces
  int max_group_q = 4;                          // spectrum-preserving group
  int max_decompose_q = 2;
  bool allow_q3_classes = false;                // orbit-class enumeration at q=3
};

inline const Guards& default_guards() {
  static const Guards g{};
  return g;
}

}  // namespace pilex

#endif
