#ifndef PILEX_RATIONAL_HPP
#define PILEX_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace pilex {

// All arithmetic in the library is exact. GMP rationals are kept in
// canonical form (gcd(num, den) = 1, den > 0), so equality is structural.
using Rat = mpq_class;

// Parses "num/den" or "num" with optional leading '-'. Whitespace around the
// number is accepted; anything else is a parse error.
Rat parse_rat(std::string_view text);

// Renders in the same "num/den" form; integers render without the "/den".
std::string format_rat(const Rat& value);

// Comma- or whitespace-separated list of rationals, e.g. "1/2,1/4,1/8,1/8".
std::vector<Rat> parse_rat_list(std::string_view text);

}  // namespace pilex

#endif
