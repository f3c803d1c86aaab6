#pragma once

#include <string>
#include <string_view>

#include "qiso/rewrite.hpp"
#include "qiso/words.hpp"

// Textual grammars shared by the CLI and the config files.
//
//   word       letters 1..d separated by whitespace or commas; "e" is
//              the empty word.
//   tail       "u;v" with u possibly empty, e.g. "1;2" for 1 2 2 2 ...
//              and ";1,2" for the period (1,2) repeated.
//   star word  tokens "j" and "j*" separated by whitespace, e.g.
//              "1* 2 1 2*".

namespace qiso::text {

Word parse_word(std::string_view s);
std::string format_word(const Word& w);

Tail parse_tail(std::string_view s);
std::string format_tail(const Tail& t);

/// Parse errors carry the 1-based column of the offending token;
/// letters above d are rejected.
std::vector<rewrite::Symbol> parse_star_word(std::string_view s, int d);

/// "coeff * s_mu s_nu*" with the coefficient printed to 15 significant
/// digits; "I" replaces an empty monomial word pair.
std::string format_monomial(const rewrite::Monomial& m);

}  // namespace qiso::text
