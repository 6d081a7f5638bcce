#pragma once

#include <string>
#include <string_view>

#include "arrowkit/orders.hpp"
#include "arrowkit/profiles.hpp"

namespace arrowkit {

/// Weak orders are written as ordered partitions: `a>b~c` puts a strictly
/// above b and c, which are tied. Within a tie group labels follow carrier
/// order, so printing is canonical and parse(format(r)) == r.
///
///   chain := group ('>' group)*
///   group := label ('~' label)*
std::string format_chain(const Relation& weak_order);

/// Chain syntax for weak orders, `{(a,b),(b,c)}` pair-set syntax otherwise.
std::string format_relation(const Relation& rel);

/// Every carrier label must appear exactly once. Throws ParseError with a
/// 1-based column (line 0).
Relation parse_chain(const AlternativeSet& carrier, std::string_view text);
/// Accepts either syntax produced by format_relation.
Relation parse_relation(const AlternativeSet& carrier, std::string_view text);

/// Per-voter chains joined by ` ; `.
std::string format_profile(const Profile& p);
Profile parse_profile(const AlternativeSet& carrier, std::string_view text);

}  // namespace arrowkit
