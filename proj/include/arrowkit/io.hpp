#pragma once

#include <iosfwd>
#include <string>

#include "arrowkit/profiles.hpp"
#include "arrowkit/swf.hpp"

namespace arrowkit {

// Plain-text files. Blank lines and text after '#' are ignored.
//
//   alternatives: a b c
//   voters: 2
//   domain: full-weak            (or full-linear; omit to list profiles)
//
// A domain file then lists one profile per line (`a>b~c ; c>a>b`) unless a
// `domain:` line is given. An SWF file lists `<profile> -> <relation>` lines
// covering the domain exactly once; without a `domain:` line the listed
// profiles form the domain.

/// Throws ParseError with the 1-based line and column.
DomainPtr read_domain(std::istream& in);
void write_domain(std::ostream& out, const Domain& domain);

/// Outputs that are not weak orders load under OutputPolicy::any_relation.
Swf read_swf(std::istream& in);
void write_swf(std::ostream& out, const Swf& swf);

/// File wrappers; throw Error when the file cannot be opened or written.
DomainPtr load_domain(const std::string& path);
Swf load_swf(const std::string& path);
void save_swf(const std::string& path, const Swf& swf);

}  // namespace arrowkit
