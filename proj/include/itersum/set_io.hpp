#ifndef ITERSUM_SET_IO_HPP
#define ITERSUM_SET_IO_HPP

#include <iosfwd>
#include <string>

#include "itersum/grouped_set.hpp"

namespace itersum {

// Set text format: optional `#monoid: additive|multiplicative` header
// (default additive), then one element per line as `p` or `p/q`.
GroupedSet read_set(std::istream& in);
GroupedSet read_set_file(const std::string& path);

std::string format_set(const GroupedSet& s);
void write_set(std::ostream& out, const GroupedSet& s);
// Atomic: writes to a temp file in the same directory, then renames.
void write_set_file(const std::string& path, const GroupedSet& s);

// Atomic text file write used for every emitted artifact.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace itersum

#endif
