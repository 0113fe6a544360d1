#pragma once

#include "qk/digraph.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace qk::io {

enum class Format { edgelist, dot };

Format parse_format(std::string_view name);

/// Edge-list text: first line "n m", then m lines "u v". '#' starts a
/// comment that runs to end of line; blank lines are ignored.
Digraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Digraph& d);

/// DOT subset: `digraph <id> { u -> v; w; ... }` with non-negative integer
/// vertex ids. Chains `a -> b -> c` are accepted, attribute lists `[...]`
/// are skipped. The vertex count is one more than the largest id seen.
Digraph read_dot(std::istream& in);
void write_dot(std::ostream& out, const Digraph& d);

Digraph read(std::istream& in, Format format);
void write(std::ostream& out, const Digraph& d, Format format);

} // namespace qk::io
