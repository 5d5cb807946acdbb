#pragma once

// Reader and writer for the line-oriented `.plumb` text format:
//
//   # comment
//   vertices: a:-2 b:-3
//   vertices: c:-2
//   edges: a-b
//   edges: b-c
//
// `vertices:` lines come first and accumulate; `edges:` lines follow and accumulate.

#include <cstddef>
#include <string>
#include <string_view>

#include "plumb/core.hpp"
#include "plumb/graph.hpp"

namespace plumb {

class ParseError : public InputError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

PlumbingGraph parse_graph(std::string_view text);
PlumbingGraph read_graph_file(const std::string& path);

/// One vertices line and one edges line; ids in declaration order, edges sorted
/// by endpoint positions.
std::string serialize_graph(const PlumbingGraph& g);

}  // namespace plumb
