#pragma once

// .aqg text format:
//
//   AQG 1
//   nodes N arcs M quad K          (or: nodes N arcs M quad FUNC <tag...>)
//   tail head cost                 (M lines)
//   i j k cost                     (K lines, stored models only)
//
// Node ids are 0-based; costs are decimal floats written in shortest
// round-trip form. A functional model is named by a registered tag whose
// first token selects a factory and whose remaining tokens are its
// arguments, e.g. "grid_turn 100 100 1 0".

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqsp/quad_graph.hpp"

namespace aqsp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Builds an evaluator from tag arguments for a graph with `node_count` nodes.
using QuadFactory = std::function<QuadFunction(const std::vector<std::string>& args, NodeId node_count)>;

/// Adds or replaces a tag. Built-ins: "zero", "grid_turn rows cols weight
/// wrap" and "scaled lambda <inner tag...>".
void register_quad_function(const std::string& name, QuadFactory factory);

/// Throws std::invalid_argument for unknown tags or bad arguments.
QuadFunction resolve_quad_tag(const std::string& tag, NodeId node_count);

QuadGraph read_aqg(std::istream& in);
QuadGraph read_aqg_file(const std::filesystem::path& path);

/// Throws std::invalid_argument when the graph has an untagged functional
/// model (nothing to write that could be read back).
void write_aqg(std::ostream& out, const QuadGraph& g);
void write_aqg_file(const std::filesystem::path& path, const QuadGraph& g);

/// Shortest decimal form that parses back to the same double.
std::string format_cost(double value);

}  // namespace aqsp
