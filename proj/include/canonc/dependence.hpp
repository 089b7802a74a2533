#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "canonc/ast.hpp"

namespace canonc {

enum class DepKind { Flow, Anti, Output, ControlBarrier };

std::string_view to_string(DepKind kind);

struct DepEdge {
  std::size_t from;
  std::size_t to;
  DepKind kind;
  friend bool operator==(const DepEdge&, const DepEdge&) = default;
};

/// Def/use dependences among the statements of one block. Nested statements
/// count as single compound nodes. Edges always point forward (from < to),
/// so the graph is acyclic.
struct DependenceGraph {
  std::size_t size = 0;
  std::vector<DepEdge> edges;

  bool has_edge(std::size_t from, std::size_t to) const;
  const DepEdge* find(std::size_t from, std::size_t to) const;
};

/// Edge (i, j) for i < j when j reads what i writes (flow), j writes what i
/// reads (anti), both write one variable (output), or either statement leaves
/// the block early, both call functions, or one calls while the other touches
/// a name in `globals` (control barrier). The first applicable label in that
/// order is used.
DependenceGraph build_dependence_graph(std::span<const Stmt> block,
                                       const std::set<std::string>& globals = {});

/// True iff no directed path joins i and j either way. Throws ParameterError
/// (InvalidParameter) for i == j or an out-of-range index.
bool independent(const DependenceGraph& g, std::size_t i, std::size_t j);

/// Linear extension of `g` choosing, at every step, the ready statement with
/// the smallest key; ties go to the lower original index.
std::vector<std::size_t> order_topologically(const DependenceGraph& g,
                                             std::span<const std::string> keys);

}  // namespace canonc
