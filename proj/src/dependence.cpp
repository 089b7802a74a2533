#include "canonc/dependence.hpp"

#include <algorithm>
#include <queue>

#include "canonc/analysis.hpp"
#include "canonc/errors.hpp"

namespace canonc {

std::string_view to_string(DepKind kind) {
  switch (kind) {
    case DepKind::Flow: return "flow";
    case DepKind::Anti: return "anti";
    case DepKind::Output: return "output";
    case DepKind::ControlBarrier: return "control-barrier";
  }
  return "?";
}

const DepEdge* DependenceGraph::find(std::size_t from, std::size_t to) const {
  auto it = std::find_if(edges.begin(), edges.end(),
                         [&](const DepEdge& e) { return e.from == from && e.to == to; });
  return it == edges.end() ? nullptr : &*it;
}

bool DependenceGraph::has_edge(std::size_t from, std::size_t to) const {
  return find(from, to) != nullptr;
}

namespace {

bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

}  // namespace

DependenceGraph build_dependence_graph(std::span<const Stmt> block,
                                       const std::set<std::string>& globals) {
  DependenceGraph g;
  g.size = block.size();
  std::vector<StmtAccess> acc;
  std::vector<bool> global_touch;
  acc.reserve(block.size());
  for (const Stmt& s : block) {
    acc.push_back(access_of(s));
    const StmtAccess& a = acc.back();
    global_touch.push_back(!globals.empty() &&
                           (intersects(a.reads, globals) || intersects(a.writes, globals)));
  }
  for (std::size_t j = 0; j < block.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const StmtAccess& a = acc[i];
      const StmtAccess& b = acc[j];
      std::optional<DepKind> kind;
      if (intersects(a.writes, b.reads)) {
        kind = DepKind::Flow;
      } else if (intersects(a.reads, b.writes)) {
        kind = DepKind::Anti;
      } else if (intersects(a.writes, b.writes)) {
        kind = DepKind::Output;
      } else if (a.escapes || b.escapes || (a.has_call && b.has_call) ||
                 (a.has_call && global_touch[j]) || (b.has_call && global_touch[i])) {
        kind = DepKind::ControlBarrier;
      }
      if (kind) g.edges.push_back({i, j, *kind});
    }
  }
  return g;
}

bool independent(const DependenceGraph& g, std::size_t i, std::size_t j) {
  if (i >= g.size || j >= g.size)
    throw ParameterError("InvalidParameter", "statement index out of range");
  if (i == j) throw ParameterError("InvalidParameter", "independence of a statement with itself");
  std::size_t lo = std::min(i, j);
  std::size_t hi = std::max(i, j);
  // Edges point forward, so only a path lo -> hi is possible.
  std::vector<bool> reach(g.size, false);
  reach[lo] = true;
  std::vector<DepEdge> edges = g.edges;
  std::sort(edges.begin(), edges.end(),
            [](const DepEdge& a, const DepEdge& b) { return a.from < b.from; });
  for (const DepEdge& e : edges)
    if (e.from >= lo && e.to <= hi && reach[e.from]) reach[e.to] = true;
  return !reach[hi];
}

std::vector<std::size_t> order_topologically(const DependenceGraph& g,
                                             std::span<const std::string> keys) {
  if (keys.size() != g.size)
    throw ParameterError("InvalidParameter", "one sort key per statement required");
  std::vector<std::vector<std::size_t>> succ(g.size);
  std::vector<std::size_t> indegree(g.size, 0);
  for (const DepEdge& e : g.edges) {
    succ[e.from].push_back(e.to);
    ++indegree[e.to];
  }
  auto later = [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] > keys[b];
    return a > b;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
  for (std::size_t i = 0; i < g.size; ++i)
    if (indegree[i] == 0) ready.push(i);
  std::vector<std::size_t> order;
  order.reserve(g.size);
  while (!ready.empty()) {
    std::size_t n = ready.top();
    ready.pop();
    order.push_back(n);
    for (std::size_t m : succ[n])
      if (--indegree[m] == 0) ready.push(m);
  }
  return order;
}

}  // namespace canonc
