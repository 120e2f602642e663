#include "catmod/constant_graph.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "catmod/decomposition.hpp"
#include "catmod/error.hpp"

namespace catmod {

ConstantGraph::ConstantGraph(Prime p, const std::vector<Residue>& multipliers)
    : p_(p), out_degree_(multipliers.size()) {
  for (std::uint32_t c = 1; c < p.value(); ++c) {
    vertices_.push_back(c);
    for (std::uint32_t d = 0; d < multipliers.size(); ++d) {
      edges_.push_back({c, d, fp_mul(Residue{c}, multipliers[d], p).value});
    }
  }
}

std::vector<GraphEdge> ConstantGraph::out_edges(std::uint32_t c) const {
  if (c == 0 || c >= p_.value()) throw Error(ErrorCode::invalid_argument, "not a vertex of G");
  const auto first = edges_.begin() + static_cast<std::ptrdiff_t>((c - 1) * out_degree_);
  return {first, first + static_cast<std::ptrdiff_t>(out_degree_)};
}

std::uint32_t ConstantGraph::follow(std::uint32_t c, std::uint32_t d) const {
  if (c == 0 || c >= p_.value() || d >= out_degree_) {
    throw Error(ErrorCode::invalid_argument,
                "no edge (" + std::to_string(c) + ", " + std::to_string(d) + ") in G");
  }
  return edges_[(c - 1) * out_degree_ + d].target;
}

ConstantGraph build_graph(Prime p) {
  std::vector<Residue> multipliers;
  for (std::uint32_t d = 0; d <= p.half(); ++d) multipliers.push_back(central_binomial_mod(d, p));
  return ConstantGraph(p, multipliers);
}

bool strongly_connected(const std::vector<std::uint32_t>& vertices, const std::vector<GraphEdge>& edges) {
  if (vertices.empty()) return false;
  std::vector<std::uint32_t> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  auto position = [&](std::uint32_t v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) throw Error(ErrorCode::invalid_argument, "edge endpoint is not a vertex");
    return static_cast<std::size_t>(it - sorted.begin());
  };
  const std::size_t n = sorted.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const GraphEdge& e : edges) adj[position(e.source)].push_back(position(e.target));

  // Iterative Tarjan.
  constexpr std::size_t kUnvisited = SIZE_MAX;
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  std::size_t components = 0;
  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_edge < adj[f.v].size()) {
        const std::size_t w = adj[f.v][f.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == index[v]) {
        ++components;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
        } while (w != v);
      }
    }
  }
  return components == 1;
}

bool strongly_connected(const ConstantGraph& graph) {
  return strongly_connected(graph.vertices(), graph.edges());
}

std::vector<std::uint32_t> path_between(Residue c1, Residue c2, Prime p) {
  if (c1.value == 0 || c2.value == 0) {
    throw Error(ErrorCode::invalid_argument, "path_between: endpoints must be non-zero");
  }
  return flatten(decompose_residue(fp_mul(c2, fp_inverse(c1, p), p), p));
}

bool validate_walk(const WalkCertificate& walk, const ConstantGraph& graph) {
  if (walk.vertices.size() != walk.labels.size() + 1) return false;
  if (walk.vertices.front() != walk.start || walk.vertices.back() != walk.start) return false;
  std::vector<bool> seen(graph.prime().value(), false);
  for (std::size_t i = 0; i < walk.labels.size(); ++i) {
    const std::uint32_t c = walk.vertices[i];
    if (c == 0 || c >= graph.prime().value() || walk.labels[i] > graph.prime().half()) return false;
    if (graph.follow(c, walk.labels[i]) != walk.vertices[i + 1]) return false;
    seen[c] = true;
  }
  seen[walk.start] = true;
  std::vector<std::uint32_t> visited;
  for (std::uint32_t c = 1; c < seen.size(); ++c) {
    if (seen[c]) visited.push_back(c);
  }
  return visited == walk.visited;
}

WalkCertificate closed_walk_all_vertices(const ConstantGraph& graph) {
  const Prime p = graph.prime();
  if (!strongly_connected(graph)) {
    throw Error(ErrorCode::property_violation, "closed walk requested on a graph that is not strongly connected");
  }
  const auto& order = graph.vertices();
  WalkCertificate walk{order.front(), {}, {order.front()}, {}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::uint32_t from = order[i];
    const std::uint32_t to = order[(i + 1) % order.size()];
    for (std::uint32_t d : path_between(Residue{from}, Residue{to}, p)) {
      walk.labels.push_back(d);
      walk.vertices.push_back(graph.follow(walk.vertices.back(), d));
    }
    if (walk.vertices.back() != to) {
      throw Error(ErrorCode::property_violation,
                  "path from " + std::to_string(from) + " ends at " + std::to_string(walk.vertices.back()) +
                      " instead of " + std::to_string(to));
    }
  }
  std::vector<bool> seen(p.value(), false);
  for (std::uint32_t v : walk.vertices) seen[v] = true;
  for (std::uint32_t c = 1; c < p.value(); ++c) {
    if (seen[c]) walk.visited.push_back(c);
  }
  if (!validate_walk(walk, graph) || walk.visited.size() != order.size()) {
    throw Error(ErrorCode::property_violation, "closed walk failed validation");
  }
  return walk;
}

bool automaton_correspondence(const WalkCertificate& walk, const Dfao& dfao, const FamilyTable& families) {
  const auto start = families.constant_member(Residue{walk.start});
  if (!start) {
    throw Error(ErrorCode::property_violation,
                "constant family has no member labelled " + std::to_string(walk.start));
  }
  std::uint32_t state = *start;
  for (std::size_t i = 0; i < walk.labels.size(); ++i) {
    state = digit_pair_action(dfao, families, state, walk.labels[i]);
    if (families.constant_label(state) != Residue{walk.vertices[i + 1]}) {
      throw Error(ErrorCode::property_violation,
                  "automaton walk diverges from G at step " + std::to_string(i));
    }
  }
  return true;
}

}  // namespace catmod
