#ifndef KERNELHOOD_DIGRAPH_HPP
#define KERNELHOOD_DIGRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kernelhood/error.hpp"

namespace kernelhood {

// A subset of a digraph's vertices. Kept as a sorted set of ids so that
// every rendering and iteration is reproducible byte-for-byte.
using VertexSet = std::set<std::string>;

// Height of a digraph: the largest n for which some walk of n edges
// exists, or infinite when a cycle makes walks unbounded.
class Height {
public:
  static Height finite(std::size_t k) { return Height(k); }
  static Height infinite() { return Height(); }

  bool is_finite() const { return value_.has_value(); }
  std::size_t value() const {
    if (!value_) throw DomainError("infinite-height", "height is infinite");
    return *value_;
  }
  std::string str() const { return value_ ? std::to_string(*value_) : "infinite"; }

  friend bool operator==(const Height& a, const Height& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Height& a, const Height& b) { return !(a == b); }

private:
  Height() = default;
  explicit Height(std::size_t k) : value_(k) {}
  std::optional<std::size_t> value_;
};

// Finite digraph (A, E). Vertices are opaque string ids; edges are a set
// of ordered pairs (no multi-edges; self-loops are legal input). Values
// are immutable after construction and safe to share across threads.
class Digraph {
public:
  Digraph() = default;

  Digraph(const std::vector<std::string>& vertex_ids,
          const std::vector<std::pair<std::string, std::string>>& edge_list) {
    std::set<std::string> uniq(vertex_ids.begin(), vertex_ids.end());
    ids_.assign(uniq.begin(), uniq.end());
    for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = i;
    std::vector<std::set<std::size_t>> succ(ids_.size());
    for (const auto& [a, b] : edge_list) {
      succ[index_of(a)].insert(index_of(b));
    }
    succ_.resize(ids_.size());
    for (std::size_t i = 0; i < succ.size(); ++i) {
      succ_[i].assign(succ[i].begin(), succ[i].end());
      edge_count_ += succ_[i].size();
    }
  }

  std::size_t vertex_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  // Sorted.
  const std::vector<std::string>& vertex_ids() const { return ids_; }

  VertexSet all_vertices() const { return VertexSet(ids_.begin(), ids_.end()); }

  bool has_vertex(const std::string& id) const { return index_.count(id) != 0; }

  std::size_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
      throw DomainError("unknown-vertex", "unknown vertex '" + id + "'");
    return it->second;
  }

  const std::string& id_of(std::size_t i) const { return ids_.at(i); }

  // Successor indices, sorted.
  const std::vector<std::size_t>& successors_of(std::size_t i) const { return succ_.at(i); }

  bool has_edge(std::size_t a, std::size_t b) const {
    const auto& s = succ_.at(a);
    return std::binary_search(s.begin(), s.end(), b);
  }

  // All edges as id pairs, sorted lexicographically.
  std::vector<std::pair<std::string, std::string>> edge_list() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(edge_count_);
    for (std::size_t a = 0; a < succ_.size(); ++a)
      for (std::size_t b : succ_[a]) out.emplace_back(ids_[a], ids_[b]);
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  std::vector<std::string> ids_;            // sorted
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> succ_;
  std::size_t edge_count_ = 0;
};

namespace detail {

// Validates s ⊆ vertices(g) and converts to an index membership mask.
inline std::vector<char> member_mask(const Digraph& g, const VertexSet& s) {
  std::vector<char> mask(g.vertex_count(), 0);
  for (const auto& id : s) mask[g.index_of(id)] = 1;
  return mask;
}

inline VertexSet ids_from_mask(const Digraph& g, const std::vector<char>& mask) {
  VertexSet out;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.insert(g.id_of(i));
  return out;
}

// DFS cycle search restricted to the induced subdigraph on `mask`.
// Returns a cycle as a vertex index sequence v0, v1, ..., vk with
// v0 E v1 E ... E vk E v0, or nullopt if the induced subdigraph is acyclic.
inline std::optional<std::vector<std::size_t>> find_cycle_indices(
    const Digraph& g, const std::vector<char>& mask) {
  enum : char { White, Grey, Black };
  std::vector<char> color(g.vertex_count(), White);
  std::vector<std::size_t> parent(g.vertex_count(), 0);

  for (std::size_t root = 0; root < g.vertex_count(); ++root) {
    if (!mask[root] || color[root] != White) continue;
    // Iterative DFS; the stack keeps (vertex, next successor position).
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    color[root] = Grey;
    while (!stack.empty()) {
      auto& [v, pos] = stack.back();
      const auto& succ = g.successors_of(v);
      bool advanced = false;
      while (pos < succ.size()) {
        std::size_t w = succ[pos++];
        if (!mask[w]) continue;
        if (color[w] == Grey) {
          // Cycle: w ... v -> w. Walk parents from v back to w.
          std::vector<std::size_t> cycle{w};
          for (std::size_t u = v; u != w; u = parent[u]) cycle.push_back(u);
          std::reverse(cycle.begin() + 1, cycle.end());
          return cycle;
        }
        if (color[w] == White) {
          color[w] = Grey;
          parent[w] = v;
          stack.emplace_back(w, 0);
          advanced = true;
          break;
        }
      }
      if (!advanced && pos >= succ.size()) {
        color[v] = Black;
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

inline std::string render_cycle(const Digraph& g, const std::vector<std::size_t>& cycle) {
  std::string out;
  for (std::size_t v : cycle) {
    out += g.id_of(v);
    out += "->";
  }
  out += g.id_of(cycle.front());
  return out;
}

}  // namespace detail

// { b : aEb }
inline VertexSet successors(const Digraph& g, const std::string& a) {
  VertexSet out;
  for (std::size_t b : g.successors_of(g.index_of(a))) out.insert(g.id_of(b));
  return out;
}

// aE^n b: walks of length exactly n. E^0 is equality; E^{n+1} composes one
// edge with E^n.
inline bool reaches_n(const Digraph& g, const std::string& a, const std::string& b,
                      std::size_t n) {
  std::size_t target = g.index_of(b);
  std::vector<char> frontier(g.vertex_count(), 0);
  frontier[g.index_of(a)] = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<char> next(g.vertex_count(), 0);
    bool any = false;
    for (std::size_t v = 0; v < frontier.size(); ++v) {
      if (!frontier[v]) continue;
      for (std::size_t w : g.successors_of(v)) {
        next[w] = 1;
        any = true;
      }
    }
    if (!any) return false;
    frontier = std::move(next);
  }
  return frontier[target] != 0;
}

// Sinks of the induced subdigraph on `within`: members with no successor
// inside `within` (edges leaving `within` do not count).
inline VertexSet sinks(const Digraph& g, const VertexSet& within) {
  auto mask = detail::member_mask(g, within);
  VertexSet out;
  for (const auto& id : within) {
    bool sink = true;
    for (std::size_t w : g.successors_of(g.index_of(id))) {
      if (mask[w]) {
        sink = false;
        break;
      }
    }
    if (sink) out.insert(id);
  }
  return out;
}

// A cycle witness in the induced subdigraph, as ids v0, v1, ..., vk with
// v0 E v1 E ... E vk E v0; nullopt when acyclic.
inline std::optional<std::vector<std::string>> find_cycle(const Digraph& g,
                                                          const VertexSet& within) {
  auto found = detail::find_cycle_indices(g, detail::member_mask(g, within));
  if (!found) return std::nullopt;
  std::vector<std::string> ids;
  ids.reserve(found->size());
  for (std::size_t v : *found) ids.push_back(g.id_of(v));
  return ids;
}

inline std::optional<std::vector<std::string>> find_cycle(const Digraph& g) {
  return find_cycle(g, g.all_vertices());
}

// No directed cycle (no aE^na with n >= 1).
inline bool is_dag(const Digraph& g) {
  return !detail::find_cycle_indices(g, std::vector<char>(g.vertex_count(), 1));
}

// Every nonempty subset of `within` has a sink in its induced subdigraph.
// On finite digraphs this is acyclicity of the induced subdigraph, which is
// how it is decided here; well_founded_by_peeling is the independent route.
inline bool is_well_founded(const Digraph& g, const VertexSet& within) {
  return !detail::find_cycle_indices(g, detail::member_mask(g, within));
}

inline bool is_well_founded(const Digraph& g) { return is_well_founded(g, g.all_vertices()); }

// Peels sinks of the remaining induced subdigraph until nothing is left
// (well-founded) or no sink exists (not well-founded). Cross-tested against
// is_well_founded.
inline bool well_founded_by_peeling(const Digraph& g, const VertexSet& within) {
  auto mask = detail::member_mask(g, within);
  std::size_t remaining = within.size();
  while (remaining > 0) {
    std::vector<std::size_t> peel;
    for (std::size_t v = 0; v < mask.size(); ++v) {
      if (!mask[v]) continue;
      bool sink = true;
      for (std::size_t w : g.successors_of(v)) {
        if (mask[w]) {
          sink = false;
          break;
        }
      }
      if (sink) peel.push_back(v);
    }
    if (peel.empty()) return false;
    for (std::size_t v : peel) mask[v] = 0;
    remaining -= peel.size();
  }
  return true;
}

// Cl_k(X) by the defining recursion: Cl_0(X) = X and
// Cl_{k+1}(X) = X ∪ { a : dEa for some d in Cl_k(X) }. The union really is
// with X, not with Cl_k(X); the monotonicity property test pins down that
// the result is still increasing in k.
inline VertexSet closure_k(const Digraph& g, const VertexSet& x, std::size_t k) {
  auto base = detail::member_mask(g, x);
  auto cur = base;
  for (std::size_t step = 0; step < k; ++step) {
    auto next = base;
    for (std::size_t v = 0; v < cur.size(); ++v) {
      if (!cur[v]) continue;
      for (std::size_t w : g.successors_of(v)) next[w] = 1;
    }
    if (next == cur) break;  // saturated
    cur = std::move(next);
  }
  return detail::ids_from_mask(g, cur);
}

// Cl(X): the smallest closed superset of X (union of all Cl_k(X)).
inline VertexSet closure(const Digraph& g, const VertexSet& x) {
  auto mask = detail::member_mask(g, x);
  std::vector<std::size_t> work;
  for (std::size_t v = 0; v < mask.size(); ++v)
    if (mask[v]) work.push_back(v);
  while (!work.empty()) {
    std::size_t v = work.back();
    work.pop_back();
    for (std::size_t w : g.successors_of(v)) {
      if (!mask[w]) {
        mask[w] = 1;
        work.push_back(w);
      }
    }
  }
  return detail::ids_from_mask(g, mask);
}

// No edge leaves d.
inline bool is_closed(const Digraph& g, const VertexSet& d) {
  auto mask = detail::member_mask(g, d);
  for (const auto& id : d)
    for (std::size_t w : g.successors_of(g.index_of(id)))
      if (!mask[w]) return false;
  return true;
}

// Height of the induced subdigraph on `within`: the least k such that no
// walk of k+1 edges exists, i.e. the longest directed path when acyclic;
// infinite when the induced subdigraph has a cycle. Empty and edgeless
// sets have height 0.
inline Height height(const Digraph& g, const VertexSet& within) {
  auto mask = detail::member_mask(g, within);
  // Kahn peel by out-degree within the mask; longest-path DP as we go.
  std::vector<std::size_t> outdeg(g.vertex_count(), 0);
  std::vector<std::vector<std::size_t>> preds(g.vertex_count());
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (!mask[v]) continue;
    for (std::size_t w : g.successors_of(v)) {
      if (mask[w]) {
        ++outdeg[v];
        preds[w].push_back(v);
      }
    }
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < mask.size(); ++v)
    if (mask[v] && outdeg[v] == 0) ready.push_back(v);
  std::vector<std::size_t> longest(g.vertex_count(), 0);
  std::size_t processed = 0, best = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++processed;
    best = std::max(best, longest[v]);
    for (std::size_t p : preds[v]) {
      longest[p] = std::max(longest[p], longest[v] + 1);
      if (--outdeg[p] == 0) ready.push_back(p);
    }
  }
  if (processed != within.size()) return Height::infinite();
  return Height::finite(best);
}

inline Height height(const Digraph& g) { return height(g, g.all_vertices()); }

// Local-finite-height witness: k(m) = max over all F ⊆ A with |F| <= m of
// Ht(Cl_m(F)). Brute force over all such F, O(|V|^m) work, intended for
// small inputs only. Infinite as soon as one closure contains a cycle.
inline Height lfh_witness(const Digraph& g, std::size_t m) {
  std::size_t n = g.vertex_count();
  std::size_t best = 0;
  std::vector<std::size_t> combo;
  // Enumerates all subsets of size `take` via the usual combination walk.
  auto run_size = [&](std::size_t take, auto&& self) -> std::optional<Height> {
    if (combo.size() == take) {
      VertexSet f;
      for (std::size_t i : combo) f.insert(g.id_of(i));
      Height h = height(g, closure_k(g, f, m));
      if (!h.is_finite()) return Height::infinite();
      best = std::max(best, h.value());
      return std::nullopt;
    }
    std::size_t start = combo.empty() ? 0 : combo.back() + 1;
    for (std::size_t i = start; i < n; ++i) {
      combo.push_back(i);
      if (auto stop = self(take, self)) return stop;
      combo.pop_back();
    }
    return std::nullopt;
  };
  for (std::size_t take = 0; take <= std::min(m, n); ++take) {
    combo.clear();
    if (auto stop = run_size(take, run_size)) return *stop;
  }
  return Height::finite(best);
}

// The induced subdigraph on `within` as a standalone digraph.
inline Digraph induced_subdigraph(const Digraph& g, const VertexSet& within) {
  auto mask = detail::member_mask(g, within);
  std::vector<std::string> ids(within.begin(), within.end());
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& id : within)
    for (std::size_t w : g.successors_of(g.index_of(id)))
      if (mask[w]) edges.emplace_back(id, g.id_of(w));
  return Digraph(ids, edges);
}

}  // namespace kernelhood

#endif  // KERNELHOOD_DIGRAPH_HPP
