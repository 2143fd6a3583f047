#ifndef KERNELHOOD_KERNEL_HPP
#define KERNELHOOD_KERNEL_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <string>
#include <vector>

#include "kernelhood/digraph.hpp"
#include "kernelhood/error.hpp"

namespace kernelhood {

// The defining biconditional, checked at every vertex:
// a ∈ K iff every successor b of a has b ∉ K.
inline bool is_kernel(const Digraph& g, const VertexSet& k) {
  auto mask = detail::member_mask(g, k);
  for (std::size_t a = 0; a < g.vertex_count(); ++a) {
    bool all_out = true;
    for (std::size_t b : g.successors_of(a)) {
      if (mask[b]) {
        all_out = false;
        break;
      }
    }
    if (static_cast<bool>(mask[a]) != all_out) return false;
  }
  return true;
}

// The unique kernel of a finite DAG, by reverse-topological sweep: a vertex
// joins K iff all of its (already decided) successors are outside K.
// Cyclic input is rejected with a cycle witness.
inline VertexSet kernel_of_well_founded(const Digraph& g) {
  auto all = std::vector<char>(g.vertex_count(), 1);
  if (auto cycle = detail::find_cycle_indices(g, all))
    throw DomainError("cyclic",
                      "not a DAG, no unique kernel: cycle " + detail::render_cycle(g, *cycle));

  std::vector<std::size_t> outdeg(g.vertex_count(), 0);
  std::vector<std::vector<std::size_t>> preds(g.vertex_count());
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    outdeg[v] = g.successors_of(v).size();
    for (std::size_t w : g.successors_of(v)) preds[w].push_back(v);
    if (outdeg[v] == 0) ready.push_back(v);
  }
  std::vector<char> in_kernel(g.vertex_count(), 0);
  std::vector<char> blocked(g.vertex_count(), 0);  // has a successor in K
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    in_kernel[v] = !blocked[v];
    for (std::size_t p : preds[v]) {
      if (in_kernel[v]) blocked[p] = 1;
      if (--outdeg[p] == 0) ready.push_back(p);
    }
  }
  return detail::ids_from_mask(g, in_kernel);
}

// Kernel extension across a well-founded complement: given a closed d with
// kernel k0 and vertices(g)∖d well-founded, produces the unique kernel K of
// g with K ∩ d = k0. Finite worklist form of the ordinal recursion: peel
// sinks of the undecided region; such a sink has all successors decided, so
// its own membership is forced.
inline VertexSet extend_kernel(const Digraph& g, const VertexSet& d, const VertexSet& k0) {
  auto decided = detail::member_mask(g, d);
  if (!is_closed(g, d)) {
    for (const auto& id : d)
      for (std::size_t w : g.successors_of(g.index_of(id)))
        if (!decided[w])
          throw DomainError("not-closed", "set is not closed: edge " + id + "->" + g.id_of(w) +
                                              " leaves it");
  }
  for (const auto& id : k0)
    if (!d.count(id))
      throw DomainError("not-kernel", "kernel0 member '" + id + "' is not in the closed set");
  if (!is_kernel(induced_subdigraph(g, d), k0))
    throw DomainError("not-kernel", "kernel0 is not a kernel of the closed set");
  std::vector<char> undecided(g.vertex_count(), 0);
  std::size_t undecided_count = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!decided[v]) {
      undecided[v] = 1;
      ++undecided_count;
    }
  }
  if (auto cycle = detail::find_cycle_indices(g, undecided))
    throw DomainError("cyclic", "complement of the closed set is not well-founded: cycle " +
                                    detail::render_cycle(g, *cycle));

  auto in_kernel = detail::member_mask(g, k0);
  while (undecided_count > 0) {
    std::vector<std::size_t> peel;
    for (std::size_t v = 0; v < undecided.size(); ++v) {
      if (!undecided[v]) continue;
      bool sink = true;
      for (std::size_t w : g.successors_of(v)) {
        if (undecided[w]) {
          sink = false;
          break;
        }
      }
      if (sink) peel.push_back(v);
    }
    assert(!peel.empty());  // the undecided region is well-founded
    for (std::size_t v : peel) {
      bool blocked = false;
      for (std::size_t w : g.successors_of(v)) {
        if (in_kernel[w]) {
          blocked = true;
          break;
        }
      }
      in_kernel[v] = !blocked;
      undecided[v] = 0;
    }
    undecided_count -= peel.size();
  }
  return detail::ids_from_mask(g, in_kernel);
}

namespace detail {

// Backtracking kernel enumeration with unit propagation. Vertex states:
// unknown / in / out. Rules applied to a fixpoint before each branch:
//   - a vertex with a successor in K is out;
//   - a vertex all of whose successors are out is in;
//   - an out vertex with exactly one undecided successor and no successor
//     in K forces that successor in.
class KernelSearch {
public:
  explicit KernelSearch(const Digraph& g) : g_(g) {}

  std::vector<VertexSet> run() {
    std::vector<signed char> state(g_.vertex_count(), Unknown);
    search(state);
    std::sort(found_.begin(), found_.end());
    return found_;
  }

private:
  enum : signed char { Unknown = 0, In = 1, Out = -1 };

  bool propagate(std::vector<signed char>& state) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v = 0; v < state.size(); ++v) {
        bool any_in = false;
        std::size_t unknowns = 0, unknown_succ = 0;
        for (std::size_t w : g_.successors_of(v)) {
          if (state[w] == In) any_in = true;
          if (state[w] == Unknown) {
            ++unknowns;
            unknown_succ = w;
          }
        }
        if (any_in) {
          if (state[v] == In) return false;
          if (state[v] == Unknown) {
            state[v] = Out;
            changed = true;
          }
        } else if (unknowns == 0) {
          // all successors out (vacuously for sinks)
          if (state[v] == Out) return false;
          if (state[v] == Unknown) {
            state[v] = In;
            changed = true;
          }
        } else if (state[v] == Out && unknowns == 1) {
          state[unknown_succ] = In;
          changed = true;
        } else if (state[v] == In) {
          for (std::size_t w : g_.successors_of(v)) {
            if (state[w] == Unknown) {
              state[w] = Out;
              changed = true;
            }
          }
        }
      }
    }
    return true;
  }

  void search(std::vector<signed char> state) {
    if (!propagate(state)) return;
    std::size_t branch = state.size();
    for (std::size_t v = 0; v < state.size(); ++v) {
      if (state[v] == Unknown) {
        branch = v;
        break;
      }
    }
    if (branch == state.size()) {
      record(state);
      return;
    }
    // lowest vertex id first, "in kernel" branch first
    auto with_in = state;
    with_in[branch] = In;
    search(std::move(with_in));
    state[branch] = Out;
    search(std::move(state));
  }

  void record(const std::vector<signed char>& state) {
    VertexSet k;
    for (std::size_t v = 0; v < state.size(); ++v)
      if (state[v] == In) k.insert(g_.id_of(v));
    if (is_kernel(g_, k)) found_.push_back(std::move(k));
  }

  const Digraph& g_;
  std::vector<VertexSet> found_;
};

}  // namespace detail

// All kernels of g, in deterministic sorted order; empty when none exist.
// Backtracking with unit propagation; intended for small instances.
inline std::vector<VertexSet> kernel_search(const Digraph& g) {
  return detail::KernelSearch(g).run();
}

// One stage of a coherent kernel chain: the kernel of Cl(frontier), with
// kernel_n = kernel_{n+1} ∩ closed_n across consecutive stages.
struct ChainStep {
  std::size_t stage = 0;
  VertexSet frontier;
  VertexSet closed;  // Cl(frontier)
  VertexSet kernel;  // the kernel of the induced subdigraph on `closed`
};

// Builds kernels over the growing chain of closed sets Cl(B_0) ⊆ Cl(B_1) ⊆ …
// Stage 0 comes from the unique-kernel sweep; each later stage extends the
// previous kernel across the (well-founded, since g is acyclic) complement.
inline std::vector<ChainStep> coherent_kernel_chain(const Digraph& g,
                                                    const std::vector<VertexSet>& frontiers) {
  if (auto cycle = find_cycle(g)) {
    std::string witness;
    for (const auto& id : *cycle) witness += id + "->";
    witness += cycle->front();
    throw DomainError("cyclic", "digraph is not acyclic: cycle " + witness);
  }
  std::vector<ChainStep> steps;
  for (std::size_t n = 0; n < frontiers.size(); ++n) {
    ChainStep step;
    step.stage = n;
    step.frontier = frontiers[n];
    step.closed = closure(g, frontiers[n]);
    if (n == 0) {
      step.kernel = kernel_of_well_founded(induced_subdigraph(g, step.closed));
    } else {
      const ChainStep& prev = steps.back();
      if (!std::includes(step.closed.begin(), step.closed.end(), prev.closed.begin(),
                         prev.closed.end()))
        throw DomainError("frontiers",
                          "non-increasing frontiers: Cl(frontier " + std::to_string(n - 1) +
                              ") is not contained in Cl(frontier " + std::to_string(n) + ")");
      step.kernel =
          extend_kernel(induced_subdigraph(g, step.closed), prev.closed, prev.kernel);
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

// Evaluates the locality sentence σ_{F,k} with U read as `u`:
// for every x ∈ Cl_k(F), x ∈ U iff every edge xEy with y ∈ Cl_{k+1}(F)
// has y ∉ U. Kernels satisfy every σ_{F,k}.
inline bool check_locality(const Digraph& g, const VertexSet& u, const VertexSet& f,
                           std::size_t k) {
  auto u_mask = detail::member_mask(g, u);
  VertexSet cl_k = closure_k(g, f, k);
  auto cl_k1_mask = detail::member_mask(g, closure_k(g, f, k + 1));
  for (const auto& x : cl_k) {
    std::size_t xi = g.index_of(x);
    bool rhs = true;
    for (std::size_t y : g.successors_of(xi)) {
      if (cl_k1_mask[y] && u_mask[y]) {
        rhs = false;
        break;
      }
    }
    if (static_cast<bool>(u_mask[xi]) != rhs) return false;
  }
  return true;
}

}  // namespace kernelhood

#endif  // KERNELHOOD_KERNEL_HPP
