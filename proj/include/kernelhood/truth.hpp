#ifndef KERNELHOOD_TRUTH_HPP
#define KERNELHOOD_TRUTH_HPP

#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kernelhood/digraph.hpp"
#include "kernelhood/error.hpp"
#include "kernelhood/formula.hpp"
#include "kernelhood/kernel.hpp"
#include "kernelhood/structure.hpp"

namespace kernelhood {

namespace detail {

inline unsigned constant_value(const FiniteStructure& m, const Term& t) {
  // Sentences are closed, so every term reaching an atom is a constant by
  // the time quantifiers have been instantiated.
  if (!t.is_constant())
    throw DomainError("free-variable", "variable " + t.str() + " reached evaluation");
  if (t.element() >= m.size())
    throw DomainError("bad-constant", "constant " + t.str() + " names no element of a domain of size " +
                                          std::to_string(m.size()));
  return t.element();
}

inline bool tarski_eval_formula(const FiniteStructure& m, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      const auto& ts = f.terms();
      return m.holds(f.rel(), constant_value(m, ts[0]), constant_value(m, ts[1]),
                     constant_value(m, ts[2]));
    }
    case Formula::Kind::Nor:
      return !tarski_eval_formula(m, f.left()) && !tarski_eval_formula(m, f.right());
    case Formula::Kind::None:
      for (unsigned a = 0; a < m.size(); ++a)
        if (tarski_eval_formula(m, substitute(f.body(), f.bound_var(), a))) return false;
      return true;
  }
  return false;
}

}  // namespace detail

// Direct recursive Tarskian evaluation; the independent oracle the kernel
// route is checked against.
inline bool tarski_eval(const FiniteStructure& m, const Sentence& s) {
  return detail::tarski_eval_formula(m, s.formula());
}

// Membership in A^M, the vertex universe of the sentence digraph: every
// sentence except the atomic falsehoods.
inline bool in_universe(const FiniteStructure& m, const Sentence& s) {
  if (s.formula().kind() != Formula::Kind::Atomic) return true;
  return tarski_eval(m, s);
}

// Out-neighbors of s in the sentence digraph, restricted to A^M and
// deduplicated, in deterministic order: NOR operands left-to-right,
// N-instances by increasing domain element.
inline std::vector<Sentence> sentence_successors(const FiniteStructure& m, const Sentence& s) {
  if (!in_universe(m, s))
    throw DomainError("not-in-universe",
                      "atomic sentence is false in the structure: " + s.text());
  std::vector<Sentence> out;
  auto push = [&](Sentence t) {
    if (!in_universe(m, t)) return;
    for (const Sentence& seen : out)
      if (seen == t) return;
    out.push_back(std::move(t));
  };
  const Formula& f = s.formula();
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      break;  // sinks
    case Formula::Kind::Nor:
      push(Sentence(f.left()));
      push(Sentence(f.right()));
      break;
    case Formula::Kind::None:
      for (unsigned a = 0; a < m.size(); ++a)
        push(Sentence(substitute(f.body(), f.bound_var(), a)));
      break;
  }
  return out;
}

// The induced subdigraph of the sentence digraph A^M on Cl(seeds), with
// canonical printed forms as vertex ids.
struct SentenceDigraph {
  Digraph graph;
  std::map<std::string, Sentence> sentences;  // vertex id -> sentence

  const Sentence& sentence_of(const std::string& id) const {
    auto it = sentences.find(id);
    if (it == sentences.end())
      throw DomainError("unknown-vertex", "no sentence with id '" + id + "'");
    return it->second;
  }
};

inline SentenceDigraph sentence_digraph(const FiniteStructure& m,
                                        const std::vector<Sentence>& seeds) {
  std::string rejected;
  for (const Sentence& s : seeds)
    if (!in_universe(m, s)) rejected += (rejected.empty() ? "" : "; ") + s.text();
  if (!rejected.empty())
    throw DomainError("not-in-universe",
                      "seed sentences are atomic falsehoods: " + rejected);

  SentenceDigraph result;
  std::deque<Sentence> work;
  for (const Sentence& s : seeds) {
    if (result.sentences.emplace(s.text(), s).second) work.push_back(s);
  }
  std::vector<std::pair<std::string, std::string>> edges;
  while (!work.empty()) {
    Sentence s = std::move(work.front());
    work.pop_front();
    for (Sentence& t : sentence_successors(m, s)) {
      edges.emplace_back(s.text(), t.text());
      if (result.sentences.emplace(t.text(), t).second) work.push_back(std::move(t));
    }
  }
  std::vector<std::string> ids;
  ids.reserve(result.sentences.size());
  for (const auto& [id, sentence] : result.sentences) ids.push_back(id);
  result.graph = Digraph(ids, edges);
  return result;
}

// A set of sentences that is a kernel of its sentence digraph; by the
// truth-class/kernel correspondence, exactly the sentences true in the
// structure among the digraph's vertices.
struct TruthClass {
  FiniteStructure structure;
  SentenceDigraph universe;
  VertexSet members;  // canonical printed forms

  bool contains(const Sentence& s) const { return members.count(s.text()) != 0; }
};

inline TruthClass truth_class(const FiniteStructure& m, const std::vector<Sentence>& seeds) {
  SentenceDigraph dg = sentence_digraph(m, seeds);
  VertexSet kernel = kernel_of_well_founded(dg.graph);
  return TruthClass{m, std::move(dg), std::move(kernel)};
}

struct HeightBoundReport {
  std::size_t m = 0;           // closure depth parameter
  std::size_t seed_count = 0;  // |F|, distinct seeds
  Height height = Height::finite(0);
  std::size_t bound = 0;  // (2^{m+1} - 1) * |F|
  bool holds = false;
};

// Checks Ht(Cl_m(F)) <= (2^{m+1} - 1)|F| on the sentence digraph grown from
// the seeds F.
inline HeightBoundReport height_bound_check(const FiniteStructure& m,
                                            const std::vector<Sentence>& seeds,
                                            std::size_t m_param) {
  if (m_param > 57)
    throw DomainError("bad-bound-parameter",
                      "closure depth " + std::to_string(m_param) + " overflows the bound");
  SentenceDigraph dg = sentence_digraph(m, seeds);
  VertexSet f;
  for (const Sentence& s : seeds) f.insert(s.text());
  HeightBoundReport report;
  report.m = m_param;
  report.seed_count = f.size();
  report.height = height(dg.graph, closure_k(dg.graph, f, m_param));
  report.bound = ((std::size_t{1} << (m_param + 1)) - 1) * f.size();
  report.holds = report.height.is_finite() && report.height.value() <= report.bound;
  return report;
}

}  // namespace kernelhood

#endif  // KERNELHOOD_TRUTH_HPP
