#ifndef KERNELHOOD_RANDOM_HPP
#define KERNELHOOD_RANDOM_HPP

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "kernelhood/digraph.hpp"
#include "kernelhood/formula.hpp"
#include "kernelhood/structure.hpp"
#include "kernelhood/truth.hpp"

namespace kernelhood {

// Seedable generator for test instances. Draws go through raw engine output
// so sequences are stable for a given seed regardless of platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  std::size_t below(std::size_t n) { return n == 0 ? 0 : raw() % n; }

  bool chance(double p) {
    return static_cast<double>(raw() >> 11) * 0x1.0p-53 < p;
  }

private:
  std::mt19937_64 engine_;
};

// KERNELHOOD_SEED overrides the seed for randomized generators.
inline std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("KERNELHOOD_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && end != env) return v;
  }
  return fallback;
}

namespace detail {

inline std::vector<std::string> numbered_ids(std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));
  return ids;
}

}  // namespace detail

// Random DAG on vertices v0..v(n-1): a random vertex order with forward
// edges drawn at `edge_prob`.
inline Digraph random_dag(Rng& rng, std::size_t n, double edge_prob) {
  auto ids = detail::numbered_ids(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.chance(edge_prob)) edges.emplace_back(ids[order[i]], ids[order[j]]);
  return Digraph(ids, edges);
}

// Random digraph: every ordered pair (self-loops included) drawn at
// `edge_prob`.
inline Digraph random_digraph(Rng& rng, std::size_t n, double edge_prob) {
  auto ids = detail::numbered_ids(n);
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (rng.chance(edge_prob)) edges.emplace_back(ids[a], ids[b]);
  return Digraph(ids, edges);
}

// Random formula of depth <= max_depth; terms draw variables below
// `num_vars` (when positive) and constants below `num_consts`.
inline Formula random_formula(Rng& rng, std::size_t max_depth, unsigned num_vars,
                              unsigned num_consts) {
  auto term = [&]() {
    if (num_vars > 0 && rng.chance(0.5))
      return Term::variable(static_cast<unsigned>(rng.below(num_vars)));
    return Term::constant(static_cast<unsigned>(rng.below(num_consts)));
  };
  auto make_atom = [&]() {
    return atom(rng.chance(0.5) ? Rel::Add : Rel::Mul, term(), term(), term());
  };
  if (max_depth <= 1) return make_atom();
  std::size_t pick = rng.below(10);
  if (pick < 4) return make_atom();
  if (pick < 7)
    return nor(random_formula(rng, max_depth - 1, num_vars, num_consts),
               random_formula(rng, max_depth - 1, num_vars, num_consts));
  return none(static_cast<unsigned>(rng.below(num_vars > 0 ? num_vars : 3)),
              random_formula(rng, max_depth - 1, num_vars, num_consts));
}

namespace detail {

inline Formula random_closed_formula(Rng& rng, std::size_t max_depth, std::size_t domain,
                                     std::vector<unsigned>& scope) {
  auto term = [&]() {
    if (!scope.empty() && rng.chance(0.5))
      return Term::variable(scope[rng.below(scope.size())]);
    return Term::constant(static_cast<unsigned>(rng.below(domain)));
  };
  auto make_atom = [&]() {
    return atom(rng.chance(0.5) ? Rel::Add : Rel::Mul, term(), term(), term());
  };
  if (max_depth <= 1) return make_atom();
  std::size_t pick = rng.below(10);
  if (pick < 3) return make_atom();
  if (pick < 6) {
    Formula l = random_closed_formula(rng, max_depth - 1, domain, scope);
    Formula r = random_closed_formula(rng, max_depth - 1, domain, scope);
    return nor(std::move(l), std::move(r));
  }
  unsigned var = static_cast<unsigned>(rng.below(3));  // shadowing is fair game
  scope.push_back(var);
  Formula body = random_closed_formula(rng, max_depth - 1, domain, scope);
  scope.pop_back();
  return none(var, std::move(body));
}

}  // namespace detail

// Random sentence (closed by construction) over a domain of the given size.
inline Sentence random_sentence(Rng& rng, std::size_t max_depth, std::size_t domain) {
  std::vector<unsigned> scope;
  return Sentence(detail::random_closed_formula(rng, max_depth, domain, scope));
}

// Random seed for a sentence digraph: a random sentence re-drawn until it
// lands in A^M (only atomic falsehoods get rejected). Structures with empty
// relations can make every atomic draw false, so after a few tries the draw
// is negated instead, which is never atomic.
inline Sentence random_universe_sentence(Rng& rng, const FiniteStructure& m,
                                         std::size_t max_depth) {
  for (int tries = 0; tries < 16; ++tries) {
    Sentence s = random_sentence(rng, max_depth, m.size());
    if (in_universe(m, s)) return s;
  }
  return Sentence(neg(random_sentence(rng, max_depth, m.size()).formula()));
}

// Random structure on a domain of the given size; each triple present
// independently at `density`.
inline FiniteStructure random_structure(Rng& rng, std::size_t size, double density) {
  std::set<Triple> add, mul;
  for (unsigned a = 0; a < size; ++a)
    for (unsigned b = 0; b < size; ++b)
      for (unsigned c = 0; c < size; ++c) {
        if (rng.chance(density)) add.insert({a, b, c});
        if (rng.chance(density)) mul.insert({a, b, c});
      }
  return FiniteStructure(size, std::move(add), std::move(mul));
}

}  // namespace kernelhood

#endif  // KERNELHOOD_RANDOM_HPP
