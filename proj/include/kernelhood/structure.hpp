#ifndef KERNELHOOD_STRUCTURE_HPP
#define KERNELHOOD_STRUCTURE_HPP

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <utility>

#include "kernelhood/error.hpp"
#include "kernelhood/formula.hpp"

namespace kernelhood {

using Triple = std::array<unsigned, 3>;

// A finite structure for the two-ternary-relation language: domain
// {0, ..., size-1} with arbitrary ternary relations interpreting Add and
// Mul. z_mod(n) builds the modular-arithmetic instance.
class FiniteStructure {
public:
  FiniteStructure(std::size_t size, std::set<Triple> add_rel, std::set<Triple> mul_rel)
      : size_(size), add_(std::move(add_rel)), mul_(std::move(mul_rel)) {
    if (size_ == 0) throw DomainError("bad-structure", "domain must be nonempty");
    for (const auto* rel : {&add_, &mul_}) {
      for (const Triple& t : *rel) {
        for (unsigned x : t) {
          if (x >= size_)
            throw DomainError("bad-structure",
                              "triple component " + std::to_string(x) +
                                  " outside domain of size " + std::to_string(size_));
        }
      }
    }
  }

  static FiniteStructure z_mod(std::size_t n) {
    if (n == 0) throw DomainError("bad-structure", "domain must be nonempty");
    std::set<Triple> add, mul;
    for (unsigned a = 0; a < n; ++a) {
      for (unsigned b = 0; b < n; ++b) {
        add.insert({a, b, static_cast<unsigned>((a + b) % n)});
        mul.insert({a, b, static_cast<unsigned>((static_cast<std::size_t>(a) * b) % n)});
      }
    }
    return FiniteStructure(n, std::move(add), std::move(mul));
  }

  std::size_t size() const { return size_; }

  bool holds(Rel r, unsigned a, unsigned b, unsigned c) const {
    return relation(r).count({a, b, c}) != 0;
  }

  const std::set<Triple>& relation(Rel r) const { return r == Rel::Add ? add_ : mul_; }

private:
  std::size_t size_;
  std::set<Triple> add_;
  std::set<Triple> mul_;
};

}  // namespace kernelhood

#endif  // KERNELHOOD_STRUCTURE_HPP
