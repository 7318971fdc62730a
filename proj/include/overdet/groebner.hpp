#pragma once

// Buchberger's algorithm for submodules of P^a, normal forms, membership and
// syzygy modules.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "overdet/poly.hpp"

namespace overdet {

struct GroebnerLimits {
  std::size_t max_pairs = 50000;
  int max_degree = 64;
};

struct GroebnerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t skipped_product = 0;
  std::size_t skipped_chain = 0;
  int max_degree_seen = 0;
};

struct GroebnerBasis {
  std::vector<ModuleElement> generators;
  TermOrder order;
  bool reduced = false;
  std::size_t rank = 0;
  std::size_t nvars = 0;
  GroebnerStats stats;
};

struct Reduction {
  ModuleElement remainder;
  std::vector<Polynomial> quotients;
};

/// Full multivariate division: f = sum quotients[i]*basis[i] + remainder,
/// with no term of the remainder divisible by a leading term of the basis.
/// The first basis element whose leading term divides wins.
Reduction reduce(const ModuleElement& f, std::span<const ModuleElement> basis,
                 const TermOrder& order);

GroebnerBasis buchberger(std::span<const ModuleElement> gens, const TermOrder& order,
                         const GroebnerLimits& limits = {});

bool membership(const ModuleElement& f, const GroebnerBasis& basis);

/// S-vector of two elements; empty when their leading terms live in
/// different components.
std::optional<ModuleElement> s_vector(const ModuleElement& a, const ModuleElement& b,
                                      const TermOrder& order);

/// True when every S-vector of the basis reduces to zero against it.
bool s_vectors_reduce_to_zero(const GroebnerBasis& basis);

struct SyzygyBasis {
  std::vector<ModuleElement> rows;    // each of rank = source.size()
  std::vector<ModuleElement> source;  // the generators being annihilated
};

/// Generators of {s : sum s_i * gens[i] = 0}. Rows are irredundant, each
/// scaled to integer content 1 with the first nonzero entry's leading
/// coefficient positive, and listed in a canonical order.
SyzygyBasis syzygies(std::span<const ModuleElement> gens, const TermOrder& order,
                     const GroebnerLimits& limits = {});

/// Leading (monomial, component, coefficient) of a nonzero element.
struct LeadingTerm {
  Monomial monomial;
  std::size_t component = 0;
  Rational coefficient;
};
LeadingTerm leading_term(const ModuleElement& v, const TermOrder& order);

// Ideal conveniences over rank-1 elements.
std::vector<ModuleElement> as_ideal_generators(std::span<const Polynomial> polys);
GroebnerBasis ideal_basis(std::span<const Polynomial> polys, const TermOrder& order,
                          const GroebnerLimits& limits = {});
bool ideal_membership(const Polynomial& f, const GroebnerBasis& basis);

/// Scale to integer content 1 with the first nonzero component's leading
/// coefficient positive.
ModuleElement normalize_row(const ModuleElement& v);

}  // namespace overdet
