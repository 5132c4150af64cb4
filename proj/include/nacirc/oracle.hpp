#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nacirc/algebra.hpp"
#include "nacirc/circuit.hpp"
#include "nacirc/monomial.hpp"

namespace nacirc {

constexpr std::size_t kDefaultTermCap = 1000000;

// Polynomial in the free nonassociative algebra. Keys are canonical for the
// mode and zero coefficients are never stored.
struct Poly {
    std::map<Monomial, u64> terms;
    u64 constant = 0;

    bool is_zero() const { return constant == 0 && terms.empty(); }
    bool operator==(const Poly& o) const { return constant == o.constant && terms == o.terms; }
};

// Coefficient of m (given in any form) in p.
u64 poly_coeff(const Poly& p, const Monomial& m, Mode mode);

Poly poly_add(const Field& F, const Poly& a, const Poly& b, std::size_t max_terms = kDefaultTermCap);
Poly poly_scale(const Field& F, const Poly& a, u64 c);
// Bilinear product over ordered term pairs; comm mode canonicalizes.
Poly poly_mul(const Field& F, Mode mode, const Poly& a, const Poly& b, std::size_t max_terms = kDefaultTermCap);

// Per-gate expansions; table[g] is the polynomial computed at gate g.
using CoeffTable = std::vector<Poly>;

// Both throw TermCapExceeded once any gate holds more than max_terms terms.
CoeffTable coeff_table(const Circuit& c, std::size_t max_terms = kDefaultTermCap);
Poly expand(const Circuit& c, std::size_t max_terms = kDefaultTermCap);

AlgebraElem eval_poly_algebra(const Field& F, const Poly& poly, const std::vector<AlgebraElem>& points, Mode mode);

// "<coeff> <literal>" lines sorted by literal, then "const <c>".
std::string poly_to_text(const Poly& p);

// The circuit read as an associative commutative circuit: variable x_i is
// the flat index i - 1 of a z-monomial.
std::vector<ZPoly> assoc_coeff_table(const Circuit& c, std::size_t max_terms = kDefaultTermCap);
ZPoly expand_assoc(const Circuit& c, std::size_t max_terms = kDefaultTermCap);

}  // namespace nacirc
