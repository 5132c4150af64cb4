#pragma once

#include <vector>

#include "nacirc/circuit.hpp"
#include "nacirc/ffield.hpp"
#include "nacirc/monomial.hpp"

namespace nacirc {

// Degree-j monomials kept for the circuit together with their per-gate
// coefficient vectors. Level 0 holds the constant monomial, stored as an
// invalid Monomial.
struct SpanLevel {
    int degree = 0;
    std::vector<Monomial> monomials;
    std::vector<Vec> vectors;
};

struct WhiteboxOptions {
    // Uses the two-term product rule even when both halves of the split are
    // equal. Wrong in odd characteristic; kept for mutation testing.
    bool naive_duplicate_split = false;
};

// Levels 0..degree(c) computed over the subcircuit reachable from the output.
std::vector<SpanLevel> build_levels(const Circuit& c, const WhiteboxOptions& opt = {});

struct WhiteboxVerdict {
    bool zero = true;
    bool witness_constant = false;  // nonzero constant term, no monomial witness
    Monomial witness;
    u64 witness_coeff = 0;  // coefficient of the witness in the output polynomial
    int gates = 0;
    int kept = 0;        // total monomials over all levels
    int candidates = 0;  // products examined
};

WhiteboxVerdict whitebox_pit(const Circuit& c, const WhiteboxOptions& opt = {});

}  // namespace nacirc
