#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nacirc/ffield.hpp"
#include "nacirc/monomial.hpp"

namespace nacirc {

enum class GateKind { Var, Const, Add, Mul, Mulc };

struct Gate {
    GateKind kind = GateKind::Const;
    int var = 0;     // Var: 1-based variable index
    int l = -1;      // Add/Mul: left child; Mulc: the scaled child
    int r = -1;      // Add/Mul: right child
    u64 c = 0;       // Const value or Mulc scalar
    int degree = 0;  // syntactic degree
    int product_depth = 0;
};

struct Circuit {
    Mode mode = Mode::Comm;
    u64 p = kDefaultPrime;
    int n = 0;
    std::vector<Gate> gates;
    int output = -1;

    Field field() const { return Field(p); }
    int size() const { return static_cast<int>(gates.size()); }
    int degree() const { return gates.at(output).degree; }
    int product_depth() const { return gates.at(output).product_depth; }

    // Appending helpers. Children must already exist; metrics are filled in.
    int add_var(int i);
    int add_const(u64 c);
    int add_add(int l, int r);
    int add_mul(int l, int r);
    int add_mulc(int child, u64 c);
    int push(Gate g);
};

// Throws on broken invariants (BadReference, CycleError, NotPrime, ...).
void validate(const Circuit& c);

// Throws ParseError (with line), CycleError, BadReference, BadMode, NotPrime.
Circuit parse(const std::string& text);
std::string serialize(const Circuit& c);

// Copy of the subcircuit reachable from `root`, renumbered in order.
Circuit extract(const Circuit& c, int root);

// Gate-level homogenization sharing one gate list. comp[g][e] is the gate
// computing the degree-e part of original gate g (e >= 1), or -1 when that
// part is zero. Degree-0 parts are folded into the field values const0[g].
struct Homogenized {
    Circuit circuit;  // every gate is homogeneous of its syntactic degree
    std::vector<std::vector<int>> comp;
    std::vector<u64> const0;
};

Homogenized homogenize_gates(const Circuit& c, int d);

// One circuit per degree 0..d; throws DegreeExceeded if degree(c) > d.
std::vector<Circuit> homogenize(const Circuit& c, int d);

struct ReducedTree {
    bool constant = false;  // the parse tree had no variable leaves
    Monomial tree;          // canonical for the circuit mode; invalid if constant
    u64 coeff = 0;          // aggregated over parse trees with this reduced tree
};

// Throws CapExceeded when the circuit has more than `cap` parse trees.
std::vector<ReducedTree> reduced_parse_trees(const Circuit& c, std::uint64_t cap);

// Saturating parse-tree count of the output gate.
std::uint64_t parse_tree_count(const Circuit& c);

Circuit gen_random(int n, int size, int degree_cap, Mode mode, std::uint64_t seed, u64 p = kDefaultPrime);

}  // namespace nacirc
