#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "nacirc/ffield.hpp"

namespace nacirc {

enum class Mode { Comm, NonComm };

const char* mode_name(Mode m);

// A free nonassociative monomial: a full binary tree with leaves labeled by
// 1-based variable indices. Trees are immutable and share subtrees.
class Monomial {
public:
    Monomial() = default;

    static Monomial leaf(int var);
    static Monomial product(const Monomial& left, const Monomial& right);

    bool valid() const { return node_ != nullptr; }
    bool is_leaf() const { return node_->var != 0; }
    int var() const { return node_->var; }
    Monomial left() const { return Monomial(node_->left); }
    Monomial right() const { return Monomial(node_->right); }
    int degree() const { return node_->degree; }
    // Largest leaf level, counting the root as level 1.
    int depth() const { return node_->depth; }
    // Preorder literal such as "((1 2) 3)". Equality and ordering use it.
    const std::string& literal() const { return node_->literal; }

    bool operator==(const Monomial& o) const { return node_ == o.node_ || literal() == o.literal(); }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
    bool operator<(const Monomial& o) const { return literal() < o.literal(); }

private:
    struct Node {
        int var = 0;
        std::shared_ptr<const Node> left, right;
        int degree = 1;
        int depth = 1;
        std::string literal;
    };
    explicit Monomial(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

// Throws ParseError on malformed literals.
Monomial parse_monomial(const std::string& text);

struct MonomialCode {
    std::vector<int> sigma;   // left-to-right leaf variables
    std::vector<int> levels;  // level of each leaf, root at level 1

    bool operator==(const MonomialCode& o) const { return sigma == o.sigma && levels == o.levels; }
    bool operator<(const MonomialCode& o) const {
        return sigma != o.sigma ? sigma < o.sigma : levels < o.levels;
    }
};

MonomialCode encode(const Monomial& m);
// Rebuilds the tree from its code; throws InvalidCode when no tree has it.
Monomial decode(const MonomialCode& code);

Monomial canon_comm(const Monomial& m);
inline Monomial canonical(const Monomial& m, Mode mode) { return mode == Mode::Comm ? canon_comm(m) : m; }

constexpr int kOrderCap = 12;

// Codes of every left/right designation of the internal nodes, with
// repetition: the result always has 2^(degree-1) entries.
std::vector<MonomialCode> designations(const Monomial& m, int cap = kOrderCap);
// The distinct leaf orders among all designations.
std::set<std::vector<int>> orders(const Monomial& m, int cap = kOrderCap);

// Commutative polynomials over the z variables z_{i,j,k}, i >= 1 and
// j, k in [d]. A z-monomial is the sorted list of flat indices.
using ZMono = std::vector<std::uint32_t>;
using ZPoly = std::map<ZMono, u64>;

struct ZIndex {
    int i, j, k;
    bool operator==(const ZIndex& o) const { return i == o.i && j == o.j && k == o.k; }
};

// Lexicographic flat index of z_{i,j,k}, starting at 0.
inline std::uint32_t z_flat(int i, int j, int k, int d) {
    return static_cast<std::uint32_t>(((i - 1) * d + (j - 1)) * d + (k - 1));
}
inline ZIndex z_unflat(std::uint32_t f, int d) {
    int k = static_cast<int>(f % d) + 1;
    int j = static_cast<int>((f / d) % d) + 1;
    int i = static_cast<int>(f / (static_cast<std::uint32_t>(d) * d)) + 1;
    return {i, j, k};
}

void zpoly_add_term(ZPoly& p, const ZMono& m, u64 c, const Field& F);
std::string zmono_to_string(const ZMono& m, int d);

// The z-polynomial phi(m) at entry offset (k1, k2); phi_mono is the (1, 1)
// case. Throws DegreeExceeded when degree(m) > d and InvalidArgument for an
// offset outside the admissible range.
ZPoly phi_entry(const Monomial& m, Mode mode, int d, int k1, int k2, const Field& F);
ZPoly phi_mono(const Monomial& m, Mode mode, int d, const Field& F);

}  // namespace nacirc
