#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nacirc/circuit.hpp"
#include "nacirc/ffield.hpp"
#include "nacirc/rng.hpp"

namespace nacirc {

constexpr int kMaxAlgebraD = 64;

// An element (a, alpha) of A_d or C_d: d matrices of size (d+1)x(d+1) plus
// the coordinate of the adjoined unit. Indices below are 1-based.
struct AlgebraElem {
    int d = 0;
    std::vector<u64> body;  // dense, slice-major: [k][i][j]
    u64 scalar = 0;

    static AlgebraElem zero(int d);
    static AlgebraElem unit(int d);  // (0, 1)

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k - 1) * (d + 1) + (i - 1)) * (d + 1) + (j - 1);
    }
    u64 at(int i, int j, int k) const { return body[index(i, j, k)]; }
    u64& at(int i, int j, int k) { return body[index(i, j, k)]; }

    bool is_zero() const;
    bool operator==(const AlgebraElem& o) const { return d == o.d && scalar == o.scalar && body == o.body; }
    bool operator!=(const AlgebraElem& o) const { return !(*this == o); }
};

AlgebraElem elem_add(const Field& F, const AlgebraElem& x, const AlgebraElem& y);
AlgebraElem elem_sub(const Field& F, const AlgebraElem& x, const AlgebraElem& y);
AlgebraElem elem_scale(const Field& F, const AlgebraElem& x, u64 c);

// Product of the non-unital parts; scalar coordinates are ignored and the
// result has scalar 0.
AlgebraElem aprime_mul(const Field& F, const AlgebraElem& x, const AlgebraElem& y);
// Unital A_d product: (a1 o a2 + alpha1 a2 + alpha2 a1, alpha1 alpha2).
AlgebraElem a_mul(const Field& F, const AlgebraElem& x, const AlgebraElem& y);
// Unital C_d product: the unit adjoined to the anticommutator of the bodies,
// so (0, 1) is its identity and constants act as scalars.
AlgebraElem c_mul(const Field& F, const AlgebraElem& x, const AlgebraElem& y);
// a_mul(x, y) + a_mul(y, x) taken on full pairs; agrees with c_mul when both
// scalar coordinates vanish.
AlgebraElem anticommutator(const Field& F, const AlgebraElem& x, const AlgebraElem& y);

inline AlgebraElem mode_mul(const Field& F, Mode mode, const AlgebraElem& x, const AlgebraElem& y) {
    return mode == Mode::Comm ? c_mul(F, x, y) : a_mul(F, x, y);
}

// body[j, j+1, k] = z(i, j, k) for j, k in [d]; everything else zero.
AlgebraElem make_Zi(int i, int d, const std::function<u64(int, int, int)>& z);

// Evaluates the circuit with a_mul (noncomm) or c_mul (comm); constants map
// to (0, c). Throws DimensionMismatch for a wrong point count or mixed d.
// d only needs to be given when the circuit has no variables.
AlgebraElem eval_circuit(const Circuit& c, const std::vector<AlgebraElem>& points, int d = 0);

// Each coordinate drawn independently and uniformly from S.
AlgebraElem random_elem(int d, const std::vector<u64>& S, Rng& rng);

// "elem d=<d>", then one "k=<k>" block of d+1 rows per slice, then "scalar=<c>".
std::string dump(const AlgebraElem& x);

}  // namespace nacirc
