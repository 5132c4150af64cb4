#include "nacirc/algebra.hpp"

#include <sstream>

#include "nacirc/error.hpp"

namespace nacirc {

namespace {

void check_d(int d) {
    if (d < 1 || d > kMaxAlgebraD) {
        throw Error(ErrorKind::InvalidArgument, "algebra parameter d=" + std::to_string(d) + " outside 1..64");
    }
}

void same_d(const AlgebraElem& x, const AlgebraElem& y) {
    if (x.d != y.d || x.body.size() != y.body.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "algebra elements with d=" + std::to_string(x.d) + " and d=" + std::to_string(y.d));
    }
}

// out += alpha * a on bodies
void axpy(const Field& F, std::vector<u64>& out, u64 alpha, const std::vector<u64>& a) {
    if (alpha == 0) return;
    for (std::size_t t = 0; t < out.size(); ++t) {
        if (a[t]) out[t] = F.add(out[t], F.mul(alpha, a[t]));
    }
}

}  // namespace

AlgebraElem AlgebraElem::zero(int d) {
    check_d(d);
    AlgebraElem e;
    e.d = d;
    e.body.assign(static_cast<std::size_t>(d) * (d + 1) * (d + 1), 0);
    return e;
}

AlgebraElem AlgebraElem::unit(int d) {
    AlgebraElem e = zero(d);
    e.scalar = 1;
    return e;
}

bool AlgebraElem::is_zero() const {
    if (scalar) return false;
    for (u64 v : body) {
        if (v) return false;
    }
    return true;
}

AlgebraElem elem_add(const Field& F, const AlgebraElem& x, const AlgebraElem& y) {
    same_d(x, y);
    AlgebraElem z = x;
    for (std::size_t t = 0; t < z.body.size(); ++t) z.body[t] = F.add(z.body[t], y.body[t]);
    z.scalar = F.add(z.scalar, y.scalar);
    return z;
}

AlgebraElem elem_sub(const Field& F, const AlgebraElem& x, const AlgebraElem& y) {
    same_d(x, y);
    AlgebraElem z = x;
    for (std::size_t t = 0; t < z.body.size(); ++t) z.body[t] = F.sub(z.body[t], y.body[t]);
    z.scalar = F.sub(z.scalar, y.scalar);
    return z;
}

AlgebraElem elem_scale(const Field& F, const AlgebraElem& x, u64 c) {
    AlgebraElem z = x;
    for (u64& v : z.body) v = F.mul(v, c);
    z.scalar = F.mul(z.scalar, c);
    return z;
}

AlgebraElem aprime_mul(const Field& F, const AlgebraElem& x, const AlgebraElem& y) {
    same_d(x, y);
    const int d = x.d;
    const int m = d + 1;
    AlgebraElem z = AlgebraElem::zero(d);
    // Slice k of the product is slice k+1 of x times slice k+1 of y; slice d stays zero.
    for (int k = 1; k < d; ++k) {
        const u64* X = &x.body[x.index(1, 1, k + 1)];
        const u64* Y = &y.body[y.index(1, 1, k + 1)];
        u64* Z = &z.body[z.index(1, 1, k)];
        for (int i = 0; i < m; ++i) {
            for (int l = 0; l < m; ++l) {
                u64 a = X[i * m + l];
                if (a == 0) continue;
                const u64* yrow = Y + l * m;
                u64* zrow = Z + i * m;
                for (int j = 0; j < m; ++j) {
                    if (yrow[j]) zrow[j] = F.add(zrow[j], F.mul(a, yrow[j]));
                }
            }
        }
    }
    return z;
}

AlgebraElem a_mul(const Field& F, const AlgebraElem& x, const AlgebraElem& y) {
    AlgebraElem z = aprime_mul(F, x, y);
    axpy(F, z.body, x.scalar, y.body);
    axpy(F, z.body, y.scalar, x.body);
    z.scalar = F.mul(x.scalar, y.scalar);
    return z;
}

AlgebraElem c_mul(const Field& F, const AlgebraElem& x, const AlgebraElem& y) {
    AlgebraElem z = aprime_mul(F, x, y);
    AlgebraElem w = aprime_mul(F, y, x);
    for (std::size_t t = 0; t < z.body.size(); ++t) z.body[t] = F.add(z.body[t], w.body[t]);
    axpy(F, z.body, x.scalar, y.body);
    axpy(F, z.body, y.scalar, x.body);
    z.scalar = F.mul(x.scalar, y.scalar);
    return z;
}

AlgebraElem anticommutator(const Field& F, const AlgebraElem& x, const AlgebraElem& y) {
    return elem_add(F, a_mul(F, x, y), a_mul(F, y, x));
}

AlgebraElem make_Zi(int i, int d, const std::function<u64(int, int, int)>& z) {
    AlgebraElem e = AlgebraElem::zero(d);
    for (int j = 1; j <= d; ++j) {
        for (int k = 1; k <= d; ++k) e.at(j, j + 1, k) = z(i, j, k);
    }
    return e;
}

AlgebraElem eval_circuit(const Circuit& c, const std::vector<AlgebraElem>& points, int d) {
    if (static_cast<int>(points.size()) != c.n) {
        throw Error(ErrorKind::DimensionMismatch,
                    "circuit has " + std::to_string(c.n) + " variables but " + std::to_string(points.size()) + " points were given");
    }
    if (points.empty() && d < 1) throw Error(ErrorKind::DimensionMismatch, "cannot infer d without points");
    if (!points.empty()) {
        if (d >= 1 && d != points[0].d) throw Error(ErrorKind::DimensionMismatch, "points do not match the requested d");
        d = points[0].d;
    }
    for (const auto& pt : points) {
        if (pt.d != d) throw Error(ErrorKind::DimensionMismatch, "points use different d");
    }
    const Field F = c.field();
    std::vector<AlgebraElem> val(c.gates.size());
    for (int id = 0; id < c.size(); ++id) {
        const Gate& g = c.gates[id];
        switch (g.kind) {
            case GateKind::Var: val[id] = points[g.var - 1]; break;
            case GateKind::Const:
                val[id] = AlgebraElem::zero(d);
                val[id].scalar = g.c;
                break;
            case GateKind::Add: val[id] = elem_add(F, val[g.l], val[g.r]); break;
            case GateKind::Mulc: val[id] = elem_scale(F, val[g.l], g.c); break;
            case GateKind::Mul: val[id] = mode_mul(F, c.mode, val[g.l], val[g.r]); break;
        }
    }
    return val[c.output];
}

AlgebraElem random_elem(int d, const std::vector<u64>& S, Rng& rng) {
    if (S.empty()) throw Error(ErrorKind::InvalidArgument, "sample set is empty");
    AlgebraElem e = AlgebraElem::zero(d);
    for (u64& v : e.body) v = S[rng.below(S.size())];
    e.scalar = S[rng.below(S.size())];
    return e;
}

std::string dump(const AlgebraElem& x) {
    std::ostringstream o;
    o << "elem d=" << x.d << "\n";
    for (int k = 1; k <= x.d; ++k) {
        o << "k=" << k << "\n";
        for (int i = 1; i <= x.d + 1; ++i) {
            for (int j = 1; j <= x.d + 1; ++j) o << (j > 1 ? " " : "") << x.at(i, j, k);
            o << "\n";
        }
    }
    o << "scalar=" << x.scalar << "\n";
    return o.str();
}

}  // namespace nacirc
