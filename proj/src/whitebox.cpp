#include "nacirc/whitebox.hpp"

#include <map>
#include <set>

namespace nacirc {

namespace {

struct Ctx {
    const Circuit& c;
    Field F;
    Vec v1;
    std::map<std::string, const Vec*> known;  // literal -> vector of a kept monomial
    WhiteboxOptions opt;

    // Per-gate coefficient of m = (a, b) in the circuit, where a and b are
    // kept monomials whose vectors are already known.
    Vec product_vector(const Monomial& m) const {
        const std::size_t s = c.gates.size();
        const Vec& va = *known.at(m.left().literal());
        const Vec& vb = *known.at(m.right().literal());
        const bool same = m.left() == m.right();
        Vec v(s, 0);
        for (std::size_t id = 0; id < s; ++id) {
            const Gate& g = c.gates[id];
            switch (g.kind) {
                case GateKind::Var:
                case GateKind::Const: break;
                case GateKind::Add: v[id] = F.add(v[g.l], v[g.r]); break;
                case GateKind::Mulc: v[id] = F.mul(v[g.l], g.c); break;
                case GateKind::Mul: {
                    u64 acc = F.add(F.mul(v[g.l], v1[g.r]), F.mul(v1[g.l], v[g.r]));
                    acc = F.add(acc, F.mul(va[g.l], vb[g.r]));
                    if (c.mode == Mode::Comm && (!same || opt.naive_duplicate_split)) {
                        acc = F.add(acc, F.mul(vb[g.l], va[g.r]));
                    }
                    v[id] = acc;
                    break;
                }
            }
        }
        return v;
    }
};

Vec constant_vector(const Circuit& c, const Field& F) {
    Vec v(c.gates.size(), 0);
    for (std::size_t id = 0; id < c.gates.size(); ++id) {
        const Gate& g = c.gates[id];
        switch (g.kind) {
            case GateKind::Var: break;
            case GateKind::Const: v[id] = g.c; break;
            case GateKind::Add: v[id] = F.add(v[g.l], v[g.r]); break;
            case GateKind::Mulc: v[id] = F.mul(v[g.l], g.c); break;
            case GateKind::Mul: v[id] = F.mul(v[g.l], v[g.r]); break;
        }
    }
    return v;
}

Vec variable_vector(const Circuit& c, const Field& F, const Vec& v1, int var) {
    Vec v(c.gates.size(), 0);
    for (std::size_t id = 0; id < c.gates.size(); ++id) {
        const Gate& g = c.gates[id];
        switch (g.kind) {
            case GateKind::Var: v[id] = g.var == var ? 1 : 0; break;
            case GateKind::Const: break;
            case GateKind::Add: v[id] = F.add(v[g.l], v[g.r]); break;
            case GateKind::Mulc: v[id] = F.mul(v[g.l], g.c); break;
            case GateKind::Mul: v[id] = F.add(F.mul(v[g.l], v1[g.r]), F.mul(v1[g.l], v[g.r])); break;
        }
    }
    return v;
}

std::vector<SpanLevel> levels_for(const Circuit& c, const WhiteboxOptions& opt, int* candidates) {
    const Field F = c.field();
    const int d = c.degree();
    std::vector<SpanLevel> levels(d + 1);
    Ctx ctx{c, F, constant_vector(c, F), {}, opt};

    levels[0].degree = 0;
    levels[0].monomials.push_back(Monomial());
    levels[0].vectors.push_back(ctx.v1);
    if (d >= 1) {
        levels[1].degree = 1;
        for (int i = 1; i <= c.n; ++i) {
            levels[1].monomials.push_back(Monomial::leaf(i));
            levels[1].vectors.push_back(variable_vector(c, F, ctx.v1, i));
        }
    }
    for (int j = 1; j <= std::min(d, 1); ++j) {
        for (std::size_t t = 0; t < levels[j].monomials.size(); ++t) {
            ctx.known[levels[j].monomials[t].literal()] = &levels[j].vectors[t];
        }
    }
    for (int j = 2; j <= d; ++j) {
        std::vector<Monomial> cand;
        std::vector<Vec> vecs;
        std::set<std::string> seen;
        for (int i = 1; i < j; ++i) {
            const SpanLevel& A = levels[i];
            const SpanLevel& B = levels[j - i];
            for (const Monomial& a : A.monomials) {
                for (const Monomial& b : B.monomials) {
                    Monomial m = (c.mode == Mode::Comm && b.literal() < a.literal()) ? Monomial::product(b, a)
                                                                                      : Monomial::product(a, b);
                    if (!seen.insert(m.literal()).second) continue;
                    vecs.push_back(ctx.product_vector(m));
                    cand.push_back(std::move(m));
                }
            }
        }
        if (candidates) *candidates += static_cast<int>(cand.size());
        SpanLevel& L = levels[j];
        L.degree = j;
        for (std::size_t idx : greedy_basis(F, vecs, c.gates.size())) {
            L.monomials.push_back(cand[idx]);
            L.vectors.push_back(std::move(vecs[idx]));
        }
        for (std::size_t t = 0; t < L.monomials.size(); ++t) ctx.known[L.monomials[t].literal()] = &L.vectors[t];
    }
    return levels;
}

}  // namespace

std::vector<SpanLevel> build_levels(const Circuit& c, const WhiteboxOptions& opt) {
    return levels_for(extract(c, c.output), opt, nullptr);
}

WhiteboxVerdict whitebox_pit(const Circuit& c, const WhiteboxOptions& opt) {
    Circuit sub = extract(c, c.output);
    WhiteboxVerdict v;
    v.gates = sub.size();
    auto levels = levels_for(sub, opt, &v.candidates);
    const std::size_t out = static_cast<std::size_t>(sub.output);
    for (const SpanLevel& L : levels) v.kept += static_cast<int>(L.monomials.size());
    for (const SpanLevel& L : levels) {
        const Monomial* best = nullptr;
        u64 best_coeff = 0;
        for (std::size_t t = 0; t < L.monomials.size(); ++t) {
            if (L.vectors[t][out] == 0) continue;
            if (L.degree == 0) {
                v.zero = false;
                v.witness_constant = true;
                v.witness_coeff = L.vectors[t][out];
                return v;
            }
            if (!best || L.monomials[t].literal() < best->literal()) {
                best = &L.monomials[t];
                best_coeff = L.vectors[t][out];
            }
        }
        if (best) {
            v.zero = false;
            v.witness = *best;
            v.witness_coeff = best_coeff;
            return v;
        }
    }
    return v;
}

}  // namespace nacirc
