#include "nacirc/oracle.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "nacirc/error.hpp"

namespace nacirc {

namespace {

void add_term(const Field& F, std::map<Monomial, u64>& t, const Monomial& m, u64 c) {
    if (c == 0) return;
    auto it = t.find(m);
    if (it == t.end()) {
        t.emplace(m, c);
        return;
    }
    it->second = F.add(it->second, c);
    if (it->second == 0) t.erase(it);
}

void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap) {
        throw Error(ErrorKind::TermCapExceeded, "expansion exceeds " + std::to_string(cap) + " terms");
    }
}

// Product of canonical factors, canonical again in comm mode.
Monomial mono_mul(const Monomial& a, const Monomial& b, Mode mode) {
    if (mode == Mode::Comm && b.literal() < a.literal()) return Monomial::product(b, a);
    return Monomial::product(a, b);
}

}  // namespace

u64 poly_coeff(const Poly& p, const Monomial& m, Mode mode) {
    auto it = p.terms.find(canonical(m, mode));
    return it == p.terms.end() ? 0 : it->second;
}

Poly poly_add(const Field& F, const Poly& a, const Poly& b, std::size_t max_terms) {
    Poly r = a;
    r.constant = F.add(a.constant, b.constant);
    for (const auto& [m, c] : b.terms) add_term(F, r.terms, m, c);
    check_cap(r.terms.size(), max_terms);
    return r;
}

Poly poly_scale(const Field& F, const Poly& a, u64 c) {
    Poly r;
    if (c == 0) return r;
    r.constant = F.mul(a.constant, c);
    for (const auto& [m, v] : a.terms) r.terms.emplace_hint(r.terms.end(), m, F.mul(v, c));
    return r;
}

Poly poly_mul(const Field& F, Mode mode, const Poly& a, const Poly& b, std::size_t max_terms) {
    Poly r;
    r.constant = F.mul(a.constant, b.constant);
    if (a.constant) {
        for (const auto& [m, c] : b.terms) add_term(F, r.terms, m, F.mul(a.constant, c));
    }
    if (b.constant) {
        for (const auto& [m, c] : a.terms) add_term(F, r.terms, m, F.mul(b.constant, c));
    }
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            add_term(F, r.terms, mono_mul(ma, mb, mode), F.mul(ca, cb));
            check_cap(r.terms.size(), max_terms);
        }
    }
    check_cap(r.terms.size(), max_terms);
    return r;
}

CoeffTable coeff_table(const Circuit& c, std::size_t max_terms) {
    const Field F = c.field();
    CoeffTable t(c.gates.size());
    for (int id = 0; id < c.size(); ++id) {
        const Gate& g = c.gates[id];
        switch (g.kind) {
            case GateKind::Var: t[id].terms.emplace(Monomial::leaf(g.var), 1 % c.p); break;
            case GateKind::Const: t[id].constant = g.c; break;
            case GateKind::Add: t[id] = poly_add(F, t[g.l], t[g.r], max_terms); break;
            case GateKind::Mulc: t[id] = poly_scale(F, t[g.l], g.c); break;
            case GateKind::Mul: t[id] = poly_mul(F, c.mode, t[g.l], t[g.r], max_terms); break;
        }
    }
    return t;
}

Poly expand(const Circuit& c, std::size_t max_terms) {
    Circuit sub = extract(c, c.output);
    return coeff_table(sub, max_terms)[sub.output];
}

AlgebraElem eval_poly_algebra(const Field& F, const Poly& poly, const std::vector<AlgebraElem>& points, Mode mode) {
    if (points.empty()) throw Error(ErrorKind::DimensionMismatch, "cannot infer d without points");
    const int d = points[0].d;
    std::map<std::string, AlgebraElem> memo;
    std::function<AlgebraElem(const Monomial&)> ev = [&](const Monomial& m) -> AlgebraElem {
        if (m.is_leaf()) {
            if (m.var() > static_cast<int>(points.size())) {
                throw Error(ErrorKind::DimensionMismatch, "monomial uses x" + std::to_string(m.var()) + " beyond the given points");
            }
            return points[m.var() - 1];
        }
        auto it = memo.find(m.literal());
        if (it != memo.end()) return it->second;
        AlgebraElem v = mode_mul(F, mode, ev(m.left()), ev(m.right()));
        memo.emplace(m.literal(), v);
        return v;
    };
    AlgebraElem acc = AlgebraElem::zero(d);
    acc.scalar = poly.constant;
    for (const auto& [m, c] : poly.terms) acc = elem_add(F, acc, elem_scale(F, ev(m), c));
    return acc;
}

std::string poly_to_text(const Poly& p) {
    std::ostringstream o;
    for (const auto& [m, c] : p.terms) o << c << ' ' << m.literal() << "\n";
    o << "const " << p.constant << "\n";
    return o.str();
}

namespace {

ZMono zmerge(const ZMono& a, const ZMono& b) {
    ZMono r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

}  // namespace

std::vector<ZPoly> assoc_coeff_table(const Circuit& c, std::size_t max_terms) {
    const Field F = c.field();
    std::vector<ZPoly> t(c.gates.size());
    for (int id = 0; id < c.size(); ++id) {
        const Gate& g = c.gates[id];
        ZPoly& out = t[id];
        switch (g.kind) {
            case GateKind::Var: out.emplace(ZMono{static_cast<std::uint32_t>(g.var - 1)}, 1 % c.p); break;
            case GateKind::Const:
                if (g.c) out.emplace(ZMono{}, g.c);
                break;
            case GateKind::Add:
                out = t[g.l];
                for (const auto& [m, v] : t[g.r]) zpoly_add_term(out, m, v, F);
                break;
            case GateKind::Mulc:
                if (g.c) {
                    for (const auto& [m, v] : t[g.l]) out.emplace_hint(out.end(), m, F.mul(v, g.c));
                }
                break;
            case GateKind::Mul:
                for (const auto& [ma, va] : t[g.l]) {
                    for (const auto& [mb, vb] : t[g.r]) {
                        zpoly_add_term(out, zmerge(ma, mb), F.mul(va, vb), F);
                        check_cap(out.size(), max_terms);
                    }
                }
                break;
        }
        check_cap(out.size(), max_terms);
    }
    return t;
}

ZPoly expand_assoc(const Circuit& c, std::size_t max_terms) {
    Circuit sub = extract(c, c.output);
    return assoc_coeff_table(sub, max_terms)[sub.output];
}

}  // namespace nacirc
