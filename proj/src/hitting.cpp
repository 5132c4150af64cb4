#include "nacirc/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nacirc/error.hpp"
#include "nacirc/oracle.hpp"

namespace nacirc {

namespace {

using u128 = unsigned __int128;

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::WeightOverflow, "weight exceeds 64 bits");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::WeightOverflow, "weight exceeds 64 bits");
    return r;
}

std::uint64_t sat_pow(std::uint64_t base, int e) {
    u128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= base;
        if (r > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    u128 r = 1 % m, b = a % m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t WeightAssignment::of(const ZMono& m) const {
    std::uint64_t s = 0;
    for (std::uint32_t f : m) s = checked_add(s, w.at(f));
    return s;
}

std::uint64_t WeightAssignment::max_weight() const {
    std::uint64_t m = 0;
    for (std::uint64_t x : w) m = std::max(m, x);
    return m;
}

std::vector<std::uint64_t> first_primes(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n == 0) return out;
    double x = static_cast<double>(n);
    std::uint64_t limit = n < 6 ? 15 : static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 3;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit && out.size() < n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

std::uint64_t kronecker_size(int n_z, std::uint64_t k, int d) {
    if (n_z < 1 || k < 1 || d < 1) throw Error(ErrorKind::InvalidArgument, "kronecker family needs n_z, k, d >= 1");
    long double pairs = static_cast<long double>(k) * static_cast<long double>(k - 1) / 2.0L;
    long double v = static_cast<long double>(n_z) * pairs * std::log2(static_cast<long double>(d) + 1.0L);
    if (v >= 1.8e19L) return UINT64_MAX;
    std::uint64_t N = static_cast<std::uint64_t>(std::ceil(v - 1e-12L));
    return std::max<std::uint64_t>(N, 1);
}

KroneckerFamily kronecker_family(int n_z, std::uint64_t k, int d, std::uint64_t max_members) {
    KroneckerFamily f;
    f.n_z = n_z;
    f.k = k;
    f.d = d;
    f.N = kronecker_size(n_z, k, d);
    if (f.N > max_members) {
        throw Error(ErrorKind::EnumerationCapExceeded,
                    "kronecker family of size " + std::to_string(f.N) + " exceeds cap " + std::to_string(max_members));
    }
    f.primes = first_primes(f.N);
    return f;
}

std::uint64_t KroneckerFamily::weight(std::uint64_t t, int i) const {
    return powmod_u64(static_cast<std::uint64_t>(d) + 1, static_cast<std::uint64_t>(i - 1), primes.at(t));
}

WeightAssignment KroneckerFamily::member(std::uint64_t t) const {
    WeightAssignment w;
    w.w.resize(n_z);
    for (int i = 1; i <= n_z; ++i) w.w[i - 1] = weight(t, i);
    return w;
}

std::uint64_t KroneckerFamily::weight_bound() const {
    if (N < 4) return primes.empty() ? 2 : primes.back();
    double x = static_cast<double>(N);
    return static_cast<std::uint64_t>(std::ceil(2.0 * x * std::log2(x)));
}

bool separates(const WeightAssignment& w, const std::vector<ZMono>& set) {
    std::set<std::uint64_t> seen;
    std::set<ZMono> distinct(set.begin(), set.end());
    for (const ZMono& m : distinct) {
        if (!seen.insert(w.of(m)).second) return false;
    }
    return true;
}

std::vector<UnambiguousCircuit> set_multilinearize(const Circuit& c, int d) {
    if (c.degree() > d) {
        throw Error(ErrorKind::DegreeExceeded,
                    "syntactic degree " + std::to_string(c.degree()) + " exceeds d=" + std::to_string(d));
    }
    const Homogenized H = homogenize_gates(c, d);
    const Circuit& h = H.circuit;
    Circuit z;
    z.mode = Mode::Comm;
    z.p = c.p;
    z.n = c.n * d * d;

    // entries[g][(k1-1)*d + (k2-1)] is the z-gate of entry (k1, k1+e, k2) of
    // gate g of degree e, or -1 when that entry is identically zero.
    std::vector<std::vector<int>> entries(h.gates.size());
    auto sum = [&](int a, int b) {
        if (a < 0) return b;
        if (b < 0) return a;
        return z.add_add(a, b);
    };
    auto prod = [&](int a, int b) { return (a < 0 || b < 0) ? -1 : z.add_mul(a, b); };
    auto at = [&](int g, int k1, int k2) -> int {
        if (k2 > d) return -1;
        return entries[g][(k1 - 1) * d + (k2 - 1)];
    };

    for (int id = 0; id < h.size(); ++id) {
        const Gate& g = h.gates[id];
        const int e = g.degree;
        if (e < 1 || e > d) continue;
        std::vector<int>& E = entries[id];
        E.assign(static_cast<std::size_t>(d - e + 1) * d, -1);
        for (int k1 = 1; k1 <= d - e + 1; ++k1) {
            for (int k2 = 1; k2 <= d; ++k2) {
                int& slot = E[(k1 - 1) * d + (k2 - 1)];
                switch (g.kind) {
                    case GateKind::Var: slot = z.add_var(static_cast<int>(z_flat(g.var, k1, k2, d)) + 1); break;
                    case GateKind::Const: break;
                    case GateKind::Add: slot = sum(at(g.l, k1, k2), at(g.r, k1, k2)); break;
                    case GateKind::Mulc: {
                        int a = at(g.l, k1, k2);
                        slot = (a < 0 || g.c == 0) ? -1 : z.add_mulc(a, g.c);
                        break;
                    }
                    case GateKind::Mul: {
                        const int e1 = h.gates[g.l].degree, e2 = h.gates[g.r].degree;
                        int t = prod(at(g.l, k1, k2 + 1), at(g.r, k1 + e1, k2 + 1));
                        if (c.mode == Mode::Comm) t = sum(t, prod(at(g.r, k1, k2 + 1), at(g.l, k1 + e2, k2 + 1)));
                        slot = t;
                        break;
                    }
                }
            }
        }
    }

    std::vector<UnambiguousCircuit> out;
    const auto& comp = H.comp[c.output];
    for (int dp = 1; dp <= d; ++dp) {
        UnambiguousCircuit u;
        u.n = c.n;
        u.d = d;
        u.degree = dp;
        int g = dp < static_cast<int>(comp.size()) ? comp[dp] : -1;
        int root = g < 0 ? -1 : entries[g][0];
        if (root < 0) {
            u.circuit.mode = Mode::Comm;
            u.circuit.p = c.p;
            u.circuit.n = z.n;
            u.circuit.output = u.circuit.add_const(0);
        } else {
            u.circuit = extract(z, root);
        }
        out.push_back(std::move(u));
    }
    return out;
}

bool is_unambiguous(const Circuit& zc, std::uint64_t cap) {
    Circuit comm = zc;
    comm.mode = Mode::Comm;
    std::map<ZMono, std::set<std::string>> shapes;
    for (const ReducedTree& t : reduced_parse_trees(comm, cap)) {
        ZMono m;
        std::string key;
        if (!t.constant) {
            for (int v : encode(t.tree).sigma) m.push_back(static_cast<std::uint32_t>(v - 1));
            std::sort(m.begin(), m.end());
            key = t.tree.literal();
        }
        shapes[m].insert(key);
    }
    for (const auto& kv : shapes) {
        if (kv.second.size() > 1) return false;
    }
    return true;
}

BiwaEnumerator::BiwaEnumerator(int n_z, int s, int d, int delta, std::uint64_t cap)
    : n_z_(n_z), d_(d), delta_(delta) {
    if (n_z < 1 || s < 1 || d < 1 || delta < 0) throw Error(ErrorKind::InvalidArgument, "bad candidate parameters");
    if (delta > 0) {
        std::uint64_t k = checked_mul(checked_mul(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(s)),
                                      static_cast<std::uint64_t>(delta));
        std::uint64_t N = kronecker_size(n_z, k, d);
        count_ = sat_pow(N, delta);
        if (count_ > cap) {
            throw Error(ErrorKind::EnumerationCapExceeded,
                        "candidate count " + (count_ == UINT64_MAX ? std::string("> 2^64") : std::to_string(count_)) +
                            " exceeds cap " + std::to_string(cap) + " (family size " + std::to_string(N) + ", depth " +
                            std::to_string(delta) + ")");
        }
        family_ = kronecker_family(n_z, k, d, cap);
    }
    reset();
}

void BiwaEnumerator::reset() {
    cursor_.assign(delta_, 0);
    done_ = false;
}

bool BiwaEnumerator::next(BiwaCandidate& out) {
    if (done_) return false;
    std::vector<std::vector<std::uint64_t>> comp(delta_ + 1, std::vector<std::uint64_t>(n_z_));
    std::uint64_t maxw = 0;
    for (int i = 1; i <= n_z_; ++i) {
        comp[0][i - 1] = static_cast<std::uint64_t>(i);
        maxw = std::max<std::uint64_t>(maxw, i);
    }
    for (int r = 1; r <= delta_; ++r) {
        for (int i = 1; i <= n_z_; ++i) {
            comp[r][i - 1] = family_.weight(cursor_[r - 1], i);
            maxw = std::max(maxw, comp[r][i - 1]);
        }
    }
    out.members = cursor_;
    out.B = checked_add(1, checked_mul(static_cast<std::uint64_t>(d_), maxw));
    out.w.w.assign(n_z_, 0);
    for (int i = 0; i < n_z_; ++i) {
        std::uint64_t acc = 0;
        for (int r = 0; r <= delta_; ++r) acc = checked_add(checked_mul(acc, out.B), comp[r][i]);
        out.w.w[i] = acc;
    }
    int pos = delta_ - 1;
    while (pos >= 0) {
        if (++cursor_[pos] < family_.N) break;
        cursor_[pos] = 0;
        --pos;
    }
    if (pos < 0) done_ = true;
    return true;
}

BiwaVerifier::BiwaVerifier(const Circuit& uc, std::size_t max_terms) : F_(uc.field()) {
    Circuit sub = extract(uc, uc.output);
    dim_ = sub.gates.size();
    auto table = assoc_coeff_table(sub, max_terms);
    std::map<ZMono, Vec> vecs;
    for (std::size_t g = 0; g < dim_; ++g) {
        for (const auto& [m, c] : table[g]) {
            auto it = vecs.find(m);
            if (it == vecs.end()) it = vecs.emplace(m, Vec(dim_, 0)).first;
            it->second[g] = c;
        }
    }
    for (auto& [m, v] : vecs) {
        monos_.push_back(m);
        vecs_.push_back(std::move(v));
    }
    output_ = std::move(table[sub.output]);
}

BiwaCheck BiwaVerifier::check(const WeightAssignment& w) const {
    std::vector<std::pair<std::uint64_t, std::size_t>> order;
    order.reserve(monos_.size());
    for (std::size_t t = 0; t < monos_.size(); ++t) order.emplace_back(w.of(monos_[t]), t);
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    BiwaCheck res;
    SpanBasis all(F_, dim_);
    std::vector<char> in_basis(order.size(), 0);
    for (std::size_t t = 0; t < order.size(); ++t) {
        if (all.insert(vecs_[order[t].second])) {
            in_basis[t] = 1;
            res.basis.push_back(monos_[order[t].second]);
        }
    }
    res.spans = true;
    for (std::size_t t = 0; t < order.size(); ++t) {
        if (!in_basis[t] && !all.contains(vecs_[order[t].second])) res.spans = false;
    }
    res.injective = true;
    std::set<std::uint64_t> basis_weights;
    for (std::size_t t = 0; t < order.size(); ++t) {
        if (in_basis[t] && !basis_weights.insert(order[t].first).second) res.injective = false;
    }
    res.lighter = true;
    SpanBasis lighter(F_, dim_);
    for (std::size_t lo = 0; lo < order.size();) {
        std::size_t hi = lo;
        while (hi < order.size() && order[hi].first == order[lo].first) ++hi;
        for (std::size_t t = lo; t < hi; ++t) {
            if (!in_basis[t] && !lighter.contains(vecs_[order[t].second])) res.lighter = false;
        }
        for (std::size_t t = lo; t < hi; ++t) {
            if (in_basis[t]) lighter.insert(vecs_[order[t].second]);
        }
        lo = hi;
    }
    return res;
}

BiwaCheck check_biwa(const WeightAssignment& w, const Circuit& uc, std::size_t max_terms) {
    return BiwaVerifier(uc, max_terms).check(w);
}

bool verify_biwa(const WeightAssignment& w, const Circuit& uc, std::size_t max_terms) {
    return check_biwa(w, uc, max_terms).ok();
}

std::map<std::uint64_t, u64> univariate_image(const WeightAssignment& w, const ZPoly& f, const Field& F) {
    std::map<std::uint64_t, u64> out;
    for (const auto& [m, c] : f) {
        u64& slot = out[w.of(m)];
        slot = F.add(slot, c);
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second == 0 ? out.erase(it) : std::next(it);
    }
    return out;
}

std::map<std::uint64_t, u64> univariate_image(const WeightAssignment& w, const Circuit& uc) {
    return univariate_image(w, expand_assoc(uc), uc.field());
}

namespace {

std::uint64_t degree_bound(const BiwaCandidate& c, int d, const Field& F) {
    std::uint64_t D = checked_mul(static_cast<std::uint64_t>(d), c.w.max_weight());
    if (F.p() <= D) {
        throw Error(ErrorKind::FieldTooSmall,
                    "field size " + std::to_string(F.p()) + " must exceed the univariate degree bound " + std::to_string(D));
    }
    return D;
}

}  // namespace

std::uint64_t hitting_set_size(int n_z, int s, int d, int delta, const Field& F, const HittingBudget& budget) {
    BiwaEnumerator en(n_z, s, d, delta, budget.max_candidates);
    BiwaCandidate cand;
    std::uint64_t total = 0;
    while (en.next(cand)) {
        total = checked_add(total, checked_add(degree_bound(cand, d, F), 1));
        if (total > budget.max_points) {
            throw Error(ErrorKind::EnumerationCapExceeded,
                        "hitting set exceeds " + std::to_string(budget.max_points) + " points");
        }
    }
    return total;
}

void for_each_unambiguous_point(int n_z, int s, int d, int delta, const Field& F, const HittingBudget& budget,
                                const std::function<bool(const std::vector<u64>&)>& visit) {
    hitting_set_size(n_z, s, d, delta, F, budget);
    BiwaEnumerator en(n_z, s, d, delta, budget.max_candidates);
    BiwaCandidate cand;
    std::vector<u64> pt(n_z);
    while (en.next(cand)) {
        const std::uint64_t D = degree_bound(cand, d, F);
        for (std::uint64_t t = 1; t <= D + 1; ++t) {
            const u64 base = F.reduce(t);
            for (int i = 0; i < n_z; ++i) pt[i] = F.pow(base, cand.w.w[i]);
            if (!visit(pt)) return;
        }
    }
}

std::vector<std::vector<u64>> hitting_set_unambiguous(int n_z, int s, int d, int delta, const Field& F,
                                                      const HittingBudget& budget) {
    std::vector<std::vector<u64>> out;
    for_each_unambiguous_point(n_z, s, d, delta, F, budget, [&](const std::vector<u64>& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

namespace {

void nonassoc_sizes(int n, int s, int d, int* n_z, int* s_z) {
    if (n < 1 || s < 1 || d < 1) throw Error(ErrorKind::InvalidArgument, "hitting set needs n, s, d >= 1");
    std::uint64_t nz = checked_mul(static_cast<std::uint64_t>(n), checked_mul(d, d));
    std::uint64_t sz = checked_mul(3, checked_mul(checked_mul(checked_mul(d, d), checked_mul(d, d)), s));
    if (nz > 1000000 || sz > 1000000000) throw Error(ErrorKind::EnumerationCapExceeded, "z-side parameters too large");
    *n_z = static_cast<int>(nz);
    *s_z = static_cast<int>(sz);
}

}  // namespace

void for_each_nonassoc_point(int n, int s, int d, int delta, const Field& F, const HittingBudget& budget,
                             const std::function<bool(const std::vector<AlgebraElem>&)>& visit) {
    int n_z = 0, s_z = 0;
    nonassoc_sizes(n, s, d, &n_z, &s_z);
    std::vector<AlgebraElem> pts(n);
    for_each_unambiguous_point(n_z, s_z, d, delta, F, budget, [&](const std::vector<u64>& zp) {
        for (int i = 1; i <= n; ++i) {
            pts[i - 1] = make_Zi(i, d, [&](int ii, int j, int k) { return zp[z_flat(ii, j, k, d)]; });
        }
        return visit(pts);
    });
}

std::vector<std::vector<AlgebraElem>> hitting_set_nonassoc(int n, int s, int d, int delta, Mode mode, const Field& F,
                                                           const HittingBudget& budget) {
    // A_d and C_d share their underlying vector space; the mode only selects
    // which product a caller will evaluate with.
    (void)mode;
    std::vector<std::vector<AlgebraElem>> out;
    for_each_nonassoc_point(n, s, d, delta, F, budget, [&](const std::vector<AlgebraElem>& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

DetVerdict blackbox_pit_det(const BlackBox& bb, int s, int delta, const HittingBudget& budget) {
    DetVerdict v;
    const Field F(bb.p);
    for_each_nonassoc_point(bb.n, s, std::max(1, bb.d), delta, F, budget, [&](const std::vector<AlgebraElem>& pts) {
        ++v.queries;
        if (bb.query_counter) ++*bb.query_counter;
        if (!bb.eval(pts).is_zero()) {
            v.zero = false;
            v.witness = pts;
            return false;
        }
        return true;
    });
    return v;
}

}  // namespace nacirc
