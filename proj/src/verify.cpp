#include "nacirc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "nacirc/algebra.hpp"
#include "nacirc/error.hpp"
#include "nacirc/oracle.hpp"
#include "nacirc/randpit.hpp"

namespace nacirc {

namespace {

Circuit blank(Mode mode, int n, u64 p) {
    Circuit c;
    c.mode = mode;
    c.p = p;
    c.n = n;
    return c;
}

// Appends the gates of src to dst, optionally swapping product children, and
// returns the id of src's output in dst.
int append_gates(Circuit& dst, const Circuit& src, bool swap_children) {
    std::vector<int> id(src.gates.size());
    for (int g = 0; g < src.size(); ++g) {
        const Gate& s = src.gates[g];
        switch (s.kind) {
            case GateKind::Var: id[g] = dst.add_var(s.var); break;
            case GateKind::Const: id[g] = dst.add_const(s.c); break;
            case GateKind::Add: id[g] = dst.add_add(id[s.l], id[s.r]); break;
            case GateKind::Mulc: id[g] = dst.add_mulc(id[s.l], s.c); break;
            case GateKind::Mul:
                id[g] = swap_children ? dst.add_mul(id[s.r], id[s.l]) : dst.add_mul(id[s.l], id[s.r]);
                break;
        }
    }
    return id[src.output];
}

int build_monomial(Circuit& c, const Monomial& m, std::map<int, int>& leaves) {
    if (m.is_leaf()) {
        auto it = leaves.find(m.var());
        if (it != leaves.end()) return it->second;
        int g = c.add_var(m.var());
        leaves.emplace(m.var(), g);
        return g;
    }
    int l = build_monomial(c, m.left(), leaves);
    int r = build_monomial(c, m.right(), leaves);
    return c.add_mul(l, r);
}

Circuit product_circuit(Mode mode, u64 p, int n, const std::vector<std::pair<std::string, u64>>& terms) {
    Circuit c = blank(mode, n, p);
    std::map<int, int> leaves;
    int acc = -1;
    for (const auto& [lit, coeff] : terms) {
        int g = build_monomial(c, parse_monomial(lit), leaves);
        if (coeff != 1) g = c.add_mulc(g, coeff);
        acc = acc < 0 ? g : c.add_add(acc, g);
    }
    c.output = acc;
    return c;
}

u64 eval_zpoly(const Field& F, const ZPoly& f, const std::vector<u64>& z) {
    u64 acc = 0;
    for (const auto& [m, c] : f) {
        u64 t = c;
        for (std::uint32_t v : m) t = F.mul(t, z[v]);
        acc = F.add(acc, t);
    }
    return acc;
}

AlgebraElem uniform_elem(int d, const Field& F, Rng& rng) {
    AlgebraElem e = AlgebraElem::zero(d);
    for (u64& v : e.body) v = rng.below(F.p());
    e.scalar = rng.below(F.p());
    return e;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t x = seed * 0x9E3779B97F4A7C15ULL + a * 0xBF58476D1CE4E5B9ULL + b * 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::string count_line(std::uint64_t ok, std::uint64_t total, const std::string& what) {
    return std::to_string(ok) + "/" + std::to_string(total) + " " + what;
}

CriterionResult named(int id, const std::string& name) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    return r;
}

struct Tally {
    std::uint64_t checked = 0, failed = 0, capped = 0;
    std::string first_failure;

    void fail(const std::string& why) {
        ++failed;
        if (first_failure.empty()) first_failure = why;
    }
};

void finish(CriterionResult& r, const Tally& t, const std::string& detail, bool extra_ok = true) {
    r.checked = t.checked;
    r.failed = t.failed;
    r.capped = t.capped;
    r.pass = extra_ok && t.failed == 0 && t.capped == 0;
    r.detail = detail;
    if (!t.first_failure.empty()) r.detail += "; first failure: " + t.first_failure;
}

std::vector<Circuit> fixture_set(Mode mode, u64 p) {
    std::vector<Circuit> out = {
        associator_circuit(mode, p), commutator_circuit(mode, p), jordan_circuit(mode, p),
        square_circuit(mode, p),     zero_circuit(mode, 1, p),    constant_circuit(mode, 5, 2, p),
    };
    out.push_back(pad_with_zero(associator_circuit(mode, p), jordan_circuit(mode, p)));
    out.push_back(pad_with_zero(commutator_circuit(mode, p), square_circuit(mode, p)));
    out.push_back(pad_with_zero(jordan_circuit(mode, p), associator_circuit(mode, p)));
    out.push_back(pad_with_zero(zero_circuit(mode, 3, p), commutator_circuit(mode, p)));
    return out;
}

// Random circuits with n <= 4, syntactic degree <= 6 and size <= 25; every
// fourth one is a difference of two structural copies.
Circuit corpus_circuit(Mode mode, u64 p, std::uint64_t seed) {
    Rng rng(seed);
    int n = static_cast<int>(rng.range(1, 4));
    int deg = static_cast<int>(rng.range(1, 6));
    if (rng.below(4) == 3) {
        Circuit base = gen_random(n, static_cast<int>(rng.range(1, 11)), deg, mode, rng.next(), p);
        return difference_of_copies(base, rng.coin(1, 2));
    }
    return gen_random(n, static_cast<int>(rng.range(1, 25)), deg, mode, rng.next(), p);
}

// ---- criterion 1 ----------------------------------------------------------

CriterionResult oracle_agreement(const VerifyOptions& opt) {
    CriterionResult r = named(1, "whitebox vs oracle");
    const int per_mode = opt.corpus == CorpusSize::Full ? 1000 : 100;
    Tally t;
    std::uint64_t zeros = 0;
    auto check = [&](const Circuit& c, const std::string& label) {
        ++t.checked;
        try {
            Poly f = expand(c);
            WhiteboxVerdict v = whitebox_pit(c, opt.whitebox);
            if (v.zero != f.is_zero()) {
                t.fail(label + " verdict differs");
                return;
            }
            if (f.is_zero()) {
                ++zeros;
                return;
            }
            u64 want = v.witness_constant ? f.constant : poly_coeff(f, v.witness, c.mode);
            if (want == 0 || want != v.witness_coeff) t.fail(label + " witness coefficient differs");
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::TermCapExceeded) {
                ++t.capped;
            } else {
                t.fail(label + ": " + e.what());
            }
        }
    };
    for (Mode mode : {Mode::Comm, Mode::NonComm}) {
        int k = 0;
        for (const Circuit& c : fixture_set(mode, opt.p)) check(c, std::string(mode_name(mode)) + " fixture " + std::to_string(k++));
        for (int i = 0; i < per_mode; ++i) {
            check(corpus_circuit(mode, opt.p, mix(opt.seed, 1, static_cast<std::uint64_t>(i) * 2 + (mode == Mode::Comm))),
                  std::string(mode_name(mode)) + " random " + std::to_string(i));
        }
    }
    finish(r, t, count_line(t.checked - t.failed - t.capped, t.checked, "circuits agree") + " (" + std::to_string(zeros) + " zero)");
    return r;
}

// ---- criterion 2 ----------------------------------------------------------

CriterionResult entry_formula(const VerifyOptions& opt) {
    CriterionResult r = named(2, "entry closed forms");
    const int max_deg = 4;
    const int inst = opt.corpus == CorpusSize::Full ? 5 : 2;
    const int n = 3;
    const Field F(opt.p);
    Rng rng(mix(opt.seed, 2));
    Tally t;
    for (Mode mode : {Mode::Comm, Mode::NonComm}) {
        for (int deg = 1; deg <= max_deg; ++deg) {
            for (const Monomial& m : all_monomials(n, deg)) {
                const Circuit mc = monomial_circuit(m, mode, n, opt.p);
                for (int d : std::set<int>{deg, max_deg}) {
                    std::map<std::pair<int, int>, ZPoly> closed;
                    for (int k1 = 1; k1 <= d - deg + 1; ++k1) {
                        for (int k2 = 1; k2 <= d - m.depth() + 1; ++k2) closed[{k1, k2}] = phi_entry(m, mode, d, k1, k2, F);
                    }
                    for (int rep = 0; rep < inst; ++rep) {
                        ++t.checked;
                        std::vector<u64> z(static_cast<std::size_t>(n) * d * d);
                        for (u64& v : z) v = rng.below(F.p());
                        std::vector<AlgebraElem> pts;
                        for (int i = 1; i <= n; ++i) {
                            pts.push_back(make_Zi(i, d, [&](int a, int b, int c) { return z[z_flat(a, b, c, d)]; }));
                        }
                        AlgebraElem val = eval_circuit(mc, pts);
                        bool ok = val.scalar == 0;
                        for (int k = 1; k <= d && ok; ++k) {
                            for (int i = 1; i <= d + 1 && ok; ++i) {
                                for (int j = 1; j <= d + 1 && ok; ++j) {
                                    u64 want = 0;
                                    if (j == i + deg) {
                                        auto it = closed.find({i, k});
                                        if (it != closed.end()) want = eval_zpoly(F, it->second, z);
                                    }
                                    ok = val.at(i, j, k) == want;
                                }
                            }
                        }
                        if (!ok) t.fail(std::string(mode_name(mode)) + " " + m.literal() + " d=" + std::to_string(d));
                    }
                }
            }
        }
    }
    finish(r, t, count_line(t.checked - t.failed, t.checked, "instantiations match"));
    return r;
}

// ---- criterion 3 ----------------------------------------------------------

CriterionResult sz_bound(const VerifyOptions& opt) {
    CriterionResult r = named(3, "zero-evaluation rate");
    const bool full = opt.corpus == CorpusSize::Full;
    const std::uint64_t trials = full ? 10000 : 2000;
    Tally t;
    double worst = 0.0;
    for (Mode mode : {Mode::Comm, Mode::NonComm}) {
        for (int d = 2; d <= 4; ++d) {
            std::vector<Circuit> nonzero, zero;
            if (d == 2) {
                nonzero.push_back(square_circuit(mode, opt.p));
                nonzero.push_back(mode == Mode::NonComm ? commutator_circuit(mode, opt.p)
                                                        : product_circuit(mode, opt.p, 2, {{"(1 2)", 1}}));
            } else if (d == 3) {
                nonzero.push_back(associator_circuit(mode, opt.p));
                nonzero.push_back(product_circuit(mode, opt.p, 1, {{"((1 1) 1)", 1}}));
            } else {
                nonzero.push_back(jordan_circuit(mode, opt.p));
                nonzero.push_back(product_circuit(mode, opt.p, 1, {{"((1 1) (1 1))", 1}, {"(1 (1 (1 1)))", opt.p - 1}}));
            }
            if (!full) nonzero.resize(1);
            for (std::uint64_t s = 0; nonzero.size() < (full ? 3u : 2u) && s < 1000; ++s) {
                Circuit c = gen_random(3, 12, d, mode, mix(opt.seed, 3, s * 16 + d * 2 + (mode == Mode::Comm)), opt.p);
                if (c.degree() == d && !expand(c).is_zero()) nonzero.push_back(c);
            }
            if (mode == Mode::Comm && d == 2) zero.push_back(commutator_circuit(mode, opt.p));
            for (std::uint64_t s = 0; zero.size() < (d == 2 && mode == Mode::Comm ? 2u : 1u) && s < 1000; ++s) {
                Circuit c = gen_random(3, 8, d, mode, mix(opt.seed, 33, s * 16 + d * 2 + (mode == Mode::Comm)), opt.p);
                if (c.degree() == d) zero.push_back(difference_of_copies(c, mode == Mode::Comm));
            }
            const std::vector<u64> S = iota_set(100 * static_cast<u64>(d));
            const double b = static_cast<double>(d) / static_cast<double>(S.size());
            const double limit = b + 3.0 * std::sqrt(b * (1.0 - b) / static_cast<double>(trials));
            Rng rng(mix(opt.seed, 3, static_cast<std::uint64_t>(d) * 2 + (mode == Mode::Comm)));
            for (const Circuit& c : nonzero) {
                ++t.checked;
                if (expand(c).is_zero()) {
                    t.fail("corpus polynomial is zero");
                    continue;
                }
                FailureRate fr = zero_evaluation_rate(c, d, S, trials, rng);
                worst = std::max(worst, fr.rate());
                if (fr.rate() > limit) {
                    std::ostringstream o;
                    o << mode_name(mode) << " d=" << d << " rate " << fr.rate() << " > " << limit;
                    t.fail(o.str());
                }
            }
            for (const Circuit& c : zero) {
                ++t.checked;
                if (!expand(c).is_zero()) {
                    t.fail("zero corpus polynomial is nonzero");
                    continue;
                }
                FailureRate fr = zero_evaluation_rate(c, d, S, trials / 10, rng);
                if (fr.zeros != fr.trials) t.fail(std::string(mode_name(mode)) + " zero polynomial evaluated nonzero");
            }
        }
    }
    std::ostringstream o;
    o << count_line(t.checked - t.failed, t.checked, "polynomials within bound") << ", worst nonzero rate " << worst
      << " over " << trials << " trials";
    finish(r, t, o.str());
    return r;
}

// ---- criterion 4 ----------------------------------------------------------

CriterionResult round_trip(const VerifyOptions& opt) {
    CriterionResult r = named(4, "monomial code round trip");
    const bool full = opt.corpus == CorpusSize::Full;
    const int max_deg = full ? 5 : 4;
    const int samples = full ? 10000 : 1000;
    Tally t;
    std::set<MonomialCode> codes;
    std::uint64_t exhaustive = 0;
    for (int deg = 1; deg <= max_deg; ++deg) {
        for (const Monomial& m : all_monomials(3, deg)) {
            ++t.checked;
            ++exhaustive;
            MonomialCode code = encode(m);
            if (!codes.insert(code).second) t.fail("duplicate code for " + m.literal());
            if (decode(code) != m) t.fail("round trip of " + m.literal());
        }
    }
    Rng rng(mix(opt.seed, 4));
    for (int i = 0; i < samples; ++i) {
        ++t.checked;
        Monomial m = random_monomial(3, static_cast<int>(rng.range(1, 8)), rng);
        if (decode(encode(m)) != m) t.fail("round trip of " + m.literal());
    }
    finish(r, t,
           std::to_string(exhaustive) + " exhaustive trees (degree <= " + std::to_string(max_deg) + ") and " +
               std::to_string(samples) + " sampled trees round trip");
    return r;
}

// ---- criterion 5 ----------------------------------------------------------

CriterionResult set_mult(const VerifyOptions& opt) {
    CriterionResult r = named(5, "set-multilinearization");
    const int count = opt.corpus == CorpusSize::Full ? 50 : 15;
    const Field F(opt.p);
    Tally t;
    std::uint64_t components = 0;
    for (int i = 0; i < count; ++i) {
        Rng rng(mix(opt.seed, 5, static_cast<std::uint64_t>(i)));
        Mode mode = i % 2 ? Mode::NonComm : Mode::Comm;
        Circuit c = gen_random(static_cast<int>(rng.range(1, 3)), static_cast<int>(rng.range(2, 8)),
                               static_cast<int>(rng.range(1, 4)), mode, rng.next(), opt.p);
        ++t.checked;
        const std::string label = std::string(mode_name(mode)) + " circuit " + std::to_string(i);
        const int d = std::max(1, c.degree());
        Poly f = expand(c);
        try {
            for (const UnambiguousCircuit& u : set_multilinearize(c, d)) {
                ++components;
                ZPoly want;
                for (const auto& [m, coeff] : f.terms) {
                    if (m.degree() != u.degree) continue;
                    for (const auto& [zm, zc] : phi_mono(m, mode, d, F)) zpoly_add_term(want, zm, F.mul(coeff, zc), F);
                }
                if (expand_assoc(u.circuit) != want) t.fail(label + " degree " + std::to_string(u.degree) + " expansion");
                if (u.size() > 3 * d * d * d * d * c.size()) t.fail(label + " size bound");
                if (u.product_depth() > c.product_depth()) t.fail(label + " product depth");
                if (!is_unambiguous(u.circuit)) t.fail(label + " ambiguous");
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::CapExceeded) {
                ++t.capped;
            } else {
                t.fail(label + ": " + e.what());
            }
        }
    }
    finish(r, t, count_line(t.checked - t.failed - t.capped, t.checked, "circuits") + " (" + std::to_string(components) +
                     " z-circuits checked)");
    return r;
}

// ---- criterion 6 ----------------------------------------------------------

std::vector<ZMono> bounded_monomials(int n_z, int d) {
    std::vector<ZMono> out;
    std::vector<int> e(n_z, 0);
    while (true) {
        ZMono m;
        for (int i = 0; i < n_z; ++i) {
            for (int r = 0; r < e[i]; ++r) m.push_back(static_cast<std::uint32_t>(i));
        }
        out.push_back(m);
        int pos = 0;
        while (pos < n_z && e[pos] == d) e[pos++] = 0;
        if (pos == n_z) break;
        ++e[pos];
    }
    return out;
}

CriterionResult kronecker(const VerifyOptions& opt) {
    CriterionResult r = named(6, "kronecker separation");
    Tally t;
    {
        const KroneckerFamily fam = kronecker_family(3, 3, 2);
        const std::vector<ZMono> mons = bounded_monomials(3, 2);
        std::vector<std::vector<std::uint64_t>> wt(fam.N, std::vector<std::uint64_t>(mons.size()));
        for (std::uint64_t f = 0; f < fam.N; ++f) {
            WeightAssignment w = fam.member(f);
            for (std::size_t m = 0; m < mons.size(); ++m) wt[f][m] = w.of(mons[m]);
        }
        auto separated = [&](const std::vector<std::size_t>& set) {
            for (std::uint64_t f = 0; f < fam.N; ++f) {
                bool ok = true;
                for (std::size_t a = 0; a < set.size() && ok; ++a) {
                    for (std::size_t b = a + 1; b < set.size() && ok; ++b) ok = wt[f][set[a]] != wt[f][set[b]];
                }
                if (ok) return true;
            }
            return false;
        };
        const std::size_t M = mons.size();
        for (std::size_t a = 0; a < M; ++a) {
            ++t.checked;
            for (std::size_t b = a + 1; b < M; ++b) {
                ++t.checked;
                if (!separated({a, b})) t.fail("pair not separated");
                for (std::size_t c = b + 1; c < M; ++c) {
                    ++t.checked;
                    if (!separated({a, b, c})) t.fail("triple not separated");
                }
            }
        }
    }
    const std::uint64_t exhaustive = t.checked;
    {
        const KroneckerFamily fam = kronecker_family(6, 4, 3);
        std::vector<WeightAssignment> members;
        for (std::uint64_t f = 0; f < fam.N; ++f) members.push_back(fam.member(f));
        Rng rng(mix(opt.seed, 6));
        for (int i = 0; i < 100; ++i) {
            std::set<ZMono> set;
            while (set.size() < 4) {
                ZMono m;
                for (int v = 0; v < 6; ++v) {
                    int e = static_cast<int>(rng.below(4));
                    for (int r2 = 0; r2 < e; ++r2) m.push_back(static_cast<std::uint32_t>(v));
                }
                set.insert(m);
            }
            std::vector<ZMono> list(set.begin(), set.end());
            ++t.checked;
            bool ok = false;
            for (const auto& w : members) {
                if (separates(w, list)) {
                    ok = true;
                    break;
                }
            }
            if (!ok) t.fail("sampled 4-set not separated");
        }
    }
    finish(r, t, std::to_string(exhaustive) + " exhaustive subsets and 100 sampled 4-sets, " +
                     std::to_string(t.failed) + " unseparated");
    return r;
}

// ---- criterion 7 ----------------------------------------------------------

Circuit zc_from_terms(u64 p, int n_z, const std::vector<std::pair<std::string, u64>>& terms) {
    return product_circuit(Mode::Comm, p, n_z, terms);
}

std::vector<Circuit> biwa_corpus(const VerifyOptions& opt) {
    const u64 p = opt.p;
    std::vector<Circuit> out;
    // Hand-built unambiguous circuits.
    out.push_back(zc_from_terms(p, 2, {{"1", 1}, {"2", 2}}));
    out.push_back(zc_from_terms(p, 3, {{"1", 1}, {"2", 1}, {"3", p - 1}}));
    out.push_back(zc_from_terms(p, 2, {{"(1 2)", 1}}));
    out.push_back(zc_from_terms(p, 1, {{"(1 1)", 3}}));
    out.push_back(zc_from_terms(p, 4, {{"(1 2)", 1}, {"(3 4)", 1}}));
    {
        Circuit c = blank(Mode::Comm, 3, p);
        int a = c.add_var(1), b = c.add_var(2), z3 = c.add_var(3);
        c.output = c.add_mul(c.add_add(a, b), z3);
        out.push_back(c);
    }
    {
        Circuit c = blank(Mode::Comm, 4, p);
        int a = c.add_var(1), b = c.add_var(2), z3 = c.add_var(3), z4 = c.add_var(4);
        c.output = c.add_mul(c.add_add(a, b), c.add_add(z3, z4));
        out.push_back(c);
    }
    {
        Circuit c = blank(Mode::Comm, 3, p);
        int a = c.add_var(1), b = c.add_var(2), z3 = c.add_var(3);
        c.output = c.add_mul(c.add_add(a, c.add_mulc(b, 2)), c.add_add(a, z3));
        out.push_back(c);
    }
    if (opt.corpus == CorpusSize::Small) {
        Circuit src = product_circuit(Mode::Comm, p, 2, {{"(1 2)", 1}});
        out.push_back(set_multilinearize(src, 2)[1].circuit);
        return out;
    }
    // Components of set-multilinearized source circuits.
    std::vector<std::pair<Circuit, int>> sources;
    for (Mode mode : {Mode::Comm, Mode::NonComm}) {
        sources.push_back({product_circuit(mode, p, 2, {{"(1 2)", 1}}), 2});
        sources.push_back({square_circuit(mode, p), 2});
        sources.push_back({product_circuit(mode, p, 2, {{"1", 1}, {"2", 3}}), 1});
        sources.push_back({product_circuit(mode, p, 2, {{"1", 1}, {"2", 1}}), 2});
        sources.push_back({product_circuit(mode, p, 2, {{"1", 2}, {"(1 2)", 1}}), 2});
        sources.push_back({product_circuit(mode, p, 2, {{"(2 1)", 1}}), 2});
    }
    sources.push_back({commutator_circuit(Mode::NonComm, p), 2});
    std::set<std::string> seen;
    for (const Circuit& c : out) seen.insert(serialize(c));
    auto take = [&](const Circuit& src, int d) {
        for (const UnambiguousCircuit& u : set_multilinearize(src, d)) {
            if (u.size() > 12 || expand_assoc(u.circuit).empty()) continue;
            if (seen.insert(serialize(u.circuit)).second) out.push_back(u.circuit);
        }
    };
    for (const auto& [src, d] : sources) take(src, d);
    // Small random sources top the corpus up.
    for (std::uint64_t s = 0; out.size() < 24 && s < 200; ++s) {
        Rng rng(mix(opt.seed, 7, s));
        Mode mode = s % 2 ? Mode::NonComm : Mode::Comm;
        Circuit src = gen_random(static_cast<int>(rng.range(1, 2)), static_cast<int>(rng.range(2, 5)), 2, mode, rng.next(), p);
        take(src, std::max(1, src.degree()));
    }
    return out;
}

CriterionResult biwa(const VerifyOptions& opt) {
    CriterionResult r = named(7, "BIWA existence and soundness");
    const std::vector<Circuit> corpus = biwa_corpus(opt);
    const Field F(opt.p);
    Tally t;
    std::uint64_t candidates = 0, passing = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Circuit& uc = corpus[i];
        const std::string label = "z-circuit " + std::to_string(i);
        ++t.checked;
        if (!is_unambiguous(uc)) {
            t.fail(label + " is ambiguous");
            continue;
        }
        try {
            BiwaVerifier ver(uc);
            const bool nonzero = !ver.output().empty();
            BiwaEnumerator en(uc.n, uc.size(), std::max(1, uc.degree()), uc.product_depth(), opt.budget.max_candidates);
            BiwaCandidate cand;
            std::uint64_t ok = 0;
            bool sound = true;
            while (en.next(cand)) {
                ++candidates;
                if (!ver.check(cand.w).ok()) continue;
                ++ok;
                if (nonzero && univariate_image(cand.w, ver.output(), F).empty()) sound = false;
            }
            passing += ok;
            if (ok == 0) t.fail(label + " has no isolating candidate");
            if (!sound) t.fail(label + " maps to the zero univariate");
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::EnumerationCapExceeded || e.kind() == ErrorKind::WeightOverflow) {
                ++t.capped;
            } else {
                t.fail(label + ": " + e.what());
            }
        }
    }
    const std::uint64_t needed = opt.corpus == CorpusSize::Full ? 20 : 1;
    finish(r, t,
           count_line(t.checked - t.failed - t.capped, t.checked, "circuits isolated") + ", " + std::to_string(passing) +
               " of " + std::to_string(candidates) + " candidates verify",
           t.checked >= needed);
    return r;
}

// ---- criterion 8 ----------------------------------------------------------

std::vector<std::pair<Circuit, int>> hitting_corpus(const VerifyOptions& opt) {
    const u64 p = opt.p;
    std::vector<std::pair<Circuit, int>> out;
    for (Mode mode : {Mode::Comm, Mode::NonComm}) {
        for (int d = 1; d <= 3; ++d) {
            out.push_back({product_circuit(mode, p, 2, {{"1", 1}, {"2", 2}}), d});
            out.push_back({zero_circuit(mode, 2, p), d});
        }
        out.push_back({constant_circuit(mode, 7, 1, p), 1});
        out.push_back({difference_of_copies(product_circuit(mode, p, 3, {{"1", 1}, {"3", 4}}), false), 2});
        out.push_back({product_circuit(mode, p, 3, {{"1", 1}, {"2", 1}, {"3", p - 1}}), 3});
        out.push_back({product_circuit(mode, p, 2, {{"(1 2)", 1}}), 2});
        out.push_back({commutator_circuit(mode, p), 2});
        out.push_back({square_circuit(mode, p), 2});
        out.push_back({associator_circuit(mode, p), 3});
        if (opt.corpus == CorpusSize::Full) {
            for (std::uint64_t s = 0; s < 6; ++s) {
                Rng rng(mix(opt.seed, 8, s * 2 + (mode == Mode::Comm)));
                Circuit c = gen_random(static_cast<int>(rng.range(1, 3)), static_cast<int>(rng.range(1, 10)),
                                       static_cast<int>(rng.range(1, 3)), mode, rng.next(), p);
                if (c.product_depth() <= 2) out.push_back({c, std::max(1, c.degree())});
            }
        }
    }
    return out;
}

CriterionResult end_to_end(const VerifyOptions& opt) {
    CriterionResult r = named(8, "end-to-end hitting");
    Tally t;
    std::uint64_t hits = 0, zeros = 0, capped_deep = 0, queries = 0;
    for (const auto& [c, d] : hitting_corpus(opt)) {
        ++t.checked;
        const std::string label = std::string(mode_name(c.mode)) + " " + std::to_string(c.size()) + "-gate circuit d=" +
                                  std::to_string(d) + " depth " + std::to_string(c.product_depth());
        const bool truth_zero = expand(c).is_zero();
        const WhiteboxVerdict wb = whitebox_pit(c);
        BlackBox bb = blackbox_from_circuit(c, d);
        try {
            DetVerdict det = blackbox_pit_det(bb, c.size(), c.product_depth(), opt.budget);
            queries += det.queries;
            if (det.zero != truth_zero) t.fail(label + (truth_zero ? " hit although zero" : " missed"));
            if (det.zero != wb.zero) t.fail(label + " disagrees with whitebox");
            if (!det.zero) {
                ++hits;
                if (bb.eval(det.witness).is_zero()) t.fail(label + " witness evaluates to zero");
            } else {
                ++zeros;
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::EnumerationCapExceeded || e.kind() == ErrorKind::WeightOverflow ||
                e.kind() == ErrorKind::FieldTooSmall) {
                ++t.capped;
                if (c.product_depth() >= 1) ++capped_deep;
            } else {
                t.fail(label + ": " + e.what());
            }
        }
    }
    std::string detail = std::to_string(hits) + " hit, " + std::to_string(zeros) + " certified zero, " +
                         std::to_string(t.capped) + " of " + std::to_string(t.checked) +
                         " instances exceed the candidate or point cap (" + std::to_string(capped_deep) +
                         " with product depth >= 1), " + std::to_string(queries) + " queries";
    finish(r, t, detail);
    return r;
}

// ---- criterion 9 ----------------------------------------------------------

CriterionResult cross_eval(const VerifyOptions& opt) {
    CriterionResult r = named(9, "evaluator consistency");
    const int per_mode = opt.corpus == CorpusSize::Full ? 200 : 30;
    const Field F(opt.p);
    Tally t;
    Rng rng(mix(opt.seed, 9));
    auto check = [&](const Circuit& c) {
        ++t.checked;
        const int d = std::max(1, c.degree());
        Poly f = expand(c);
        Circuit sub = extract(c, c.output);
        sub.n = c.n;
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<AlgebraElem> pts;
            for (int i = 0; i < c.n; ++i) pts.push_back(uniform_elem(d, F, rng));
            if (eval_circuit(sub, pts, d) != eval_poly_algebra(F, f, pts, c.mode)) {
                t.fail(std::string(mode_name(c.mode)) + " circuit with " + std::to_string(c.size()) + " gates");
                return;
            }
        }
    };
    for (Mode mode : {Mode::Comm, Mode::NonComm}) {
        for (const Circuit& c : fixture_set(mode, opt.p)) check(c);
        for (int i = 0; i < per_mode; ++i) {
            check(corpus_circuit(mode, opt.p, mix(opt.seed, 1, static_cast<std::uint64_t>(i) * 2 + (mode == Mode::Comm))));
        }
    }
    finish(r, t, count_line(t.checked - t.failed, t.checked, "circuits agree at 10 random tuples"));
    return r;
}

}  // namespace

Circuit associator_circuit(Mode mode, u64 p) {
    return product_circuit(mode, p, 3, {{"((1 2) 3)", 1}, {"(1 (2 3))", p - 1}});
}

Circuit commutator_circuit(Mode mode, u64 p) { return product_circuit(mode, p, 2, {{"(1 2)", 1}, {"(2 1)", p - 1}}); }

Circuit jordan_circuit(Mode mode, u64 p) {
    Circuit c = blank(mode, 2, p);
    int x = c.add_var(1), y = c.add_var(2);
    int xx = c.add_mul(x, x);
    int lhs = c.add_mul(c.add_mul(x, y), xx);
    int rhs = c.add_mul(x, c.add_mul(y, xx));
    c.output = c.add_add(lhs, c.add_mulc(rhs, p - 1));
    return c;
}

Circuit square_circuit(Mode mode, u64 p) {
    Circuit c = blank(mode, 1, p);
    int x = c.add_var(1);
    c.output = c.add_mul(x, x);
    return c;
}

Circuit zero_circuit(Mode mode, int n, u64 p) {
    Circuit c = blank(mode, n, p);
    c.output = c.add_const(0);
    return c;
}

Circuit constant_circuit(Mode mode, u64 value, int n, u64 p) {
    Circuit c = blank(mode, n, p);
    c.output = c.add_const(value);
    return c;
}

Circuit monomial_circuit(const Monomial& m, Mode mode, int n, u64 p) {
    Circuit c = blank(mode, n, p);
    std::map<int, int> leaves;
    c.output = build_monomial(c, m, leaves);
    return c;
}

Circuit pad_with_zero(const Circuit& c, const Circuit& g) {
    if (c.mode != g.mode || c.p != g.p) throw Error(ErrorKind::InvalidArgument, "padding circuit has another mode or field");
    Circuit out = blank(c.mode, std::max(c.n, g.n), c.p);
    int a = append_gates(out, c, false);
    int b = append_gates(out, g, false);
    int b2 = append_gates(out, g, false);
    out.output = out.add_add(a, out.add_add(b, out.add_mulc(b2, c.p - 1)));
    return out;
}

Circuit difference_of_copies(const Circuit& c, bool swap_children) {
    Circuit out = blank(c.mode, c.n, c.p);
    int a = append_gates(out, c, false);
    int b = append_gates(out, c, swap_children);
    out.output = out.add_add(a, out.add_mulc(b, c.p - 1));
    return out;
}

std::vector<Monomial> all_monomials(int n, int degree) {
    std::vector<std::vector<Monomial>> by_deg(degree + 1);
    for (int v = 1; v <= n; ++v) by_deg[1].push_back(Monomial::leaf(v));
    for (int e = 2; e <= degree; ++e) {
        for (int a = 1; a < e; ++a) {
            for (const Monomial& l : by_deg[a]) {
                for (const Monomial& r : by_deg[e - a]) by_deg[e].push_back(Monomial::product(l, r));
            }
        }
    }
    return degree >= 1 ? by_deg[degree] : std::vector<Monomial>{};
}

Monomial random_monomial(int n, int degree, Rng& rng) {
    if (degree <= 1) return Monomial::leaf(1 + static_cast<int>(rng.below(n)));
    int a = static_cast<int>(rng.range(1, degree - 1));
    Monomial l = random_monomial(n, a, rng);
    return Monomial::product(l, random_monomial(n, degree - a, rng));
}

CorpusSize parse_corpus(const std::string& name) {
    if (name == "small") return CorpusSize::Small;
    if (name == "full") return CorpusSize::Full;
    throw Error(ErrorKind::InvalidArgument, "corpus must be small or full, got " + name);
}

bool VerifyReport::all_pass() const {
    for (const auto& c : criteria) {
        if (!c.pass) return false;
    }
    return true;
}

bool VerifyReport::only_cap_failures() const {
    for (const auto& c : criteria) {
        if (!c.pass && !c.unattainable()) return false;
    }
    return true;
}

VerifyReport verify_suite(const VerifyOptions& opt, const std::function<void(const CriterionResult&)>& on_result) {
    using Runner = CriterionResult (*)(const VerifyOptions&);
    const Runner runners[] = {oracle_agreement, entry_formula, sz_bound, round_trip, set_mult,
                              kronecker,        biwa,          end_to_end, cross_eval};
    VerifyReport rep;
    for (int id = 1; id <= 9; ++id) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = runners[id - 1](opt);
        } catch (const std::exception& e) {
            r.id = id;
            r.name = "criterion " + std::to_string(id);
            r.pass = false;
            r.failed = 1;
            r.detail = std::string("aborted: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (on_result) on_result(r);
        rep.criteria.push_back(std::move(r));
    }
    return rep;
}

std::string format_result(const CriterionResult& r) {
    std::string status = r.pass ? "PASS" : "FAIL";
    std::string line = status + " " + std::to_string(r.id) + " " + r.name + ": " + r.detail;
    if (r.unattainable()) line += " [cap-limited]";
    return line;
}

}  // namespace nacirc
