#include "nacirc/circuit.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "nacirc/error.hpp"
#include "nacirc/rng.hpp"

namespace nacirc {

namespace {

void check_child(const Circuit& c, int id, int child) {
    if (child == id) throw Error(ErrorKind::CycleError, "gate " + std::to_string(id) + " uses itself");
    if (child < 0 || child > id) {
        throw Error(ErrorKind::BadReference,
                    "gate " + std::to_string(id) + " references gate " + std::to_string(child) + " before its definition");
    }
    (void)c;
}

void fill_metrics(const std::vector<Gate>& gates, Gate& g) {
    switch (g.kind) {
        case GateKind::Var:
            g.degree = 1;
            g.product_depth = 0;
            break;
        case GateKind::Const:
            g.degree = 0;
            g.product_depth = 0;
            break;
        case GateKind::Add:
            g.degree = std::max(gates[g.l].degree, gates[g.r].degree);
            g.product_depth = std::max(gates[g.l].product_depth, gates[g.r].product_depth);
            break;
        case GateKind::Mul:
            g.degree = gates[g.l].degree + gates[g.r].degree;
            g.product_depth = 1 + std::max(gates[g.l].product_depth, gates[g.r].product_depth);
            break;
        case GateKind::Mulc:
            g.degree = gates[g.l].degree;
            g.product_depth = gates[g.l].product_depth;
            break;
    }
}

}  // namespace

int Circuit::push(Gate g) {
    int id = size();
    switch (g.kind) {
        case GateKind::Var:
            if (g.var < 1 || g.var > n) {
                throw Error(ErrorKind::BadReference, "variable x" + std::to_string(g.var) + " outside 1.." + std::to_string(n));
            }
            break;
        case GateKind::Const:
            g.c %= p;
            break;
        case GateKind::Add:
        case GateKind::Mul:
            check_child(*this, id, g.l);
            check_child(*this, id, g.r);
            break;
        case GateKind::Mulc:
            check_child(*this, id, g.l);
            g.c %= p;
            break;
    }
    fill_metrics(gates, g);
    gates.push_back(g);
    return id;
}

int Circuit::add_var(int i) {
    Gate g;
    g.kind = GateKind::Var;
    g.var = i;
    return push(g);
}

int Circuit::add_const(u64 c) {
    Gate g;
    g.kind = GateKind::Const;
    g.c = c;
    return push(g);
}

int Circuit::add_add(int l, int r) {
    Gate g;
    g.kind = GateKind::Add;
    g.l = l;
    g.r = r;
    return push(g);
}

int Circuit::add_mul(int l, int r) {
    Gate g;
    g.kind = GateKind::Mul;
    g.l = l;
    g.r = r;
    return push(g);
}

int Circuit::add_mulc(int child, u64 c) {
    Gate g;
    g.kind = GateKind::Mulc;
    g.l = child;
    g.c = c;
    return push(g);
}

void validate(const Circuit& c) {
    field_new(c.p);
    if (c.n < 0) throw Error(ErrorKind::InvalidArgument, "negative variable count");
    if (c.gates.empty()) throw Error(ErrorKind::InvalidArgument, "circuit has no gates");
    Circuit probe;
    probe.mode = c.mode;
    probe.p = c.p;
    probe.n = c.n;
    for (const Gate& g : c.gates) {
        if ((g.kind == GateKind::Const || g.kind == GateKind::Mulc) && g.c >= c.p) {
            throw Error(ErrorKind::InvalidArgument, "constant is not reduced modulo p");
        }
        int id = probe.push(g);
        const Gate& q = probe.gates[id];
        if (q.degree != g.degree || q.product_depth != g.product_depth) {
            throw Error(ErrorKind::InvalidArgument, "stale degree or depth on gate " + std::to_string(id));
        }
    }
    if (c.output < 0 || c.output >= c.size()) throw Error(ErrorKind::BadReference, "output is not a gate");
}

Circuit parse(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    int stage = 0;  // 0 header, 1 mode, 2 field, 3 nvars, 4 gates/output, 5 done
    Circuit c;
    auto fail = [&](const std::string& why) -> void {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + why, lineno);
    };
    auto parse_u64 = [&](const std::string& tok) -> u64 {
        if (tok.empty() || tok.size() > 20 || !std::all_of(tok.begin(), tok.end(), ::isdigit)) fail("expected integer, got '" + tok + "'");
        try {
            return std::stoull(tok);
        } catch (const std::exception&) {
            fail("integer out of range: '" + tok + "'");
        }
        return 0;
    };
    auto parse_int = [&](const std::string& tok) -> int {
        u64 v = parse_u64(tok);
        if (v > 100000000ULL) fail("index too large: '" + tok + "'");
        return static_cast<int>(v);
    };
    // Constants may be written as signed integers; they are reduced mod p.
    auto parse_const = [&](const std::string& tok) -> u64 {
        if (!tok.empty() && tok[0] == '-') {
            u64 v = parse_u64(tok.substr(1)) % c.p;
            return v == 0 ? 0 : c.p - v;
        }
        return parse_u64(tok) % c.p;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (stage == 5) fail("content after output record");
        if (stage == 0) {
            if (tok.size() != 2 || tok[0] != "nacirc" || tok[1] != "v1") fail("expected header 'nacirc v1'");
            stage = 1;
        } else if (stage == 1) {
            if (tok[0] != "mode" || tok.size() != 2) fail("expected 'mode comm|noncomm'");
            if (tok[1] == "comm") {
                c.mode = Mode::Comm;
            } else if (tok[1] == "noncomm") {
                c.mode = Mode::NonComm;
            } else {
                throw Error(ErrorKind::BadMode, "line " + std::to_string(lineno) + ": unknown mode '" + tok[1] + "'", lineno);
            }
            stage = 2;
        } else if (stage == 2) {
            if (tok[0] != "field" || tok.size() != 2) fail("expected 'field <p>'");
            c.p = parse_u64(tok[1]);
            field_new(c.p);
            stage = 3;
        } else if (stage == 3) {
            if (tok[0] != "nvars" || tok.size() != 2) fail("expected 'nvars <n>'");
            c.n = parse_int(tok[1]);
            stage = 4;
        } else if (tok[0] == "output") {
            if (tok.size() != 2) fail("expected 'output <id>'");
            int id = parse_int(tok[1]);
            if (id >= c.size()) throw Error(ErrorKind::BadReference, "output references undefined gate " + tok[1]);
            c.output = id;
            stage = 5;
        } else if (tok[0] == "gate") {
            if (tok.size() < 3) fail("truncated gate record");
            int id = parse_int(tok[1]);
            if (id != c.size()) {
                if (id > c.size()) fail("gate ids must be consecutive from 0; expected " + std::to_string(c.size()));
                fail("duplicate gate id " + tok[1]);
            }
            const std::string& kind = tok[2];
            auto want = [&](std::size_t n) {
                if (tok.size() != n) fail("wrong field count for '" + kind + "' gate");
            };
            if (kind == "var") {
                want(4);
                c.add_var(parse_int(tok[3]));
            } else if (kind == "const") {
                want(4);
                c.add_const(parse_const(tok[3]));
            } else if (kind == "add" || kind == "mul") {
                want(5);
                int l = parse_int(tok[3]), r = parse_int(tok[4]);
                kind == "add" ? c.add_add(l, r) : c.add_mul(l, r);
            } else if (kind == "mulc") {
                want(5);
                int child = parse_int(tok[3]);
                c.add_mulc(child, parse_const(tok[4]));
            } else {
                fail("unknown gate kind '" + kind + "'");
            }
        } else {
            fail("unexpected record '" + tok[0] + "'");
        }
    }
    if (stage < 5) {
        ++lineno;
        fail(stage < 4 ? "missing header records" : "missing output record");
    }
    return c;
}

std::string serialize(const Circuit& c) {
    std::ostringstream o;
    o << "nacirc v1\n";
    o << "mode " << mode_name(c.mode) << "\n";
    o << "field " << c.p << "\n";
    o << "nvars " << c.n << "\n";
    for (int id = 0; id < c.size(); ++id) {
        const Gate& g = c.gates[id];
        o << "gate " << id << ' ';
        switch (g.kind) {
            case GateKind::Var: o << "var " << g.var; break;
            case GateKind::Const: o << "const " << g.c; break;
            case GateKind::Add: o << "add " << g.l << ' ' << g.r; break;
            case GateKind::Mul: o << "mul " << g.l << ' ' << g.r; break;
            case GateKind::Mulc: o << "mulc " << g.l << ' ' << g.c; break;
        }
        o << "\n";
    }
    o << "output " << c.output << "\n";
    return o.str();
}

Circuit extract(const Circuit& c, int root) {
    std::vector<char> keep(c.gates.size(), 0);
    keep[root] = 1;
    for (int id = root; id >= 0; --id) {
        if (!keep[id]) continue;
        const Gate& g = c.gates[id];
        if (g.kind == GateKind::Add || g.kind == GateKind::Mul) {
            keep[g.l] = keep[g.r] = 1;
        } else if (g.kind == GateKind::Mulc) {
            keep[g.l] = 1;
        }
    }
    Circuit out;
    out.mode = c.mode;
    out.p = c.p;
    out.n = c.n;
    std::vector<int> remap(c.gates.size(), -1);
    for (int id = 0; id <= root; ++id) {
        if (!keep[id]) continue;
        Gate g = c.gates[id];
        if (g.l >= 0) g.l = remap[g.l];
        if (g.r >= 0) g.r = remap[g.r];
        remap[id] = out.push(g);
    }
    out.output = remap[root];
    return out;
}

Homogenized homogenize_gates(const Circuit& c, int d) {
    const Field F = c.field();
    Homogenized h;
    h.circuit.mode = c.mode;
    h.circuit.p = c.p;
    h.circuit.n = c.n;
    h.comp.resize(c.gates.size());
    h.const0.assign(c.gates.size(), 0);
    Circuit& out = h.circuit;

    auto sum = [&](int a, int b) {
        if (a < 0) return b;
        if (b < 0) return a;
        return out.add_add(a, b);
    };
    auto scale = [&](int g, u64 s) {
        if (g < 0 || s == 0) return -1;
        if (s == 1) return g;
        return out.add_mulc(g, s);
    };
    auto part = [&](int g, int e) { return e < static_cast<int>(h.comp[g].size()) ? h.comp[g][e] : -1; };

    for (int id = 0; id < c.size(); ++id) {
        const Gate& g = c.gates[id];
        const int top = std::min(g.degree, d);
        std::vector<int>& comp = h.comp[id];
        comp.assign(top + 1, -1);
        switch (g.kind) {
            case GateKind::Var:
                if (top >= 1) comp[1] = out.add_var(g.var);
                break;
            case GateKind::Const:
                h.const0[id] = g.c;
                break;
            case GateKind::Add:
                h.const0[id] = F.add(h.const0[g.l], h.const0[g.r]);
                for (int e = 1; e <= top; ++e) comp[e] = sum(part(g.l, e), part(g.r, e));
                break;
            case GateKind::Mulc:
                h.const0[id] = F.mul(g.c, h.const0[g.l]);
                for (int e = 1; e <= top; ++e) comp[e] = scale(part(g.l, e), g.c);
                break;
            case GateKind::Mul: {
                h.const0[id] = F.mul(h.const0[g.l], h.const0[g.r]);
                for (int e = 1; e <= top; ++e) {
                    int acc = -1;
                    for (int a = 0; a <= e; ++a) {
                        int b = e - a;
                        int term;
                        if (a == 0) {
                            term = scale(part(g.r, b), h.const0[g.l]);
                        } else if (b == 0) {
                            term = scale(part(g.l, a), h.const0[g.r]);
                        } else {
                            int x = part(g.l, a), y = part(g.r, b);
                            term = (x < 0 || y < 0) ? -1 : out.add_mul(x, y);
                        }
                        acc = sum(acc, term);
                    }
                    comp[e] = acc;
                }
                break;
            }
        }
    }
    return h;
}

std::vector<Circuit> homogenize(const Circuit& c, int d) {
    if (c.degree() > d) {
        throw Error(ErrorKind::DegreeExceeded,
                    "syntactic degree " + std::to_string(c.degree()) + " exceeds d=" + std::to_string(d));
    }
    Homogenized h = homogenize_gates(c, d);
    auto constant = [&](u64 v) {
        Circuit k;
        k.mode = c.mode;
        k.p = c.p;
        k.n = c.n;
        k.output = k.add_const(v);
        return k;
    };
    std::vector<Circuit> parts;
    parts.push_back(constant(h.const0[c.output]));
    for (int e = 1; e <= d; ++e) {
        const auto& comp = h.comp[c.output];
        int g = e < static_cast<int>(comp.size()) ? comp[e] : -1;
        parts.push_back(g < 0 ? constant(0) : extract(h.circuit, g));
    }
    return parts;
}

std::uint64_t parse_tree_count(const Circuit& c) {
    std::vector<std::uint64_t> cnt(c.gates.size(), 0);
    const std::uint64_t sat = UINT64_MAX;
    for (int id = 0; id < c.size(); ++id) {
        const Gate& g = c.gates[id];
        switch (g.kind) {
            case GateKind::Var:
            case GateKind::Const: cnt[id] = 1; break;
            case GateKind::Mulc: cnt[id] = cnt[g.l]; break;
            case GateKind::Add: cnt[id] = cnt[g.l] > sat - cnt[g.r] ? sat : cnt[g.l] + cnt[g.r]; break;
            case GateKind::Mul: {
                unsigned __int128 prod = static_cast<unsigned __int128>(cnt[g.l]) * cnt[g.r];
                cnt[id] = prod > sat ? sat : static_cast<std::uint64_t>(prod);
                break;
            }
        }
    }
    return cnt[c.output];
}

std::vector<ReducedTree> reduced_parse_trees(const Circuit& c, std::uint64_t cap) {
    std::uint64_t total = parse_tree_count(c);
    if (total > cap) {
        throw Error(ErrorKind::CapExceeded,
                    "circuit has " + std::to_string(total) + " parse trees, cap is " + std::to_string(cap));
    }
    const Field F = c.field();
    struct Item {
        bool constant;
        Monomial tree;
        u64 coeff;
    };
    Circuit sub = extract(c, c.output);
    std::vector<std::vector<Item>> memo(sub.gates.size());
    for (int id = 0; id < sub.size(); ++id) {
        const Gate& g = sub.gates[id];
        auto& out = memo[id];
        switch (g.kind) {
            case GateKind::Var: out.push_back({false, Monomial::leaf(g.var), 1 % c.p}); break;
            case GateKind::Const: out.push_back({true, Monomial(), g.c}); break;
            case GateKind::Mulc:
                for (const Item& it : memo[g.l]) out.push_back({it.constant, it.tree, F.mul(it.coeff, g.c)});
                break;
            case GateKind::Add:
                out = memo[g.l];
                out.insert(out.end(), memo[g.r].begin(), memo[g.r].end());
                break;
            case GateKind::Mul:
                for (const Item& a : memo[g.l]) {
                    for (const Item& b : memo[g.r]) {
                        u64 k = F.mul(a.coeff, b.coeff);
                        if (a.constant) {
                            out.push_back({b.constant, b.tree, k});
                        } else if (b.constant) {
                            out.push_back({false, a.tree, k});
                        } else {
                            out.push_back({false, Monomial::product(a.tree, b.tree), k});
                        }
                    }
                }
                break;
        }
    }
    std::map<std::string, ReducedTree> agg;
    for (const Item& it : memo[sub.output]) {
        Monomial key = it.constant ? Monomial() : canonical(it.tree, c.mode);
        std::string k = it.constant ? std::string() : key.literal();
        auto [pos, fresh] = agg.try_emplace(k, ReducedTree{it.constant, key, 0});
        pos->second.coeff = F.add(pos->second.coeff, it.coeff);
        (void)fresh;
    }
    std::vector<ReducedTree> result;
    result.reserve(agg.size());
    for (auto& kv : agg) result.push_back(std::move(kv.second));
    return result;
}

Circuit gen_random(int n, int size, int degree_cap, Mode mode, std::uint64_t seed, u64 p) {
    if (size < 1) throw Error(ErrorKind::InvalidArgument, "size must be at least 1");
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "need at least one variable");
    Rng rng(seed);
    Circuit c;
    c.mode = mode;
    c.p = p;
    c.n = n;

    auto rand_const = [&]() -> u64 {
        std::uint64_t r = rng.below(20);
        if (r == 0) return 0;
        if (r <= 2) return p - 1;
        if (r <= 4) return rng.below(p);
        return 1 + rng.below(std::min<u64>(p - 1, 6));
    };
    // Children come from unconsumed gates half of the time and otherwise
    // lean towards recent gates, so the output depends on most of the circuit.
    std::vector<char> used;
    auto choose = [&](int max_degree, int min_degree = 0, int avoid = -1) -> int {
        std::vector<int> ok, fresh;
        for (int g = 0; g < c.size(); ++g) {
            if (c.gates[g].degree > max_degree || c.gates[g].degree < min_degree || g == avoid) continue;
            ok.push_back(g);
            if (!used[g]) fresh.push_back(g);
        }
        if (ok.empty()) return -1;
        // Towards the end almost every child is an unconsumed gate.
        if (!fresh.empty() && rng.coin(std::max<std::uint64_t>(size, 2 * c.size()), 2 * static_cast<std::uint64_t>(size))) {
            return fresh[rng.below(fresh.size())];
        }
        if (rng.coin(3, 5)) {
            std::size_t k = std::min<std::size_t>(ok.size(), 4);
            return ok[ok.size() - 1 - rng.below(k)];
        }
        return ok[rng.below(ok.size())];
    };
    auto leaf = [&]() {
        if (degree_cap >= 1 && rng.coin(4, 5)) return c.add_var(1 + static_cast<int>(rng.below(n)));
        return c.add_const(rand_const());
    };
    auto add = [&]() {
        int l = choose(degree_cap);
        int r = choose(degree_cap, 0, l);
        return c.add_add(l, r < 0 ? l : r);
    };

    const int initial = std::max(1, std::min(n, size / 3));
    for (int v = 0; v < initial; ++v) {
        if (degree_cap >= 1) {
            c.add_var(1 + (v + static_cast<int>(rng.below(n))) % n);
        } else {
            c.add_const(rand_const());
        }
        used.push_back(0);
    }
    while (c.size() < size) {
        std::uint64_t roll = rng.below(100);
        // The last gates mostly gather the pieces built so far.
        if (10 * c.size() >= 7 * size && rng.coin(3, 5)) roll = 20 + roll % 25;
        int g;
        if (roll < 20 && 5 * c.size() < 3 * size) {
            g = leaf();
        } else if (roll < 45) {
            g = add();
        } else if (roll < 90) {
            // Scalar factors are left mostly to mulc gates.
            const int lo = rng.coin(1, 5) ? 0 : 1;
            int l = choose(degree_cap - 1, lo);
            int r = l < 0 ? -1 : choose(degree_cap - c.gates[l].degree, lo, rng.coin(1, 4) ? -1 : l);
            g = r < 0 ? add() : c.add_mul(l, r);
        } else {
            g = c.add_mulc(choose(degree_cap), rand_const());
        }
        const Gate& made = c.gates[g];
        if (made.kind == GateKind::Add || made.kind == GateKind::Mul) {
            used[made.l] = used[made.r] = 1;
        } else if (made.kind == GateKind::Mulc) {
            used[made.l] = 1;
        }
        used.push_back(0);
    }
    c.output = c.size() - 1;
    return c;
}

}  // namespace nacirc
