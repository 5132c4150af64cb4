#include "nacirc/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "nacirc/error.hpp"

namespace nacirc {

const char* mode_name(Mode m) { return m == Mode::Comm ? "comm" : "noncomm"; }

Monomial Monomial::leaf(int var) {
    if (var < 1) throw Error(ErrorKind::InvalidArgument, "variable index must be positive");
    auto n = std::make_shared<Node>();
    n->var = var;
    n->literal = std::to_string(var);
    return Monomial(std::move(n));
}

Monomial Monomial::product(const Monomial& left, const Monomial& right) {
    auto n = std::make_shared<Node>();
    n->left = left.node_;
    n->right = right.node_;
    n->degree = left.degree() + right.degree();
    n->depth = 1 + std::max(left.depth(), right.depth());
    n->literal.reserve(left.literal().size() + right.literal().size() + 3);
    n->literal += '(';
    n->literal += left.literal();
    n->literal += ' ';
    n->literal += right.literal();
    n->literal += ')';
    return Monomial(std::move(n));
}

namespace {

struct LiteralParser {
    const std::string& s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw Error(ErrorKind::ParseError, "monomial literal '" + s + "': " + why);
    }
    Monomial parse() {
        skip();
        if (pos >= s.size()) fail("unexpected end");
        if (s[pos] == '(') {
            ++pos;
            Monomial l = parse();
            Monomial r = parse();
            skip();
            if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
            ++pos;
            return Monomial::product(l, r);
        }
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected variable index");
        if (pos - start > 9) fail("variable index too large");
        int v = std::stoi(s.substr(start, pos - start));
        if (v < 1) fail("variable index must be positive");
        return Monomial::leaf(v);
    }
};

void encode_rec(const Monomial& m, int level, MonomialCode& out) {
    if (m.is_leaf()) {
        out.sigma.push_back(m.var());
        out.levels.push_back(level);
        return;
    }
    encode_rec(m.left(), level + 1, out);
    encode_rec(m.right(), level + 1, out);
}

}  // namespace

Monomial parse_monomial(const std::string& text) {
    LiteralParser p{text};
    Monomial m = p.parse();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing characters");
    return m;
}

MonomialCode encode(const Monomial& m) {
    MonomialCode c;
    encode_rec(m, 1, c);
    return c;
}

Monomial decode(const MonomialCode& code) {
    const std::size_t n = code.sigma.size();
    if (n == 0 || code.levels.size() != n) throw Error(ErrorKind::InvalidCode, "empty code or length mismatch");
    struct BNode {
        int var = 0;
        int left = -1, right = -1;
        int level = 0;
    };
    std::vector<BNode> nodes;
    std::vector<int> open;  // internal nodes on the current path that still lack a right child

    // Grows a left-leaning chain under a fresh node at `level` ending in a leaf.
    auto chain = [&](int level, int target, int var) -> int {
        if (target < level) throw Error(ErrorKind::InvalidCode, "leaf level above its attachment point");
        int top = static_cast<int>(nodes.size());
        for (int lv = level; lv < target; ++lv) {
            int id = static_cast<int>(nodes.size());
            nodes.push_back({0, id + 1, -1, lv});
            open.push_back(id);
        }
        nodes.push_back({var, -1, -1, target});
        return top;
    };

    for (std::size_t t = 0; t < n; ++t) {
        if (code.sigma[t] < 1) throw Error(ErrorKind::InvalidCode, "variable index must be positive");
        if (code.levels[t] < 1) throw Error(ErrorKind::InvalidCode, "levels start at 1");
    }
    chain(1, code.levels[0], code.sigma[0]);
    for (std::size_t t = 1; t < n; ++t) {
        if (open.empty()) throw Error(ErrorKind::InvalidCode, "no free right slot for leaf " + std::to_string(t + 1));
        int parent = open.back();
        open.pop_back();
        int sub = chain(nodes[parent].level + 1, code.levels[t], code.sigma[t]);
        nodes[parent].right = sub;
    }
    if (!open.empty()) throw Error(ErrorKind::InvalidCode, "code leaves an internal node with one child");

    std::function<Monomial(int)> build = [&](int id) -> Monomial {
        const BNode& b = nodes[id];
        if (b.var) return Monomial::leaf(b.var);
        return Monomial::product(build(b.left), build(b.right));
    };
    return build(0);
}

Monomial canon_comm(const Monomial& m) {
    if (m.is_leaf()) return m;
    Monomial l = canon_comm(m.left());
    Monomial r = canon_comm(m.right());
    if (r.literal() < l.literal()) std::swap(l, r);
    return Monomial::product(l, r);
}

namespace {

std::vector<MonomialCode> designations_rec(const Monomial& m) {
    if (m.is_leaf()) return {MonomialCode{{m.var()}, {1}}};
    auto a = designations_rec(m.left());
    auto b = designations_rec(m.right());
    std::vector<MonomialCode> out;
    out.reserve(2 * a.size() * b.size());
    auto join = [&](const MonomialCode& x, const MonomialCode& y) {
        MonomialCode c;
        c.sigma = x.sigma;
        c.sigma.insert(c.sigma.end(), y.sigma.begin(), y.sigma.end());
        c.levels.reserve(c.sigma.size());
        for (int l : x.levels) c.levels.push_back(l + 1);
        for (int l : y.levels) c.levels.push_back(l + 1);
        out.push_back(std::move(c));
    };
    for (const auto& x : a) {
        for (const auto& y : b) {
            join(x, y);
            join(y, x);
        }
    }
    return out;
}

}  // namespace

std::vector<MonomialCode> designations(const Monomial& m, int cap) {
    if (m.degree() > cap) {
        throw Error(ErrorKind::CapExceeded,
                    "degree " + std::to_string(m.degree()) + " exceeds order enumeration cap " + std::to_string(cap));
    }
    return designations_rec(m);
}

std::set<std::vector<int>> orders(const Monomial& m, int cap) {
    std::set<std::vector<int>> out;
    for (auto& c : designations(m, cap)) out.insert(std::move(c.sigma));
    return out;
}

void zpoly_add_term(ZPoly& p, const ZMono& m, u64 c, const Field& F) {
    if (c == 0) return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
        return;
    }
    it->second = F.add(it->second, c);
    if (it->second == 0) p.erase(it);
}

std::string zmono_to_string(const ZMono& m, int d) {
    if (m.empty()) return "1";
    std::string s;
    for (std::size_t t = 0; t < m.size(); ++t) {
        ZIndex z = z_unflat(m[t], d);
        if (t) s += '*';
        s += "z" + std::to_string(z.i) + "," + std::to_string(z.j) + "," + std::to_string(z.k);
    }
    return s;
}

ZPoly phi_entry(const Monomial& m, Mode mode, int d, int k1, int k2, const Field& F) {
    const int deg = m.degree();
    if (deg > d) {
        throw Error(ErrorKind::DegreeExceeded,
                    "monomial degree " + std::to_string(deg) + " exceeds d=" + std::to_string(d));
    }
    if (k1 < 1 || k1 > d - deg + 1 || k2 < 1 || k2 > d - m.depth() + 1) {
        throw Error(ErrorKind::InvalidArgument, "entry offset outside the admissible range");
    }
    std::vector<MonomialCode> codes;
    if (mode == Mode::NonComm) {
        codes.push_back(encode(m));
    } else {
        codes = designations(m);
    }
    ZPoly out;
    for (const auto& c : codes) {
        ZMono z;
        z.reserve(c.sigma.size());
        for (std::size_t t = 0; t < c.sigma.size(); ++t) {
            z.push_back(z_flat(c.sigma[t], static_cast<int>(t) + k1, c.levels[t] + k2 - 1, d));
        }
        std::sort(z.begin(), z.end());
        zpoly_add_term(out, z, 1 % F.p(), F);
    }
    return out;
}

ZPoly phi_mono(const Monomial& m, Mode mode, int d, const Field& F) { return phi_entry(m, mode, d, 1, 1, F); }

}  // namespace nacirc
