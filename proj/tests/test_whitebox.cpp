#include <doctest.h>

#include <set>

#include "nacirc/oracle.hpp"
#include "nacirc/verify.hpp"
#include "nacirc/whitebox.hpp"
#include "support.hpp"

using namespace nacirc;

namespace {

// The lowest-degree, then lexicographically smallest, monomial of f.
std::optional<std::pair<std::string, u64>> oracle_witness(const Poly& f) {
    if (f.constant) return std::make_pair(std::string("const"), f.constant);
    std::optional<std::pair<std::string, u64>> best;
    int best_deg = 0;
    for (const auto& [m, c] : f.terms) {
        if (!best || m.degree() < best_deg || (m.degree() == best_deg && m.literal() < best->first)) {
            best = std::make_pair(m.literal(), c);
            best_deg = m.degree();
        }
    }
    return best;
}

}  // namespace

TEST_SUITE("whitebox") {
    TEST_CASE("fixtures") {
        WhiteboxVerdict a = whitebox_pit(associator_circuit(Mode::NonComm));
        CHECK_FALSE(a.zero);
        CHECK(a.witness.literal() == "((1 2) 3)");
        CHECK(a.witness_coeff == 1);
        CHECK(whitebox_pit(commutator_circuit(Mode::Comm)).zero);
        WhiteboxVerdict c = whitebox_pit(commutator_circuit(Mode::NonComm));
        CHECK_FALSE(c.zero);
        CHECK(c.witness.literal() == "(1 2)");
        CHECK(whitebox_pit(zero_circuit(Mode::NonComm, 3)).zero);
        WhiteboxVerdict k = whitebox_pit(constant_circuit(Mode::Comm, 5));
        CHECK_FALSE(k.zero);
        CHECK(k.witness_constant);
        CHECK(k.witness_coeff == 5);
        CHECK_FALSE(whitebox_pit(jordan_circuit(Mode::Comm)).zero);
    }

    TEST_CASE("duplicate split") {
        WhiteboxVerdict v = whitebox_pit(square_circuit(Mode::Comm));
        CHECK_FALSE(v.zero);
        CHECK(v.witness.literal() == "(1 1)");
        CHECK(v.witness_coeff == 1);
        WhiteboxOptions naive;
        naive.naive_duplicate_split = true;
        CHECK(whitebox_pit(square_circuit(Mode::Comm), naive).witness_coeff == 2);
        CHECK(whitebox_pit(square_circuit(Mode::NonComm), naive).witness_coeff == 1);
    }

    TEST_CASE("verdicts and witnesses agree with the expansion") {
        for (std::uint64_t s = 0; s < 400; ++s) {
            Mode mode = s % 2 ? Mode::Comm : Mode::NonComm;
            Circuit c = gen_random(3, 14, 5, mode, s, s % 3 ? kDefaultPrime : 7);
            if (s % 4 == 0) c = difference_of_copies(c, mode == Mode::Comm);
            Poly f = expand(c);
            WhiteboxVerdict v = whitebox_pit(c);
            CHECK(v.zero == f.is_zero());
            auto want = oracle_witness(f);
            if (!want) continue;
            CHECK((v.witness_constant ? std::string("const") : v.witness.literal()) == want->first);
            CHECK(v.witness_coeff == want->second);
        }
    }

    TEST_CASE("padding with a zero subcircuit keeps the verdict") {
        for (std::uint64_t s = 0; s < 60; ++s) {
            Mode mode = s % 2 ? Mode::Comm : Mode::NonComm;
            Circuit c = gen_random(3, 10, 4, mode, s);
            Circuit g = gen_random(3, 8, 3, mode, s + 1000);
            WhiteboxVerdict a = whitebox_pit(c), b = whitebox_pit(pad_with_zero(c, g));
            CHECK(a.zero == b.zero);
            CHECK(a.witness_coeff == b.witness_coeff);
        }
    }

    TEST_CASE("kept monomials per level are at most the circuit size") {
        for (std::uint64_t s = 0; s < 100; ++s) {
            Circuit c = gen_random(3, 15, 6, s % 2 ? Mode::Comm : Mode::NonComm, s);
            const int size = extract(c, c.output).size();
            for (const SpanLevel& L : build_levels(c)) CHECK(static_cast<int>(L.monomials.size()) <= size);
        }
    }

    TEST_CASE("kept vectors span every coefficient vector") {
        // For n = 2 all monomials up to degree 4 are enumerated, and the
        // per-gate coefficient vector of each must lie in the kept span.
        for (std::uint64_t s = 0; s < 60; ++s) {
            Mode mode = s % 2 ? Mode::Comm : Mode::NonComm;
            Circuit raw = gen_random(2, 12, 4, mode, s, 101);
            Circuit c = extract(raw, raw.output);
            const Field F = c.field();
            const std::size_t dim = c.gates.size();
            auto levels = build_levels(c);
            CoeffTable table = coeff_table(c);
            Vec v1(dim);
            for (std::size_t g = 0; g < dim; ++g) v1[g] = table[g].constant;
            CHECK(levels[0].vectors.at(0) == v1);
            for (int j = 1; j < static_cast<int>(levels.size()); ++j) {
                SpanBasis basis(F, dim);
                for (const Vec& v : levels[j].vectors) basis.insert(v);
                std::set<std::string> seen;
                for (const auto& tree : all_monomials(2, j)) {
                    Monomial m = canonical(tree, mode);
                    if (!seen.insert(m.literal()).second) continue;
                    Vec v(dim);
                    for (std::size_t g = 0; g < dim; ++g) v[g] = poly_coeff(table[g], m, mode);
                    CHECK(basis.contains(v));
                }
                for (std::size_t t = 0; t < levels[j].monomials.size(); ++t) {
                    for (std::size_t g = 0; g < dim; ++g)
                        CHECK(levels[j].vectors[t][g] == poly_coeff(table[g], levels[j].monomials[t], mode));
                }
            }
        }
    }

    TEST_CASE("stats") {
        WhiteboxVerdict v = whitebox_pit(associator_circuit(Mode::NonComm));
        CHECK(v.gates == associator_circuit(Mode::NonComm).size());
        CHECK(v.kept >= 4);
        CHECK(v.candidates > 0);
    }
}
