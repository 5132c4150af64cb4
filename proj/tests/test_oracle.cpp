#include <doctest.h>

#include "nacirc/oracle.hpp"
#include "nacirc/verify.hpp"
#include "support.hpp"

using namespace nacirc;
using nacirc::testing::error_of;

namespace {

Monomial M(const char* s) { return parse_monomial(s); }

}  // namespace

TEST_SUITE("oracle") {
    TEST_CASE("associator expansion") {
        const Field F(kDefaultPrime);
        Poly f = expand(associator_circuit(Mode::NonComm));
        CHECK(f.constant == 0);
        CHECK(f.terms.size() == 2);
        CHECK(poly_coeff(f, M("((1 2) 3)"), Mode::NonComm) == 1);
        CHECK(poly_coeff(f, M("(1 (2 3))"), Mode::NonComm) == F.p() - 1);
        CHECK(poly_to_text(f) == "1 ((1 2) 3)\n" + std::to_string(F.p() - 1) + " (1 (2 3))\nconst 0\n");
        Poly g = expand(associator_circuit(Mode::Comm));
        CHECK(g.terms.size() == 2);
        CHECK(poly_coeff(g, M("(3 (1 2))"), Mode::Comm) == 1);
        CHECK(poly_coeff(g, M("((2 3) 1)"), Mode::Comm) == F.p() - 1);
    }

    TEST_CASE("commutator and Jordan expansions") {
        CHECK(expand(commutator_circuit(Mode::Comm)).is_zero());
        CHECK(expand(commutator_circuit(Mode::NonComm)).terms.size() == 2);
        for (Mode mode : {Mode::Comm, Mode::NonComm}) {
            Poly j = expand(jordan_circuit(mode));
            CHECK(j.terms.size() == 2);
            CHECK(poly_coeff(j, M("((1 2) (1 1))"), mode) == 1);
        }
    }

    TEST_CASE("per-gate table") {
        Circuit sq = square_circuit(Mode::Comm);
        CoeffTable t = coeff_table(sq);
        REQUIRE(t.size() == static_cast<std::size_t>(sq.size()));
        CHECK(t[0].terms.size() == 1);
        CHECK(poly_coeff(t[0], Monomial::leaf(1), Mode::Comm) == 1);
        CHECK(poly_coeff(t[sq.output], M("(1 1)"), Mode::Comm) == 1);
        CHECK(t[sq.output].terms.size() == 1);
        for (std::uint64_t s = 0; s < 50; ++s) {
            Circuit c = gen_random(3, 12, 4, s % 2 ? Mode::Comm : Mode::NonComm, s);
            CHECK(coeff_table(c)[c.output] == expand(c));
        }
    }

    TEST_CASE("constants") {
        Poly k = expand(constant_circuit(Mode::NonComm, 7));
        CHECK(k.constant == 7);
        CHECK(k.terms.empty());
        CHECK(expand(zero_circuit(Mode::Comm, 2)).is_zero());
        CHECK(poly_to_text(expand(zero_circuit(Mode::Comm))) == "const 0\n");
    }

    TEST_CASE("term cap") {
        CHECK(error_of([] { expand(associator_circuit(Mode::NonComm), 1); }) == ErrorKind::TermCapExceeded);
        CHECK(error_of([] { expand(associator_circuit(Mode::NonComm), 2); }) == std::nullopt);
    }

    TEST_CASE("polynomial arithmetic") {
        const Field F(101);
        Poly a, b;
        a.terms[M("1")] = 3;
        a.constant = 2;
        b.terms[M("1")] = 98;
        b.terms[M("2")] = 1;
        Poly s = poly_add(F, a, b);
        CHECK(s.terms.size() == 1);
        CHECK(s.constant == 2);
        CHECK(poly_scale(F, a, 0).is_zero());
        Poly pr = poly_mul(F, Mode::Comm, b, a);
        CHECK(poly_coeff(pr, M("(1 2)"), Mode::Comm) == 3);
        CHECK(poly_coeff(pr, M("(1 1)"), Mode::Comm) == F.mul(98, 3));
        CHECK(poly_coeff(pr, M("2"), Mode::Comm) == 2);
        Poly nc = poly_mul(F, Mode::NonComm, b, a);
        CHECK(poly_coeff(nc, M("(2 1)"), Mode::NonComm) == 3);
        CHECK(poly_coeff(nc, M("(1 2)"), Mode::NonComm) == 0);
    }

    TEST_CASE("expansion agrees with evaluation in the algebra") {
        const Field F(kDefaultPrime);
        Rng rng(99);
        for (std::uint64_t s = 0; s < 80; ++s) {
            Mode mode = s % 2 ? Mode::Comm : Mode::NonComm;
            Circuit c = gen_random(3, 12, 4, mode, s);
            const int d = std::max(1, c.degree());
            std::vector<AlgebraElem> pts;
            for (int i = 0; i < c.n; ++i) pts.push_back(random_elem(d, {0, 1, 2, 5, 77, F.p() - 3}, rng));
            CHECK(eval_poly_algebra(F, expand(c), pts, mode) == eval_circuit(c, pts, d));
        }
        AlgebraElem x = random_elem(2, {1, 2, 3}, rng);
        Poly k;
        k.constant = 4;
        AlgebraElem v = eval_poly_algebra(F, k, {x}, Mode::Comm);
        CHECK(v.scalar == 4);
    }

    TEST_CASE("associative reading of a circuit") {
        ZPoly a = expand_assoc(commutator_circuit(Mode::NonComm));
        CHECK(a.empty());
        ZPoly sq = expand_assoc(square_circuit(Mode::Comm));
        REQUIRE(sq.size() == 1);
        CHECK(sq.begin()->first == ZMono{0, 0});
        CHECK(sq.begin()->second == 1);
    }
}
