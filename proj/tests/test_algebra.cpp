#include <doctest.h>

#include <array>
#include <map>

#include "nacirc/algebra.hpp"
#include "nacirc/verify.hpp"
#include "support.hpp"

using namespace nacirc;
using nacirc::testing::error_of;

namespace {

const Field F(kDefaultPrime);

// Reference product written straight from the entry formula.
AlgebraElem reference_aprime(const AlgebraElem& x, const AlgebraElem& y) {
    const int d = x.d;
    AlgebraElem z = AlgebraElem::zero(d);
    for (int k = 1; k < d; ++k)
        for (int i = 1; i <= d + 1; ++i)
            for (int j = 1; j <= d + 1; ++j) {
                u64 acc = 0;
                for (int l = 1; l <= d + 1; ++l) acc = F.add(acc, F.mul(x.at(i, l, k + 1), y.at(l, j, k + 1)));
                z.at(i, j, k) = acc;
            }
    return z;
}

AlgebraElem rnd(int d, Rng& rng, bool with_scalar = true) {
    AlgebraElem e = random_elem(d, {0, 1, 2, 3, F.p() - 1, 123456789}, rng);
    if (!with_scalar) e.scalar = 0;
    return e;
}

u64 eval_z(const ZPoly& p, const std::map<std::uint32_t, u64>& z) {
    u64 acc = 0;
    for (const auto& [m, c] : p) {
        u64 t = c;
        for (auto v : m) t = F.mul(t, z.at(v));
        acc = F.add(acc, t);
    }
    return acc;
}

}  // namespace

TEST_SUITE("algebra") {
    TEST_CASE("layout and zero") {
        AlgebraElem z = AlgebraElem::zero(3);
        CHECK(z.body.size() == 3u * 4 * 4);
        CHECK(z.is_zero());
        CHECK_FALSE(AlgebraElem::unit(3).is_zero());
        CHECK(AlgebraElem::unit(3).scalar == 1);
    }

    TEST_CASE("products vanish for d = 1") {
        Rng rng(1);
        for (int t = 0; t < 50; ++t) CHECK(aprime_mul(F, rnd(1, rng), rnd(1, rng)).is_zero());
    }

    TEST_CASE("a single nonzero entry product") {
        AlgebraElem x = AlgebraElem::zero(2), y = AlgebraElem::zero(2);
        x.at(1, 2, 2) = 5;
        y.at(2, 3, 2) = 7;
        AlgebraElem z = aprime_mul(F, x, y);
        CHECK(z.at(1, 3, 1) == 35);
        z.at(1, 3, 1) = 0;
        CHECK(z.is_zero());
    }

    TEST_CASE("product matches the entry formula") {
        Rng rng(2);
        for (int d = 1; d <= 5; ++d) {
            for (int t = 0; t < 20; ++t) {
                AlgebraElem x = rnd(d, rng), y = rnd(d, rng);
                CHECK(aprime_mul(F, x, y) == reference_aprime(x, y));
            }
        }
    }

    TEST_CASE("the products are not associative at d = 3") {
        Rng rng(3);
        bool aprime_witness = false, c_witness = false;
        for (int t = 0; t < 200 && !(aprime_witness && c_witness); ++t) {
            AlgebraElem x = rnd(3, rng, false), y = rnd(3, rng, false), z = rnd(3, rng, false);
            aprime_witness |= aprime_mul(F, aprime_mul(F, x, y), z) != aprime_mul(F, x, aprime_mul(F, y, z));
            c_witness |= c_mul(F, c_mul(F, x, y), z) != c_mul(F, x, c_mul(F, y, z));
        }
        CHECK(aprime_witness);
        CHECK(c_witness);
    }

    TEST_CASE("units, bilinearity and commutativity") {
        Rng rng(4);
        for (int d = 1; d <= 4; ++d) {
            const AlgebraElem one = AlgebraElem::unit(d);
            for (int t = 0; t < 30; ++t) {
                AlgebraElem x = rnd(d, rng), y = rnd(d, rng), w = rnd(d, rng);
                u64 a = rng.below(F.p()), b = rng.below(F.p());
                CHECK(a_mul(F, one, x) == x);
                CHECK(a_mul(F, x, one) == x);
                CHECK(c_mul(F, one, x) == x);
                CHECK(c_mul(F, x, one) == x);
                CHECK(c_mul(F, x, y) == c_mul(F, y, x));
                for (auto mul : {a_mul, c_mul}) {
                    AlgebraElem lin = elem_add(F, elem_scale(F, x, a), elem_scale(F, y, b));
                    CHECK(mul(F, lin, w) == elem_add(F, elem_scale(F, mul(F, x, w), a), elem_scale(F, mul(F, y, w), b)));
                    CHECK(mul(F, w, lin) == elem_add(F, elem_scale(F, mul(F, w, x), a), elem_scale(F, mul(F, w, y), b)));
                }
                AlgebraElem xs = x, ys = y;
                xs.scalar = ys.scalar = 0;
                CHECK(anticommutator(F, xs, ys) == c_mul(F, xs, ys));
                CHECK(elem_sub(F, elem_add(F, x, y), y) == x);
            }
        }
        AlgebraElem one = AlgebraElem::unit(2);
        CHECK(anticommutator(F, one, one).scalar == 2);
        CHECK(c_mul(F, one, one).scalar == 1);
    }

    TEST_CASE("deep products vanish") {
        // A product tree with a leaf below level d is zero on non-unital inputs.
        Rng rng(5);
        for (int d = 1; d <= 4; ++d) {
            for (int t = 0; t < 20; ++t) {
                Monomial m = random_monomial(2, d + 1 + static_cast<int>(rng.below(3)), rng);
                if (m.depth() <= d) continue;
                for (Mode mode : {Mode::NonComm, Mode::Comm}) {
                    Circuit c = monomial_circuit(m, mode, 2);
                    CHECK(eval_circuit(c, {rnd(d, rng, false), rnd(d, rng, false)}).is_zero());
                }
            }
        }
    }

    TEST_CASE("make_Zi places the variables on the superdiagonal") {
        AlgebraElem z = make_Zi(2, 3, [](int i, int j, int k) { return static_cast<u64>(100 * i + 10 * j + k); });
        CHECK(z.scalar == 0);
        for (int k = 1; k <= 3; ++k)
            for (int i = 1; i <= 4; ++i)
                for (int j = 1; j <= 4; ++j) CHECK(z.at(i, j, k) == (j == i + 1 ? 200u + 10 * i + k : 0u));
    }

    TEST_CASE("entries of a product of generic points") {
        auto zval = [](int i, int j, int k) { return static_cast<u64>(1000 * i + 100 * j + k); };
        AlgebraElem z1 = make_Zi(1, 2, zval), z2 = make_Zi(2, 2, zval);
        AlgebraElem prod = a_mul(F, z1, z2);
        CHECK(prod.at(1, 3, 1) == F.mul(zval(1, 1, 2), zval(2, 2, 2)));
    }

    TEST_CASE("evaluation at generic points reproduces phi") {
        Rng rng(6);
        for (int t = 0; t < 300; ++t) {
            const int d = 1 + static_cast<int>(rng.below(5));
            const int n = 3;
            Monomial m = random_monomial(n, 1 + static_cast<int>(rng.below(d)), rng);
            std::map<std::uint32_t, u64> z;
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= d; ++j)
                    for (int k = 1; k <= d; ++k) z[z_flat(i, j, k, d)] = rng.below(F.p());
            std::vector<AlgebraElem> pts;
            for (int i = 1; i <= n; ++i) pts.push_back(make_Zi(i, d, [&](int a, int b, int c) { return z.at(z_flat(a, b, c, d)); }));
            for (Mode mode : {Mode::NonComm, Mode::Comm}) {
                AlgebraElem v = eval_circuit(monomial_circuit(m, mode, n), pts);
                for (int k1 = 1; k1 <= d - m.degree() + 1; ++k1)
                    for (int k2 = 1; k2 <= d - m.depth() + 1; ++k2)
                        CHECK(v.at(k1, k1 + m.degree(), k2) == eval_z(phi_entry(m, mode, d, k1, k2, F), z));
            }
        }
    }

    TEST_CASE("circuit evaluation") {
        Rng rng(7);
        AlgebraElem x = rnd(3, rng), y = rnd(3, rng), w = rnd(3, rng);
        AlgebraElem comm_noncomm = eval_circuit(commutator_circuit(Mode::NonComm), {x, y});
        CHECK(comm_noncomm == elem_sub(F, a_mul(F, x, y), a_mul(F, y, x)));
        CHECK_FALSE(comm_noncomm.is_zero());
        CHECK(eval_circuit(commutator_circuit(Mode::Comm), {x, y}).is_zero());
        AlgebraElem assoc = eval_circuit(associator_circuit(Mode::NonComm), {x, y, w});
        CHECK(assoc == elem_sub(F, a_mul(F, a_mul(F, x, y), w), a_mul(F, x, a_mul(F, y, w))));
        AlgebraElem k = eval_circuit(constant_circuit(Mode::Comm, 9, 0), {}, 3);
        CHECK(k.scalar == 9);
        CHECK(k.d == 3);
        k.scalar = 0;
        CHECK(k.is_zero());
        CHECK(error_of([&] { eval_circuit(commutator_circuit(Mode::Comm), {x}); }) == ErrorKind::DimensionMismatch);
        CHECK(error_of([&] { eval_circuit(commutator_circuit(Mode::Comm), {x, rnd(2, rng)}); }) ==
              ErrorKind::DimensionMismatch);
    }

    TEST_CASE("random elements") {
        Rng a(42), b(42);
        CHECK(random_elem(3, {1, 5, 9}, a) == random_elem(3, {1, 5, 9}, b));
        Rng z(1);
        CHECK(random_elem(4, {0}, z).is_zero());
        // Chi-square goodness of fit over S = {0..9}, 9 degrees of freedom.
        Rng rng(2024);
        std::vector<u64> S;
        for (u64 v = 0; v < 10; ++v) S.push_back(v);
        std::array<double, 10> hist{};
        double total = 0;
        for (int t = 0; t < 20000; ++t) {
            AlgebraElem e = random_elem(1, S, rng);
            for (u64 v : e.body) hist[v] += 1;
            hist[e.scalar] += 1;
            total += static_cast<double>(e.body.size() + 1);
        }
        double chi = 0;
        for (double h : hist) chi += (h - total / 10) * (h - total / 10) / (total / 10);
        CHECK(chi < 21.67);
    }

    TEST_CASE("dump format") {
        AlgebraElem e = AlgebraElem::zero(1);
        e.at(1, 2, 1) = 4;
        e.scalar = 3;
        CHECK(dump(e) == "elem d=1\nk=1\n0 4\n0 0\nscalar=3\n");
        CHECK(dump(AlgebraElem::zero(2)) == "elem d=2\nk=1\n0 0 0\n0 0 0\n0 0 0\nk=2\n0 0 0\n0 0 0\n0 0 0\nscalar=0\n");
    }
}
