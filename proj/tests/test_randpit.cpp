#include <doctest.h>

#include <cmath>

#include "nacirc/randpit.hpp"
#include "nacirc/verify.hpp"
#include "support.hpp"

using namespace nacirc;
using nacirc::testing::error_of;

TEST_SUITE("randpit") {
    TEST_CASE("zero polynomial reports the failure bound") {
        Rng rng(1);
        RandVerdict v = randomized_pit(blackbox_from_circuit(zero_circuit(Mode::Comm, 2)), iota_set(10), 3, rng);
        CHECK(v.zero);
        CHECK(v.trials_run == 3);
        CHECK(v.bound == doctest::Approx(1e-3));
        Rng rng2(1);
        RandVerdict w = randomized_pit(blackbox_from_circuit(commutator_circuit(Mode::Comm)), iota_set(100), 4, rng2);
        CHECK(w.zero);
        CHECK(w.bound == doctest::Approx(std::pow(2.0 / 100, 4)));
    }

    TEST_CASE("nonzero polynomials are detected") {
        for (Mode mode : {Mode::Comm, Mode::NonComm}) {
            Circuit c = associator_circuit(mode);
            BlackBox bb = blackbox_from_circuit(c);
            CHECK(bb.d == 3);
            std::uint64_t queries = 0;
            bb.query_counter = &queries;
            Rng rng(2);
            RandVerdict v = randomized_pit(bb, iota_set(1000), 10, rng);
            CHECK_FALSE(v.zero);
            CHECK(queries == static_cast<std::uint64_t>(v.trials_run));
            CHECK_FALSE(eval_circuit(c, v.witness).is_zero());
        }
        Rng rng(3);
        CHECK_FALSE(randomized_pit(blackbox_from_circuit(commutator_circuit(Mode::NonComm)), iota_set(50), 5, rng).zero);
        CHECK_FALSE(randomized_pit(blackbox_from_circuit(constant_circuit(Mode::Comm, 3)), iota_set(5), 1, rng).zero);
    }

    TEST_CASE("argument checks") {
        Rng rng(4);
        BlackBox bb = blackbox_from_circuit(associator_circuit(Mode::NonComm));
        CHECK(error_of([&] { randomized_pit(bb, iota_set(3), 1, rng); }) == ErrorKind::SetTooSmall);
        CHECK(error_of([&] { randomized_pit(bb, iota_set(4), 1, rng); }) == std::nullopt);
        BlackBox small = blackbox_from_circuit(associator_circuit(Mode::NonComm, 3));
        CHECK(error_of([&] { randomized_pit(small, iota_set(10), 1, rng); }) == ErrorKind::FieldTooSmall);
        CHECK(blackbox_from_circuit(zero_circuit(Mode::Comm)).d == 1);
        CHECK(blackbox_from_circuit(associator_circuit(Mode::Comm), 5).d == 5);
        CHECK(error_of([&] { empirical_failure_rate(zero_circuit(Mode::Comm), iota_set(5), 10, rng); }) ==
              ErrorKind::InvalidArgument);
        CHECK(iota_set(3) == std::vector<u64>{0, 1, 2});
    }

    TEST_CASE("single-trial zero rate stays under the bound") {
        Rng rng(5);
        for (Mode mode : {Mode::Comm, Mode::NonComm}) {
            for (const Circuit& c : {associator_circuit(mode), jordan_circuit(mode), square_circuit(mode)}) {
                for (u64 k : {5, 8}) {
                    FailureRate r = empirical_failure_rate(c, iota_set(k), 3000, rng);
                    const double sigma = std::sqrt(r.bound * (1 - r.bound) / static_cast<double>(r.trials));
                    CHECK(r.trials == 3000);
                    CHECK(r.rate() <= r.bound + 3 * sigma);
                }
            }
        }
    }

    TEST_CASE("zero polynomials always evaluate to zero") {
        Rng rng(6);
        FailureRate r = zero_evaluation_rate(commutator_circuit(Mode::Comm), 2, iota_set(7), 200, rng);
        CHECK(r.zeros == 200);
        for (std::uint64_t s = 0; s < 30; ++s) {
            Circuit c = difference_of_copies(gen_random(3, 10, 4, Mode::Comm, s), true);
            CHECK(zero_evaluation_rate(c, std::max(1, c.degree()), iota_set(1000), 20, rng).zeros == 20);
        }
    }

    TEST_CASE("seeded runs are reproducible") {
        BlackBox bb = blackbox_from_circuit(jordan_circuit(Mode::Comm));
        Rng a(77), b(77);
        RandVerdict x = randomized_pit(bb, iota_set(20), 5, a), y = randomized_pit(bb, iota_set(20), 5, b);
        CHECK(x.zero == y.zero);
        CHECK(x.witness == y.witness);
    }
}
