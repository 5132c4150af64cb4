#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nacirc/circuit.hpp"
#include "nacirc/hitting.hpp"
#include "nacirc/monomial.hpp"
#include "nacirc/rng.hpp"
#include "nacirc/whitebox.hpp"

namespace nacirc {

// Fixture circuits shared by the tests, the CLI and the acceptance suite.
Circuit associator_circuit(Mode mode, u64 p = kDefaultPrime);   // (x1 x2) x3 - x1 (x2 x3)
Circuit commutator_circuit(Mode mode, u64 p = kDefaultPrime);   // x1 x2 - x2 x1
Circuit jordan_circuit(Mode mode, u64 p = kDefaultPrime);       // (x1 x2)(x1 x1) - x1 (x2 (x1 x1))
Circuit square_circuit(Mode mode, u64 p = kDefaultPrime);       // x1 x1 from one duplicated leaf
Circuit zero_circuit(Mode mode, int n = 1, u64 p = kDefaultPrime);
Circuit constant_circuit(Mode mode, u64 c, int n = 1, u64 p = kDefaultPrime);
Circuit monomial_circuit(const Monomial& m, Mode mode, int n, u64 p = kDefaultPrime);

// c + (g - g) for a separately built copy of g; computes the same polynomial.
Circuit pad_with_zero(const Circuit& c, const Circuit& g);
// c - c' where c' rebuilds c gate by gate, optionally swapping the children
// of every product gate.
Circuit difference_of_copies(const Circuit& c, bool swap_children);

// Every monomial tree of exactly this degree over x_1..x_n.
std::vector<Monomial> all_monomials(int n, int degree);
Monomial random_monomial(int n, int degree, Rng& rng);

enum class CorpusSize { Small, Full };
// Accepts "small" and "full"; throws InvalidArgument otherwise.
CorpusSize parse_corpus(const std::string& name);

struct VerifyOptions {
    CorpusSize corpus = CorpusSize::Small;
    std::uint64_t seed = 1;
    u64 p = kDefaultPrime;
    WhiteboxOptions whitebox;
    HittingBudget budget;
    std::vector<int> only;  // criterion ids to run; empty runs all
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::uint64_t capped = 0;  // instances refused by an enumeration or point cap
    std::string detail;
    double seconds = 0.0;

    // Failed only because instances exceeded the configured caps.
    bool unattainable() const { return !pass && failed == 0 && capped > 0; }
};

struct VerifyReport {
    std::vector<CriterionResult> criteria;

    bool all_pass() const;
    bool only_cap_failures() const;
};

VerifyReport verify_suite(const VerifyOptions& opt,
                          const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS 1 oracle agreement: <detail>" style line, without timing.
std::string format_result(const CriterionResult& r);

}  // namespace nacirc
