#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nacirc/algebra.hpp"
#include "nacirc/circuit.hpp"
#include "nacirc/rng.hpp"

namespace nacirc {

// Query access to a polynomial of degree at most d through evaluations over
// A_d (noncomm) or C_d (comm).
struct BlackBox {
    int n = 0;
    int d = 1;
    Mode mode = Mode::Comm;
    u64 p = kDefaultPrime;
    std::function<AlgebraElem(const std::vector<AlgebraElem>&)> eval;
    std::uint64_t* query_counter = nullptr;  // optional, incremented per call
};

// Wraps a known circuit; d defaults to its syntactic degree (at least 1).
BlackBox blackbox_from_circuit(const Circuit& c, int d = -1);

struct RandVerdict {
    bool zero = true;
    double bound = 1.0;  // (d/|S|)^trials when zero
    int trials_run = 0;
    std::vector<AlgebraElem> witness;  // the point tuple when nonzero
};

// Throws SetTooSmall if |S| <= d and FieldTooSmall if p <= d.
RandVerdict randomized_pit(const BlackBox& bb, const std::vector<u64>& S, int trials, Rng& rng);

struct FailureRate {
    std::uint64_t zeros = 0;
    std::uint64_t trials = 0;
    double rate() const { return trials ? static_cast<double>(zeros) / static_cast<double>(trials) : 0.0; }
    double bound = 0.0;  // d/|S|
};

// Fraction of single random tuples at which f evaluates to zero. Requires f
// to be a nonzero polynomial; throws InvalidArgument otherwise.
FailureRate empirical_failure_rate(const Circuit& f, const std::vector<u64>& S, std::uint64_t trials, Rng& rng);

// Same measurement without the nonzero precondition.
FailureRate zero_evaluation_rate(const Circuit& f, int d, const std::vector<u64>& S, std::uint64_t trials, Rng& rng);

// {0, 1, ..., k-1}.
std::vector<u64> iota_set(u64 k);

}  // namespace nacirc
