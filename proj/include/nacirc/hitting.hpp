#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "nacirc/algebra.hpp"
#include "nacirc/circuit.hpp"
#include "nacirc/monomial.hpp"
#include "nacirc/oracle.hpp"
#include "nacirc/randpit.hpp"

namespace nacirc {

constexpr std::uint64_t kDefaultCandidateCap = 1000000;
constexpr std::uint64_t kDefaultPointCap = 20000000;
constexpr std::uint64_t kDefaultParseTreeCap = 1000000;

// Nonnegative weights of the variables z_1..z_{n_z}, stored by flat index
// (z_i at position i - 1) and extended additively to monomials.
struct WeightAssignment {
    std::vector<std::uint64_t> w;

    // Throws WeightOverflow if the sum does not fit in 64 bits.
    std::uint64_t of(const ZMono& m) const;
    std::uint64_t max_weight() const;
};

// Family of weight functions w_t(z_i) = (d+1)^(i-1) mod p_t, p_t the t-th
// prime, which separates every set of at most k monomials of individual
// degree at most d in n_z variables.
struct KroneckerFamily {
    int n_z = 0;
    std::uint64_t k = 0;
    int d = 0;
    std::uint64_t N = 0;
    std::vector<std::uint64_t> primes;  // p_1 .. p_N

    std::uint64_t weight(std::uint64_t t, int i) const;  // t in [0, N), i in [1, n_z]
    WeightAssignment member(std::uint64_t t) const;
    // Strict upper bound on every weight value of the family.
    std::uint64_t weight_bound() const;
};

// ceil(n_z * k(k-1)/2 * log2(d+1)), at least 1; saturates at UINT64_MAX.
std::uint64_t kronecker_size(int n_z, std::uint64_t k, int d);
// Throws EnumerationCapExceeded when the family would exceed max_members.
KroneckerFamily kronecker_family(int n_z, std::uint64_t k, int d, std::uint64_t max_members = kDefaultCandidateCap);
bool separates(const WeightAssignment& w, const std::vector<ZMono>& set);
// First n primes.
std::vector<std::uint64_t> first_primes(std::uint64_t n);

// A z-circuit read associatively and commutatively; its variable x_i is the
// z variable with flat index i - 1.
struct UnambiguousCircuit {
    Circuit circuit;
    int n = 0;         // variables of the source circuit
    int d = 0;         // algebra parameter
    int degree = 0;    // homogeneous degree d' carried by this circuit
    int n_z() const { return circuit.n; }
    int size() const { return circuit.size(); }
    int product_depth() const { return circuit.product_depth(); }
};

// One z-circuit per degree 1..d computing phi of the homogeneous parts of c.
// Throws DegreeExceeded when degree(c) > d.
std::vector<UnambiguousCircuit> set_multilinearize(const Circuit& c, int d);

// Every associative monomial has a single reduced parse tree up to
// isomorphism. Throws CapExceeded beyond `cap` parse trees.
bool is_unambiguous(const Circuit& zc, std::uint64_t cap = kDefaultParseTreeCap);

struct BiwaCandidate {
    std::vector<std::uint64_t> members;  // family indices chosen for w_2..w_{Delta+1}
    std::uint64_t B = 0;
    WeightAssignment w;
};

// Enumerates w = sum_{i=0..Delta} B^(Delta-i) w_{i+1} with w_1(z_i) = i and
// w_2..w_{Delta+1} ranging over the Kronecker family for sets of s^2 Delta
// monomials.
class BiwaEnumerator {
public:
    // Throws EnumerationCapExceeded when the candidate count exceeds cap.
    BiwaEnumerator(int n_z, int s, int d, int delta, std::uint64_t cap = kDefaultCandidateCap);

    std::uint64_t count() const { return count_; }
    const KroneckerFamily& family() const { return family_; }
    void reset();
    // Throws WeightOverflow for weights beyond 64 bits.
    bool next(BiwaCandidate& out);

private:
    int n_z_, d_, delta_;
    KroneckerFamily family_;
    std::uint64_t count_ = 1;
    std::vector<std::uint64_t> cursor_;
    bool done_ = false;
};

struct BiwaCheck {
    bool spans = false;
    bool injective = false;
    bool lighter = false;
    std::vector<ZMono> basis;
    bool ok() const { return spans && injective && lighter; }
};

// Holds the per-gate coefficient vectors of one circuit so that many weight
// assignments can be checked against it. Throws TermCapExceeded.
class BiwaVerifier {
public:
    explicit BiwaVerifier(const Circuit& uc, std::size_t max_terms = kDefaultTermCap);
    BiwaCheck check(const WeightAssignment& w) const;
    const ZPoly& output() const { return output_; }

private:
    Field F_;
    std::size_t dim_ = 0;
    std::vector<ZMono> monos_;
    std::vector<Vec> vecs_;
    ZPoly output_;
};

BiwaCheck check_biwa(const WeightAssignment& w, const Circuit& uc, std::size_t max_terms = kDefaultTermCap);
bool verify_biwa(const WeightAssignment& w, const Circuit& uc, std::size_t max_terms = kDefaultTermCap);

// The output polynomial under z_i -> t^{w(z_i)}: exponent -> coefficient.
std::map<std::uint64_t, u64> univariate_image(const WeightAssignment& w, const Circuit& uc);
std::map<std::uint64_t, u64> univariate_image(const WeightAssignment& w, const ZPoly& f, const Field& F);

struct HittingBudget {
    std::uint64_t max_candidates = kDefaultCandidateCap;
    std::uint64_t max_points = kDefaultPointCap;
};

// Visits the points (t^{w(z_1)}, ..., t^{w(z_{n_z})}) for every candidate w
// and t in 1..D+1 with D = d * max_i w(z_i). The visitor returns false to
// stop early. Sizes are checked before the first point is produced.
void for_each_unambiguous_point(int n_z, int s, int d, int delta, const Field& F, const HittingBudget& budget,
                                const std::function<bool(const std::vector<u64>&)>& visit);
std::uint64_t hitting_set_size(int n_z, int s, int d, int delta, const Field& F, const HittingBudget& budget);

// Throws FieldTooSmall, EnumerationCapExceeded.
std::vector<std::vector<u64>> hitting_set_unambiguous(int n_z, int s, int d, int delta, const Field& F,
                                                      const HittingBudget& budget = {});

// Points of (A_d)^n or (C_d)^n: x_i = make_Zi(i, d, z) at every z-point of the
// hitting set for n_z = n d^2 variables and size 3 d^4 s.
void for_each_nonassoc_point(int n, int s, int d, int delta, const Field& F, const HittingBudget& budget,
                             const std::function<bool(const std::vector<AlgebraElem>&)>& visit);
std::vector<std::vector<AlgebraElem>> hitting_set_nonassoc(int n, int s, int d, int delta, Mode mode, const Field& F,
                                                           const HittingBudget& budget = {});

struct DetVerdict {
    bool zero = true;
    std::vector<AlgebraElem> witness;
    std::uint64_t queries = 0;
};

DetVerdict blackbox_pit_det(const BlackBox& bb, int s, int delta, const HittingBudget& budget = {});

}  // namespace nacirc
