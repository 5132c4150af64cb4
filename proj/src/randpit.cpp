#include "nacirc/randpit.hpp"

#include <cmath>

#include "nacirc/error.hpp"
#include "nacirc/oracle.hpp"

namespace nacirc {

namespace {

void check_params(int d, u64 p, std::size_t set_size) {
    if (p <= static_cast<u64>(d)) {
        throw Error(ErrorKind::FieldTooSmall, "field size " + std::to_string(p) + " must exceed d=" + std::to_string(d));
    }
    if (set_size <= static_cast<std::size_t>(d)) {
        throw Error(ErrorKind::SetTooSmall,
                    "sample set of size " + std::to_string(set_size) + " must exceed d=" + std::to_string(d));
    }
}

std::vector<AlgebraElem> draw(int n, int d, const std::vector<u64>& S, Rng& rng) {
    std::vector<AlgebraElem> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) pts.push_back(random_elem(d, S, rng));
    return pts;
}

}  // namespace

BlackBox blackbox_from_circuit(const Circuit& c, int d) {
    BlackBox bb;
    bb.n = c.n;
    bb.d = d >= 0 ? d : std::max(1, c.degree());
    bb.mode = c.mode;
    bb.p = c.p;
    Circuit copy = extract(c, c.output);
    copy.n = c.n;
    const int dim = std::max(1, bb.d);
    bb.eval = [copy, dim](const std::vector<AlgebraElem>& pts) { return eval_circuit(copy, pts, dim); };
    return bb;
}

RandVerdict randomized_pit(const BlackBox& bb, const std::vector<u64>& S, int trials, Rng& rng) {
    check_params(bb.d, bb.p, S.size());
    const int dim = std::max(1, bb.d);
    RandVerdict v;
    for (int t = 0; t < trials; ++t) {
        auto pts = draw(bb.n, dim, S, rng);
        ++v.trials_run;
        if (bb.query_counter) ++*bb.query_counter;
        if (!bb.eval(pts).is_zero()) {
            v.zero = false;
            v.bound = 0.0;
            v.witness = std::move(pts);
            return v;
        }
    }
    v.bound = std::pow(static_cast<double>(bb.d) / static_cast<double>(S.size()), trials);
    return v;
}

FailureRate zero_evaluation_rate(const Circuit& f, int d, const std::vector<u64>& S, std::uint64_t trials, Rng& rng) {
    check_params(d, f.p, S.size());
    const int dim = std::max(1, d);
    Circuit sub = extract(f, f.output);
    sub.n = f.n;
    FailureRate r;
    r.bound = static_cast<double>(d) / static_cast<double>(S.size());
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto pts = draw(f.n, dim, S, rng);
        ++r.trials;
        if (eval_circuit(sub, pts, dim).is_zero()) ++r.zeros;
    }
    return r;
}

FailureRate empirical_failure_rate(const Circuit& f, const std::vector<u64>& S, std::uint64_t trials, Rng& rng) {
    if (expand(f).is_zero()) throw Error(ErrorKind::InvalidArgument, "failure rate needs a nonzero polynomial");
    return zero_evaluation_rate(f, std::max(1, f.degree()), S, trials, rng);
}

std::vector<u64> iota_set(u64 k) {
    std::vector<u64> s(k);
    for (u64 i = 0; i < k; ++i) s[i] = i;
    return s;
}

}  // namespace nacirc
