#pragma once

#include <cstdint>
#include <vector>

namespace nacirc {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;

constexpr u64 kDefaultPrime = 2305843009213693951ULL;  // 2^61 - 1

bool is_prime_u64(u64 n);

// Arithmetic in F_p for a prime p < 2^64. Values are residues in [0, p).
class Field {
public:
    explicit Field(u64 p = kDefaultPrime);

    u64 p() const { return p_; }

    u64 reduce(u64 a) const { return a % p_; }
    u64 from_int(std::int64_t a) const;
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        if (s < a || s >= p_) s -= p_;
        return s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (p_ - b); }
    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const {
        return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p_);
    }
    u64 pow(u64 a, u64 e) const;
    // Throws InvalidArgument when a is zero.
    u64 inv(u64 a) const;

    bool operator==(const Field& o) const { return p_ == o.p_; }

private:
    u64 p_;
};

// Throws NotPrime when p is composite or below 2.
Field field_new(u64 p);

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<u64> entries;  // row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}
    u64& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    u64 at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

std::size_t rank(const Field& F, Matrix m);

// Incrementally maintained row echelon basis; supports span membership.
class SpanBasis {
public:
    SpanBasis(const Field& F, std::size_t dim) : F_(F), dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return rows_.size(); }

    // Reduces v against the basis; returns the residual.
    Vec residual(Vec v) const;
    bool contains(const Vec& v) const;
    // Adds v if independent. Returns true when the basis grew.
    bool insert(const Vec& v);

private:
    Field F_;
    std::size_t dim_;
    std::vector<Vec> rows_;           // each normalized so the pivot entry is 1
    std::vector<std::size_t> pivot_;  // pivot column of each row
};

// Left-to-right greedy selection of a maximal independent subset.
std::vector<std::size_t> greedy_basis(const Field& F, const std::vector<Vec>& vectors, std::size_t dim);

}  // namespace nacirc
