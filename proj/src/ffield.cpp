#include "nacirc/ffield.hpp"

#include <string>

#include "nacirc/error.hpp"

namespace nacirc {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    static const u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : small) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are a deterministic witness set below 3.3e24.
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Field::Field(u64 p) : p_(p) {}

u64 Field::from_int(std::int64_t a) const {
    if (a >= 0) return static_cast<u64>(a) % p_;
    // -(a + 1) cannot overflow, even at INT64_MIN
    u64 m = (static_cast<u64>(-(a + 1)) % p_ + 1) % p_;
    return m == 0 ? 0 : p_ - m;
}

u64 Field::pow(u64 a, u64 e) const { return powmod(a, e, p_); }

u64 Field::inv(u64 a) const {
    if (a % p_ == 0) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
    return powmod(a, p_ - 2, p_);
}

Field field_new(u64 p) {
    if (!is_prime_u64(p)) throw Error(ErrorKind::NotPrime, "modulus " + std::to_string(p) + " is not prime");
    return Field(p);
}

std::size_t rank(const Field& F, Matrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        while (piv < m.rows && m.at(piv, c) == 0) ++piv;
        if (piv == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
        u64 iv = F.inv(m.at(r, c));
        for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = F.mul(m.at(r, j), iv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            u64 f = m.at(i, c);
            for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
        }
        ++r;
    }
    return r;
}

Vec SpanBasis::residual(Vec v) const {
    if (v.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "vector length differs from basis dimension");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        u64 f = v[pivot_[r]];
        if (f == 0) continue;
        const Vec& row = rows_[r];
        for (std::size_t j = 0; j < dim_; ++j) {
            if (row[j]) v[j] = F_.sub(v[j], F_.mul(f, row[j]));
        }
    }
    return v;
}

bool SpanBasis::contains(const Vec& v) const {
    Vec res = residual(v);
    for (u64 x : res) {
        if (x) return false;
    }
    return true;
}

bool SpanBasis::insert(const Vec& v) {
    Vec res = residual(v);
    std::size_t piv = dim_;
    for (std::size_t j = 0; j < dim_; ++j) {
        if (res[j]) {
            piv = j;
            break;
        }
    }
    if (piv == dim_) return false;
    u64 iv = F_.inv(res[piv]);
    for (u64& x : res) x = F_.mul(x, iv);
    // Keep earlier rows reduced at the new pivot so residual() needs one pass.
    for (Vec& row : rows_) {
        u64 f = row[piv];
        if (f == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (res[j]) row[j] = F_.sub(row[j], F_.mul(f, res[j]));
        }
    }
    rows_.push_back(std::move(res));
    pivot_.push_back(piv);
    return true;
}

std::vector<std::size_t> greedy_basis(const Field& F, const std::vector<Vec>& vectors, std::size_t dim) {
    SpanBasis basis(F, dim);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != dim) {
            throw Error(ErrorKind::DimensionMismatch,
                        "vector " + std::to_string(i) + " has length " + std::to_string(vectors[i].size()) +
                            ", expected " + std::to_string(dim));
        }
        if (basis.insert(vectors[i])) kept.push_back(i);
    }
    return kept;
}

}  // namespace nacirc
