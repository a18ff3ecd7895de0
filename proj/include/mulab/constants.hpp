#pragma once

#include <cstdint>
#include <optional>

#include "mulab/correlation.hpp"

namespace mulab {

// 6/pi^2 = prod_p (1 - 1/p^2), the squarefree density, to full double
// precision.
inline constexpr double kSquarefreeDensity = 0.6079271018540266286632767792;

struct EulerProductResult {
    TupleSpec tuple;
    uint64_t prime_bound = 0;
    double value = 1.0;       // prod_{p <= P} (1 - omega(p)/p^2)
    double tail_bound = 0.0;  // sum_{p > P} k/p^2 < k/(P-1)
    bool obstruction = false; // some p has omega(p) = p^2, so the product is 0
    std::optional<double> oracle_density;
    std::optional<uint64_t> oracle_x;

    std::string to_json() const;  // {offsets,q,prime_bound,value,tail_bound,obstruction,...}
};

// omega(p) = #{m mod p^2 : q*m + a_i == 0 (mod p^2) for some i} -- the count
// of residues killed by at least one offset. Direct enumeration for
// p^2 <= 10^6, modular arithmetic above. Throws if p is not prime.
uint64_t omega_p(const TupleSpec& tuple, uint64_t p);

// Conjunction variant: residues where every offset hits 0 mod p^2 at once.
// Exposed for reports only; inconsistent with the k = 1 anchor 6/pi^2, so
// the product never uses it.
uint64_t omega_p_conjunction(const TupleSpec& tuple, uint64_t p);

// Truncated singular series s_k = prod_{p <= P} (1 - omega(p)/p^2), factors
// multiplied in ascending-prime order. Requires P >= 2.
EulerProductResult singular_series(const TupleSpec& tuple, uint64_t prime_bound);

// Exact count of n < x with q*n + a_i squarefree for every i, divided by x.
double density_oracle(const TupleSpec& tuple, uint64_t x);

}  // namespace mulab
