#include "mulab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <stdexcept>

#include "mulab/summation.hpp"

namespace mulab {

namespace {

constexpr uint64_t kEnumerationLimit = 1'000'000;  // p^2 at or below: brute force residues
constexpr uint64_t kPrimeBoundCap = 100'000'000;

bool is_prime_u64(uint64_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// x such that a*x == 1 (mod m), for gcd(a, m) == 1.
uint64_t mod_inverse(uint64_t a, uint64_t m) {
    int64_t x0 = 1, x1 = 0;
    int64_t r0 = static_cast<int64_t>(a % m), r1 = static_cast<int64_t>(m);
    while (r1 != 0) {
        const int64_t qt = r0 / r1;
        std::tie(x0, x1) = std::make_tuple(x1, x0 - qt * x1);
        std::tie(r0, r1) = std::make_tuple(r1, r0 - qt * r1);
    }
    int64_t r = x0 % static_cast<int64_t>(m);
    if (r < 0) r += static_cast<int64_t>(m);
    return static_cast<uint64_t>(r);
}

uint64_t count_union(const TupleSpec& tuple, uint64_t p, bool conjunction) {
    const uint64_t p2 = p * p;
    if (p2 <= kEnumerationLimit) {
        const uint64_t qr = tuple.q % p2;
        uint64_t count = 0;
        for (uint64_t m = 0; m < p2; ++m) {
            bool any = false, all = true;
            for (uint64_t a : tuple.offsets) {
                const bool hit = (qr * m + a % p2) % p2 == 0;
                any |= hit;
                all &= hit;
            }
            count += conjunction ? all : any;
        }
        return count;
    }

    // q*m == -a_i (mod p^2) is solvable iff g = gcd(q, p^2) divides a_i, and
    // then the solutions form g residues spaced p^2/g apart. g = p^2 makes
    // the congruence universal (every residue solves it).
    const uint64_t g = std::gcd(tuple.q, p2);
    std::set<uint64_t> residues;          // union reading
    std::set<uint64_t> meet;              // conjunction reading
    bool meet_universal = true;           // empty intersection so far = everything
    for (uint64_t a : tuple.offsets) {
        if (a % g != 0) {
            if (conjunction) return 0;  // one unsolvable congruence empties the meet
            continue;
        }
        if (g == p2) {
            if (!conjunction) return p2;
            continue;  // universal set leaves the meet unchanged
        }
        std::set<uint64_t> sols;
        const uint64_t mod = p2 / g;
        const uint64_t neg_a = (mod - (a / g) % mod) % mod;
        const uint64_t m0 = static_cast<uint64_t>(
            (static_cast<unsigned __int128>(neg_a) * mod_inverse((tuple.q / g) % mod, mod)) % mod);
        for (uint64_t j = 0; j < g; ++j) sols.insert(m0 + j * mod);
        if (conjunction) {
            if (meet_universal) {
                meet = std::move(sols);
                meet_universal = false;
            } else {
                std::set<uint64_t> tmp;
                std::set_intersection(meet.begin(), meet.end(), sols.begin(), sols.end(),
                                      std::inserter(tmp, tmp.begin()));
                meet = std::move(tmp);
            }
        } else {
            residues.insert(sols.begin(), sols.end());
        }
    }
    if (conjunction) return meet_universal ? p2 : meet.size();
    return residues.size();
}

}  // namespace

uint64_t omega_p(const TupleSpec& tuple, uint64_t p) {
    tuple.validate();
    if (!is_prime_u64(p)) throw std::invalid_argument("omega_p: " + std::to_string(p) + " is not prime");
    return count_union(tuple, p, false);
}

uint64_t omega_p_conjunction(const TupleSpec& tuple, uint64_t p) {
    tuple.validate();
    if (!is_prime_u64(p)) throw std::invalid_argument("omega_p: " + std::to_string(p) + " is not prime");
    return count_union(tuple, p, true);
}

EulerProductResult singular_series(const TupleSpec& tuple, uint64_t prime_bound) {
    tuple.validate();
    if (prime_bound < 2) throw std::invalid_argument("singular_series: prime bound must be >= 2");
    if (prime_bound > kPrimeBoundCap)
        throw std::invalid_argument("singular_series: prime bound above " + std::to_string(kPrimeBoundCap) +
                                    " is not supported");

    const std::vector<uint32_t> primes = primes_upto(static_cast<uint32_t>(prime_bound));
    std::vector<uint64_t> omegas(primes.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (int64_t i = 0; i < static_cast<int64_t>(primes.size()); ++i)
        omegas[static_cast<size_t>(i)] = count_union(tuple, primes[static_cast<size_t>(i)], false);

    EulerProductResult res;
    res.tuple = tuple;
    res.prime_bound = prime_bound;
    double value = 1.0;
    bool obstruction = false;
    for (size_t i = 0; i < primes.size(); ++i) {  // ascending-prime order, fixed
        const uint64_t p2 = static_cast<uint64_t>(primes[i]) * primes[i];
        if (omegas[i] == p2) obstruction = true;
        value *= 1.0 - static_cast<double>(omegas[i]) / static_cast<double>(p2);
    }
    res.value = obstruction ? 0.0 : value;
    res.obstruction = obstruction;
    res.tail_bound = static_cast<double>(tuple.offsets.size()) / static_cast<double>(prime_bound - 1);
    return res;
}

double density_oracle(const TupleSpec& tuple, uint64_t x) {
    tuple.validate();
    if (x < 2) throw std::invalid_argument("density_oracle: requires x >= 2");
    const uint64_t top = tuple.q * (x - 1) + tuple.offsets.back();  // largest argument
    const ArithmeticTable sq = sieve(FunctionId::MobiusSquared, 1, top);
    const int8_t* w = sq.shifted_data();
    const uint64_t q = tuple.q;
    const std::vector<uint64_t>& offs = tuple.offsets;
    const int64_t count = blocked_isum(1, x, [w, q, &offs](uint64_t n) {
        int64_t prod = 1;
        for (uint64_t a : offs) {
            prod *= w[q * n + a];
            if (prod == 0) break;
        }
        return prod;
    });
    return static_cast<double>(count) / static_cast<double>(x);
}

std::string EulerProductResult::to_json() const {
    char buf[512];
    std::string oracle_d = "null", oracle_xs = "null";
    if (oracle_density) {
        char t[64];
        std::snprintf(t, sizeof(t), "%.17g", *oracle_density);
        oracle_d = t;
    }
    if (oracle_x) oracle_xs = std::to_string(*oracle_x);
    std::snprintf(buf, sizeof(buf),
                  "{\"offsets\":[%s],\"q\":%llu,\"prime_bound\":%llu,\"value\":%.17g,"
                  "\"tail_bound\":%.17g,\"obstruction\":%s,\"oracle_density\":%s,\"oracle_x\":%s}\n",
                  tuple.offsets_string().c_str(), static_cast<unsigned long long>(tuple.q),
                  static_cast<unsigned long long>(prime_bound), value, tail_bound,
                  obstruction ? "true" : "false", oracle_d.c_str(), oracle_xs.c_str());
    return buf;
}

}  // namespace mulab
