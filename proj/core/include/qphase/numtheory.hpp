#ifndef QPHASE_NUMTHEORY_HPP
#define QPHASE_NUMTHEORY_HPP

#include <cstdint>
#include <vector>

namespace qphase::numtheory {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
    u64 prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer together with its prime-power decomposition.
/// Primes are strictly increasing; value 1 has no factors.
class FactoredInteger {
public:
    FactoredInteger(u64 value, std::vector<PrimePower> factors);

    u64 value() const noexcept { return value_; }
    const std::vector<PrimePower>& factors() const noexcept { return factors_; }

    bool is_one() const noexcept { return factors_.empty(); }
    bool is_prime_power() const noexcept { return factors_.size() == 1; }
    bool is_squarefree() const noexcept;
    std::size_t distinct_primes() const noexcept { return factors_.size(); }

private:
    u64 value_;
    std::vector<PrimePower> factors_;
};

/// Smallest-prime-factor table up to `bound`; factorizes anything up to
/// bound^2 (beyond the table, by trial division over the tabulated primes).
/// Immutable after construction.
class Sieve {
public:
    static constexpr u64 kDefaultBound = 1'000'000;

    explicit Sieve(u64 bound = kDefaultBound);

    u64 bound() const noexcept { return bound_; }
    u64 max_factorable() const noexcept { return bound_ * bound_; }
    const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

    FactoredInteger factorize(u64 n) const;
    bool is_prime(u64 n) const;

    /// Process-wide sieve with the default bound, built on first use.
    static const Sieve& shared();

private:
    u64 bound_;
    std::vector<std::uint32_t> smallest_factor_;
    std::vector<std::uint32_t> primes_;
};

FactoredInteger factorize(u64 n);

u64 totient(u64 n);
u64 totient(const FactoredInteger& n);

u64 carmichael(u64 n);
u64 carmichael(const FactoredInteger& n);

int moebius(u64 n);
int moebius(const FactoredInteger& n);

/// ln b when n = b^k for a prime b, k >= 1; otherwise 0 (including n = 1).
double mangoldt(u64 n);
double mangoldt(const FactoredInteger& n);

/// Smallest r >= 1 with a^r = 1 (mod q). Requires q >= 2 and gcd(a, q) = 1;
/// a is reduced mod q first.
u64 mult_order(u64 a, u64 q);

bool is_primitive_root(u64 a, u64 q);

/// c_q(n), the sum of n-th powers of the primitive q-th roots of unity.
i64 ramanujan_sum(u64 q, u64 n);

u64 powmod(u64 base, u64 exp, u64 mod);
u64 mulmod(u64 a, u64 b, u64 mod);
u64 lcm(u64 a, u64 b);

/// Divisors of n in increasing order.
std::vector<u64> divisors(const FactoredInteger& n);

struct ArithmeticValue {
    u64 n;
    u64 totient;
    u64 carmichael;
    int moebius;
    double mangoldt;
};

ArithmeticValue arithmetic_profile(u64 n);

} // namespace qphase::numtheory

#endif
