#include "qphase/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qphase/error.hpp"

namespace qphase::numtheory {

namespace {

__extension__ using u128 = unsigned __int128;

void require_positive(u64 n, const char* what)
{
    if (n == 0) {
        throw DomainError(std::string(what) + ": argument must be >= 1");
    }
}

u64 ipow(u64 base, unsigned exp)
{
    u64 r = 1;
    while (exp-- > 0) {
        r *= base;
    }
    return r;
}

} // namespace

FactoredInteger::FactoredInteger(u64 value, std::vector<PrimePower> factors)
    : value_(value), factors_(std::move(factors))
{
    if (value_ == 0) {
        throw DomainError("FactoredInteger: value must be >= 1");
    }
    u64 product = 1;
    u64 last = 0;
    for (const auto& f : factors_) {
        if (f.prime <= last || f.exponent == 0) {
            throw DomainError("FactoredInteger: primes must increase and exponents be >= 1");
        }
        last = f.prime;
        product *= ipow(f.prime, f.exponent);
    }
    if (product != value_) {
        throw DomainError("FactoredInteger: factors do not multiply to value");
    }
}

bool FactoredInteger::is_squarefree() const noexcept
{
    for (const auto& f : factors_) {
        if (f.exponent > 1) {
            return false;
        }
    }
    return true;
}

Sieve::Sieve(u64 bound) : bound_(bound)
{
    if (bound_ < 2 || bound_ > 0xFFFFFFFFull) {
        throw DomainError("Sieve: bound must lie in [2, 2^32)");
    }
    smallest_factor_.assign(bound_ + 1, 0);
    for (u64 i = 2; i <= bound_; ++i) {
        if (smallest_factor_[i] == 0) {
            primes_.push_back(static_cast<std::uint32_t>(i));
            smallest_factor_[i] = static_cast<std::uint32_t>(i);
        }
        for (std::uint32_t p : primes_) {
            if (p > smallest_factor_[i] || i * p > bound_) {
                break;
            }
            smallest_factor_[i * p] = p;
        }
    }
}

const Sieve& Sieve::shared()
{
    static const Sieve instance;
    return instance;
}

FactoredInteger Sieve::factorize(u64 n) const
{
    require_positive(n, "factorize");
    if (n > max_factorable()) {
        throw DomainError("factorize: " + std::to_string(n) + " exceeds sieve bound squared");
    }
    std::vector<PrimePower> factors;
    u64 m = n;
    auto take = [&](u64 p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        factors.push_back({p, e});
    };
    if (m > bound_) {
        for (std::uint32_t p : primes_) {
            if (static_cast<u64>(p) * p > m) {
                break;
            }
            if (m % p == 0) {
                take(p);
                if (m <= bound_) {
                    break;
                }
            }
        }
        if (m > bound_) {
            // no prime <= sqrt(m) divides it
            factors.push_back({m, 1});
            m = 1;
        }
    }
    while (m > 1) {
        take(smallest_factor_[m]);
    }
    return FactoredInteger(n, std::move(factors));
}

bool Sieve::is_prime(u64 n) const
{
    if (n < 2) {
        return false;
    }
    if (n <= bound_) {
        return smallest_factor_[n] == n;
    }
    const auto f = factorize(n);
    return f.factors().size() == 1 && f.factors().front().exponent == 1;
}

FactoredInteger factorize(u64 n)
{
    return Sieve::shared().factorize(n);
}

u64 totient(const FactoredInteger& n)
{
    u64 phi = 1;
    for (const auto& [p, k] : n.factors()) {
        phi *= (p - 1) * ipow(p, k - 1);
    }
    return phi;
}

u64 totient(u64 n)
{
    return totient(factorize(n));
}

u64 carmichael(const FactoredInteger& n)
{
    u64 lambda = 1;
    for (const auto& [p, k] : n.factors()) {
        u64 part;
        if (p == 2) {
            part = k <= 2 ? ipow(2, k - 1) : ipow(2, k - 2);
        } else {
            part = (p - 1) * ipow(p, k - 1);
        }
        lambda = lcm(lambda, part);
    }
    return lambda;
}

u64 carmichael(u64 n)
{
    return carmichael(factorize(n));
}

int moebius(const FactoredInteger& n)
{
    if (!n.is_squarefree()) {
        return 0;
    }
    return n.distinct_primes() % 2 == 0 ? 1 : -1;
}

int moebius(u64 n)
{
    return moebius(factorize(n));
}

double mangoldt(const FactoredInteger& n)
{
    if (!n.is_prime_power()) {
        return 0.0;
    }
    return std::log(static_cast<double>(n.factors().front().prime));
}

double mangoldt(u64 n)
{
    return mangoldt(factorize(n));
}

u64 mulmod(u64 a, u64 b, u64 mod)
{
    return static_cast<u64>(static_cast<u128>(a) * b % mod);
}

u64 powmod(u64 base, u64 exp, u64 mod)
{
    if (mod == 1) {
        return 0;
    }
    u64 result = 1;
    base %= mod;
    while (exp > 0) {
        if (exp & 1u) {
            result = mulmod(result, base, mod);
        }
        base = mulmod(base, base, mod);
        exp >>= 1;
    }
    return result;
}

u64 lcm(u64 a, u64 b)
{
    return a / std::gcd(a, b) * b;
}

u64 mult_order(u64 a, u64 q)
{
    if (q < 2) {
        throw DomainError("mult_order: modulus must be >= 2");
    }
    a %= q;
    if (std::gcd(a, q) != 1) {
        throw DomainError("mult_order: order undefined, gcd(" + std::to_string(a) + ", " +
                          std::to_string(q) + ") != 1");
    }
    // The order divides lambda(q): strip prime factors of lambda while a^(r/p) stays 1.
    u64 r = carmichael(q);
    const auto fr = factorize(r);
    for (const auto& [p, k] : fr.factors()) {
        for (unsigned i = 0; i < k && powmod(a, r / p, q) == 1; ++i) {
            r /= p;
        }
    }
    return r;
}

bool is_primitive_root(u64 a, u64 q)
{
    if (q < 2) {
        throw DomainError("is_primitive_root: modulus must be >= 2");
    }
    if (std::gcd(a % q, q) != 1) {
        return false;
    }
    return mult_order(a, q) == totient(q);
}

i64 ramanujan_sum(u64 q, u64 n)
{
    require_positive(q, "ramanujan_sum");
    require_positive(n, "ramanujan_sum");
    const u64 g = std::gcd(n, q);
    const auto reduced = factorize(q / g);
    const auto full = totient(q);
    return static_cast<i64>(moebius(reduced)) * static_cast<i64>(full / totient(reduced));
}

std::vector<u64> divisors(const FactoredInteger& n)
{
    std::vector<u64> out{1};
    for (const auto& [p, k] : n.factors()) {
        const std::size_t base = out.size();
        u64 pk = 1;
        for (unsigned e = 1; e <= k; ++e) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) {
                out.push_back(out[i] * pk);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ArithmeticValue arithmetic_profile(u64 n)
{
    const auto f = factorize(n);
    return {n, totient(f), carmichael(f), moebius(f), mangoldt(f)};
}

} // namespace qphase::numtheory
