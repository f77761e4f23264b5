#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qphase/error.hpp"
#include "qphase/numtheory.hpp"
#include "support/oracles.hpp"

using namespace qphase::numtheory;

TEST_CASE("factorize: small cases")
{
    CHECK(factorize(12).factors() == std::vector<PrimePower>{{2, 2}, {3, 1}});
    CHECK(factorize(1).factors().empty());
    CHECK(factorize(1).is_one());
    CHECK(factorize(9).factors() == std::vector<PrimePower>{{3, 2}});
    CHECK_THROWS_AS(factorize(0), qphase::DomainError);
}

TEST_CASE("factorize: invariants hold across a range")
{
    for (u64 n = 1; n <= 5000; ++n) {
        const auto f = factorize(n);
        u64 product = 1;
        u64 last = 0;
        for (const auto& [p, k] : f.factors()) {
            REQUIRE(p > last);
            REQUIRE(k >= 1);
            REQUIRE(oracle::is_prime_by_trial(p));
            last = p;
            for (unsigned i = 0; i < k; ++i) {
                product *= p;
            }
        }
        REQUIRE(product == n);
    }
}

TEST_CASE("factorize: beyond the table and beyond the bound")
{
    const Sieve small(100);
    CHECK(small.factorize(9973).factors() == std::vector<PrimePower>{{9973, 1}});
    CHECK(small.factorize(97 * 89).factors() == std::vector<PrimePower>{{89, 1}, {97, 1}});
    CHECK(small.factorize(2 * 2 * 101).factors() == std::vector<PrimePower>{{2, 2}, {101, 1}});
    CHECK_THROWS_AS(small.factorize(10001), qphase::DomainError);
    CHECK(small.max_factorable() == 10000);

    // 999983 is the largest prime below 10^6
    const u64 big = 999983ull * 999979ull;
    CHECK(factorize(big).factors() == std::vector<PrimePower>{{999979, 1}, {999983, 1}});
}

TEST_CASE("FactoredInteger rejects inconsistent data")
{
    CHECK_THROWS_AS(FactoredInteger(12, {{3, 1}, {2, 2}}), qphase::DomainError);
    CHECK_THROWS_AS(FactoredInteger(12, {{2, 1}, {3, 1}}), qphase::DomainError);
    CHECK_THROWS_AS(FactoredInteger(0, {}), qphase::DomainError);
}

TEST_CASE("totient: table anchors and conventions")
{
    CHECK(totient(7) == 6);
    CHECK(totient(9) == 6);
    CHECK(totient(8) == 4);
    CHECK(totient(1) == 1);
    CHECK_THROWS_AS(totient(0), qphase::DomainError);
}

TEST_CASE("totient equals gcd counting up to 2000")
{
    for (u64 n = 1; n <= 2000; ++n) {
        REQUIRE(totient(n) == oracle::totient_by_count(n));
    }
}

TEST_CASE("carmichael: anchors and brute-force exponent up to 2000")
{
    CHECK(carmichael(8) == 2);
    CHECK(carmichael(9) == 6);
    CHECK(carmichael(1) == 1);
    CHECK(carmichael(2) == 1);
    CHECK(carmichael(4) == 2);
    CHECK(carmichael(16) == 4);
    for (u64 p : {3u, 5u, 7u, 11u, 101u, 997u}) {
        CHECK(carmichael(p) == p - 1);
    }
    for (u64 n = 1; n <= 2000; ++n) {
        REQUIRE(carmichael(n) == oracle::carmichael_by_max_order(n));
    }
}

TEST_CASE("moebius")
{
    CHECK(moebius(4) == 0);
    CHECK(moebius(6) == 1);
    CHECK(moebius(1) == 1);
    CHECK(moebius(30) == -1);
    for (u64 n = 1; n <= 2000; ++n) {
        REQUIRE(moebius(n) == oracle::moebius_by_trial(n));
    }
}

TEST_CASE("mangoldt")
{
    CHECK(mangoldt(8) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(mangoldt(8) == doctest::Approx(0.693147).epsilon(1e-6));
    CHECK(mangoldt(6) == 0.0);
    CHECK(mangoldt(1) == 0.0);
    CHECK(mangoldt(49) == doctest::Approx(std::log(7.0)));
}

TEST_CASE("mangoldt matches the Moebius-inversion identity up to 2000")
{
    for (u64 n = 1; n <= 2000; ++n) {
        REQUIRE(std::abs(mangoldt(n) - oracle::mangoldt_by_moebius_inversion(n)) <= 1e-12);
        REQUIRE((mangoldt(n) > 0.0) == factorize(n).is_prime_power());
    }
}

TEST_CASE("mult_order: table cycles")
{
    CHECK(mult_order(3, 7) == 6);
    CHECK(mult_order(2, 9) == 6);
    CHECK(mult_order(3, 8) == 2);
    CHECK(mult_order(1, 5) == 1);
    CHECK(mult_order(10, 7) == mult_order(3, 7));
}

TEST_CASE("mult_order: domain errors")
{
    CHECK_THROWS_AS(mult_order(2, 8), qphase::DomainError);
    CHECK_THROWS_AS(mult_order(3, 9), qphase::DomainError);
    CHECK_THROWS_AS(mult_order(0, 5), qphase::DomainError);
    CHECK_THROWS_AS(mult_order(1, 1), qphase::DomainError);
}

TEST_CASE("mult_order equals linear scan for q <= 300")
{
    for (u64 q = 2; q <= 300; ++q) {
        for (u64 a = 1; a < q; ++a) {
            if (std::gcd(a, q) == 1) {
                REQUIRE(mult_order(a, q) == oracle::order_by_scan(a, q));
            }
        }
    }
}

TEST_CASE("order <= lambda <= phi <= q-1 chain with divisibility, n in [2, 10^4]")
{
    for (u64 n = 2; n <= 10'000; ++n) {
        const auto f = factorize(n);
        const u64 phi = totient(f);
        const u64 lambda = carmichael(f);
        REQUIRE(phi % lambda == 0);
        REQUIRE(phi <= n - 1);
        u64 bad = 0;
        for (u64 a = 1; a < n; ++a) {
            if (std::gcd(a, n) == 1 && lambda % mult_order(a, n) != 0) {
                ++bad;
            }
        }
        INFO("n = " << n);
        REQUIRE(bad == 0);
    }
}

TEST_CASE("is_primitive_root")
{
    CHECK(is_primitive_root(3, 7));
    CHECK_FALSE(is_primitive_root(3, 8));
    CHECK(is_primitive_root(2, 9));
    CHECK_FALSE(is_primitive_root(3, 9));  // gcd != 1 gives false, not an error
    CHECK_FALSE(is_primitive_root(2, 7));  // order 3
}

TEST_CASE("primitive roots exist exactly for 1, 2, 4, p^k, 2p^k (n <= 500)")
{
    for (u64 n = 2; n <= 500; ++n) {
        bool any = false;
        for (u64 a = 1; a < n && !any; ++a) {
            any = is_primitive_root(a, n);
        }
        INFO("n = " << n);
        REQUIRE(any == oracle::has_primitive_root_by_form(n));
    }
}

TEST_CASE("ramanujan_sum: anchors")
{
    CHECK(ramanujan_sum(1, 7) == 1);
    CHECK(ramanujan_sum(1, 1) == 1);
    CHECK(ramanujan_sum(4, 2) == -2);
    for (u64 q = 1; q <= 50; ++q) {
        REQUIRE(ramanujan_sum(q, 1) == moebius(q));
    }
    CHECK_THROWS_AS(ramanujan_sum(0, 1), qphase::DomainError);
    CHECK_THROWS_AS(ramanujan_sum(3, 0), qphase::DomainError);
}

TEST_CASE("ramanujan_sum closed form equals direct root-of-unity sum, q, n <= 100")
{
    for (u64 q = 1; q <= 100; ++q) {
        for (u64 n = 1; n <= 100; ++n) {
            const auto direct = oracle::ramanujan_by_roots(q, n);
            REQUIRE(std::abs(direct.imag()) <= 1e-9);
            REQUIRE(std::abs(direct.real() - static_cast<double>(ramanujan_sum(q, n))) <= 1e-9);
        }
    }
}

TEST_CASE("divisors and arithmetic_profile")
{
    CHECK(divisors(factorize(12)) == std::vector<u64>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(factorize(1)) == std::vector<u64>{1});
    const auto v = arithmetic_profile(8);
    CHECK(v.totient == 4);
    CHECK(v.carmichael == 2);
    CHECK(v.moebius == 0);
    CHECK(v.mangoldt == doctest::Approx(std::log(2.0)));
}

TEST_CASE("powmod handles 64-bit moduli")
{
    const u64 m = 999983ull * 999979ull;
    CHECK(powmod(2, 0, m) == 1);
    CHECK(powmod(m - 1, 2, m) == 1);
    CHECK(powmod(5, 3, 1) == 0);
}
