#include "qphase/bostconnes.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qphase/error.hpp"
#include "qphase/numtheory.hpp"

namespace qphase::bostconnes {

namespace {

using numtheory::u64;

void require_convergent(double beta, const char* what)
{
    if (!(beta > 1.0) || !std::isfinite(beta)) {
        throw DomainError(std::string(what) + ": partition function diverges for beta <= 1");
    }
}

/// ln|1 - b^{beta-1}| and its sign, given x = (beta - 1) ln b != 0.
std::pair<double, int> log_abs_one_minus_exp(double x)
{
    const int sign = x > 0.0 ? -1 : 1;
    if (x < 30.0) {
        return {std::log(std::abs(std::expm1(x))), sign};
    }
    return {x + std::log1p(-std::exp(-x)), sign};
}

u64 whole_periods(u64 n_terms, u64 q)
{
    return (n_terms + q - 1) / q * q;
}

/// sum_{n=1}^{N} coeff[n mod q] n^-beta, accumulated one period at a time.
std::complex<double> periodic_dirichlet_sum(std::span<const std::complex<double>> coeff,
                                            double beta, u64 n_terms)
{
    const u64 q = coeff.size();
    std::complex<double> total{0.0, 0.0};
    std::complex<double> carry{0.0, 0.0};
    for (u64 start = 1; start <= n_terms; start += q) {
        std::complex<double> block{0.0, 0.0};
        for (u64 n = start; n < start + q; ++n) {
            block += coeff[n % q] * std::pow(static_cast<double>(n), -beta);
        }
        // Kahan summation over blocks
        const auto y = block - carry;
        const auto t = total + y;
        carry = (t - total) - y;
        total = t;
    }
    return total;
}

} // namespace

ReducedFraction::ReducedFraction(std::uint64_t p, std::uint64_t q) : p_(p), q_(q)
{
    if (q_ == 0) {
        throw DomainError("ReducedFraction: denominator must be >= 1");
    }
    if (p_ >= q_ && !(p_ == 0 && q_ == 1)) {
        throw DomainError("ReducedFraction: requires 0 <= p < q");
    }
    if (std::gcd(p_, q_) != 1) {
        throw DomainError("ReducedFraction: " + std::to_string(p_) + "/" + std::to_string(q_) +
                          " is not in lowest terms");
    }
}

TailBoundedSum<double> zeta_partial(double beta, std::uint64_t n_terms)
{
    require_convergent(beta, "zeta_partial");
    if (n_terms < 10) {
        throw DomainError("zeta_partial: n_terms must be >= 10");
    }
    // smallest terms first
    double sum = 0.0;
    for (u64 n = n_terms; n >= 1; --n) {
        sum += std::pow(static_cast<double>(n), -beta);
    }
    const double big_n = static_cast<double>(n_terms);
    const double tail = std::pow(big_n, 1.0 - beta) / (beta - 1.0) - 0.5 * std::pow(big_n, -beta);
    return {sum + tail, n_terms, beta * std::pow(big_n, -beta - 1.0)};
}

double kms_expectation(const ReducedFraction& frac, double beta)
{
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw DomainError("kms_expectation: beta must be finite and >= 0");
    }
    if (frac.q() == 1 || beta == 0.0) {
        return 1.0;
    }
    double log_mag = 0.0;
    int sign = 1;
    const auto f = numtheory::factorize(frac.q());
    for (const auto& [b, k] : f.factors()) {
        const double lb = std::log(static_cast<double>(b));
        const double x = (beta - 1.0) * lb;
        if (x == 0.0) {
            return 0.0;
        }
        const auto [log_num, s] = log_abs_one_minus_exp(x);
        sign *= s;
        log_mag += -static_cast<double>(k) * beta * lb + log_num -
                   std::log1p(-1.0 / static_cast<double>(b));
    }
    return sign * std::exp(log_mag);
}

double kms_lowtemp_phase(std::uint64_t q, double beta)
{
    require_convergent(beta, "kms_lowtemp_phase");
    if (q == 0) {
        throw DomainError("kms_lowtemp_phase: q must be >= 1");
    }
    double value = std::pow(static_cast<double>(q), -beta);
    const auto f = numtheory::factorize(q);
    for (const auto& pk : f.factors()) {
        const auto b = static_cast<double>(pk.prime);
        value *= (1.0 - std::pow(b, beta - 1.0)) / (1.0 - 1.0 / b);
    }
    return value;
}

TailBoundedSum<std::complex<double>> extremal_trace(const ReducedFraction& frac, std::uint64_t t,
                                                    double beta, std::uint64_t n_terms)
{
    require_convergent(beta, "extremal_trace");
    const u64 q = frac.q();
    if (std::gcd(t % q, q) != 1) {
        throw DomainError("extremal_trace: t must be a unit mod q");
    }
    const auto zeta = zeta_partial(beta, n_terms);
    if (q == 1) {
        return {1.0, zeta.terms_used, 0.0};
    }
    std::vector<std::complex<double>> coeff(q);
    for (u64 r = 0; r < q; ++r) {
        const u64 j = numtheory::mulmod(numtheory::mulmod(r, frac.p(), q), t % q, q);
        coeff[r] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                       static_cast<double>(q));
    }
    const u64 used = whole_periods(n_terms, q);
    const auto sum = periodic_dirichlet_sum(coeff, beta, used) / zeta.partial;
    const double tail = static_cast<double>(q) * std::pow(static_cast<double>(used), -beta) +
                        std::abs(sum) * zeta.tail_bound;
    return {sum, used, tail};
}

TailBoundedSum<std::complex<double>> dirichlet_oracle(const ReducedFraction& frac, double beta,
                                                      std::uint64_t n_terms)
{
    require_convergent(beta, "dirichlet_oracle");
    const u64 q = frac.q();
    const auto zeta = zeta_partial(beta, n_terms);
    if (q == 1) {
        return {zeta.partial / zeta.partial, zeta.terms_used, 0.0};
    }
    // coeff[r] = average over units t of exp(2 pi i r p t / q)
    std::vector<std::complex<double>> coeff(q, {0.0, 0.0});
    u64 units = 0;
    for (u64 t = 1; t < q; ++t) {
        if (std::gcd(t, q) != 1) {
            continue;
        }
        ++units;
        for (u64 r = 0; r < q; ++r) {
            const u64 j = numtheory::mulmod(numtheory::mulmod(r, frac.p(), q), t, q);
            coeff[r] += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                            static_cast<double>(q));
        }
    }
    for (auto& c : coeff) {
        c /= static_cast<double>(units);
    }
    const u64 used = whole_periods(n_terms, q);
    const auto sum = periodic_dirichlet_sum(coeff, beta, used) / zeta.partial;
    const double tail = static_cast<double>(q) * std::pow(static_cast<double>(used), -beta) +
                        std::abs(sum) * zeta.tail_bound;
    return {sum, used, tail};
}

double lowtemp_limit(std::uint64_t q)
{
    const auto f = numtheory::factorize(q);
    return static_cast<double>(numtheory::moebius(f)) / static_cast<double>(numtheory::totient(f));
}

CriticalSlope critical_slope(std::uint64_t q)
{
    if (q < 2) {
        throw DomainError("critical_slope: q must be >= 2");
    }
    const auto f = numtheory::factorize(q);
    const double lambda = numtheory::mangoldt(f);
    const double exact = f.is_prime_power() ? lambda / static_cast<double>(numtheory::totient(f)) : 0.0;
    return {exact, lambda / static_cast<double>(q)};
}

double critical_slope_richardson(std::uint64_t q, double eps, int levels)
{
    if (q < 2) {
        throw DomainError("critical_slope_richardson: q must be >= 2");
    }
    if (!(eps > 0.0 && eps < 1.0) || levels < 1) {
        throw DomainError("critical_slope_richardson: need 0 < eps < 1 and levels >= 1");
    }
    const ReducedFraction frac(1, q);
    std::vector<std::vector<double>> table(static_cast<std::size_t>(levels));
    double h = eps;
    for (int i = 0; i < levels; ++i, h *= 0.5) {
        auto& row = table[static_cast<std::size_t>(i)];
        row.push_back(kms_expectation(frac, 1.0 - h) / h);
        for (int j = 1; j <= i; ++j) {
            const double factor = std::ldexp(1.0, j) - 1.0;
            const double prev = table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            row.push_back(row.back() + (row.back() - prev) / factor);
        }
    }
    return table.back().back();
}

std::vector<ThermalSample> thermal_surface(std::uint64_t q_max, std::span<const double> betas)
{
    if (q_max < 1 || betas.empty()) {
        throw DomainError("thermal_surface: need q_max >= 1 and a nonempty beta grid");
    }
    for (double b : betas) {
        if (!(b >= 0.0) || !std::isfinite(b)) {
            throw DomainError("thermal_surface: beta values must be finite and >= 0");
        }
    }
    std::vector<ThermalSample> out;
    out.reserve(q_max * betas.size());
    for (u64 q = 1; q <= q_max; ++q) {
        const u64 p = q == 1 ? 0 : 1;
        const ReducedFraction frac(p, q);
        for (double beta : betas) {
            out.push_back({q, p, beta, kms_expectation(frac, beta)});
        }
    }
    return out;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t steps)
{
    if (steps == 0) {
        throw DomainError("uniform_grid: steps must be >= 1");
    }
    if (steps == 1) {
        return {lo};
    }
    std::vector<double> grid(steps);
    const double denom = static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / denom;
    }
    return grid;
}

} // namespace qphase::bostconnes
