#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qphase/bostconnes.hpp"
#include "qphase/cli.hpp"
#include "qphase/error.hpp"
#include "qphase/hilbert.hpp"
#include "qphase/numtheory.hpp"
#include "qphase/phaselock.hpp"

namespace qphase::cli {

namespace {

namespace bc = bostconnes;
namespace hb = hilbert;
namespace nt = numtheory;
namespace pl = phaselock;

constexpr double kPi = std::numbers::pi;

CheckResult at_most(std::string name, double measured, double tol)
{
    return {std::move(name), measured, tol, "<=", measured <= tol};
}

CheckResult at_least(std::string name, double measured, double tol)
{
    return {std::move(name), measured, tol, ">=", measured >= tol};
}

CheckResult exactly(std::string name, double measured, double want)
{
    return {std::move(name), measured, want, "==", measured == want};
}

bool coprime(std::uint64_t a, std::uint64_t q)
{
    return std::gcd(a, q) == 1;
}

void operator_checks(std::vector<CheckResult>& out)
{
    double ortho = 0.0;
    double complete = 0.0;
    for (std::uint64_t q = 1; q <= 32; ++q) {
        std::vector<hb::StateVector> states;
        auto sum = hb::ComplexMatrix::zero({q, hb::BasisOrigin::zero});
        for (std::uint64_t p = 0; p < q; ++p) {
            states.push_back(hb::phase_state(q, p));
            sum = sum + hb::outer(states.back(), states.back());
        }
        for (std::uint64_t i = 0; i < q; ++i) {
            for (std::uint64_t j = 0; j < q; ++j) {
                ortho = std::max(ortho, std::abs(states[i].inner(states[j]) - (i == j ? 1.0 : 0.0)));
            }
        }
        complete = std::max(complete, hb::max_abs_diff(sum, hb::ComplexMatrix::identity({q, hb::BasisOrigin::zero})));
    }
    out.push_back(at_most("phase-state orthonormality residual max (q <= 32)", ortho, 1e-12));
    out.push_back(at_most("phase-state completeness residual max (q <= 32)", complete, 1e-12));

    double eig = 0.0;
    double mult = 0.0;
    double exchange = 0.0;
    for (std::uint64_t q = 2; q <= 32; ++q) {
        for (std::uint64_t a = 1; a < q; ++a) {
            if (!coprime(a, q)) {
                continue;
            }
            const auto mu = hb::shift_mu(q, a);
            const auto r = nt::mult_order(a, q);
            for (std::uint64_t k = 0; k < r; ++k) {
                const auto u = hb::order_eigenstate(q, a, k);
                const auto lambda = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(r));
                eig = std::max(eig, ((mu * u).amplitudes() - lambda * u.amplitudes()).norm());
            }
            for (std::uint64_t b = 1; b < q; ++b) {
                if (coprime(b, q)) {
                    mult = std::max(mult, hb::max_abs_diff(mu * hb::shift_mu(q, b), hb::shift_mu(q, a * b % q)));
                }
            }
            const auto inv = nt::powmod(a, r - 1, q);
            for (std::uint64_t p = 0; p < q; ++p) {
                const auto lhs = mu * hb::clock_e(q, static_cast<std::int64_t>(p)) * mu.adjoint();
                const auto rhs = hb::clock_e(q, static_cast<std::int64_t>(p * inv % q));
                exchange = std::max(exchange, hb::max_abs_diff(lhs, rhs));
            }
        }
    }
    out.push_back(at_most("u_k eigenresidual max (q <= 32)", eig, 1e-12));
    out.push_back(exactly("mu_a mu_b - mu_ab max entry (q <= 32)", mult, 0.0));
    out.push_back(exactly("clock-shift exchange max entry (q <= 32)", exchange, 0.0));

    double sigma = 0.0;
    for (std::uint64_t a : {2u, 3u, 5u, 7u}) {
        const auto m = hb::multiplicative_shift(a, 64);
        for (double t : {-0.4, 1.3, 7.0}) {
            const auto rhs = std::polar(1.0, t * std::log(static_cast<double>(a))) * m;
            sigma = std::max(sigma, hb::max_abs_diff(hb::evolve_sigma_t(m, t), rhs));
        }
    }
    out.push_back(at_most("sigma_t(M_a) - a^{it} M_a max entry (dim 64)", sigma, 1e-12));

    double commute = 0.0;
    const hb::Basis basis{48, hb::BasisOrigin::one};
    for (std::uint64_t q = 1; q <= 12; ++q) {
        for (std::uint64_t t = 1; t <= q; ++t) {
            if (!coprime(t, q)) {
                continue;
            }
            for (std::int64_t p = 0; p < static_cast<std::int64_t>(q); ++p) {
                for (double time : {0.5, 2.25}) {
                    const auto lhs = hb::apply_galois(hb::evolve_sigma_t(hb::clock_e(q, p, basis), time), q, t);
                    const auto rhs = hb::evolve_sigma_t(hb::galois_twist(q, t, p, basis), time);
                    commute = std::max(commute, hb::max_abs_diff(lhs, rhs));
                }
            }
        }
    }
    out.push_back(at_most("Galois / sigma_t commutation max entry (q <= 12)", commute, 1e-12));
}

double psi(std::uint64_t q, double beta)
{
    return bc::kms_expectation(bc::ReducedFraction(q == 1 ? 0 : 1, q), beta);
}

void kms_checks(std::vector<CheckResult>& out)
{
    double oracle = 0.0;
    for (std::uint64_t q = 2; q <= 12; ++q) {
        for (std::uint64_t p = 1; p < q; ++p) {
            if (!coprime(p, q)) {
                continue;
            }
            const bc::ReducedFraction f(p, q);
            for (double beta : {1.5, 2.0, 3.0}) {
                const auto r = bc::dirichlet_oracle(f, beta, 1'000'000);
                oracle = std::max(oracle, std::abs(r.partial - std::complex<double>(bc::kms_expectation(f, beta), 0.0)));
            }
        }
    }
    out.push_back(at_most("oracle vs closed form max |diff| (q <= 12, N = 1e6)", oracle, 1e-3));

    double beta0 = 0.0;
    double beta1 = 0.0;
    double low = 0.0;
    double slope = 0.0;
    for (std::uint64_t q = 1; q <= 40; ++q) {
        beta0 = std::max(beta0, std::abs(psi(q, 0.0) - 1.0));
        if (q >= 2) {
            beta1 = std::max(beta1, std::abs(psi(q, 1.0)));
            const double exact = bc::critical_slope(q).exact;
            const double fd = bc::critical_slope_richardson(q);
            slope = std::max(slope, exact == 0.0 ? std::abs(fd) : std::abs(fd - exact) / exact);
        }
        low = std::max(low, std::abs(psi(q, 50.0) - bc::lowtemp_limit(q)));
    }
    out.push_back(exactly("psi(q, 0) - 1 max (q <= 40)", beta0, 0.0));
    out.push_back(exactly("psi(q, 1) max (2 <= q <= 40)", beta1, 0.0));
    out.push_back(at_most("psi(q, 50) - mu/phi max (q <= 40)", low, 1e-10));
    out.push_back(at_most("critical slope relative error max (q <= 40)", slope, 1e-6));

    out.push_back(at_most("zeta(2) error (N = 1e4)", std::abs(bc::zeta_partial(2.0, 10'000).partial - kPi * kPi / 6.0), 1e-8));
    out.push_back(at_most("zeta(4) error (N = 1e3)", std::abs(bc::zeta_partial(4.0, 1'000).partial - std::pow(kPi, 4) / 90.0), 1e-8));
}

void dynamics_checks(std::vector<CheckResult>& out)
{
    for (double ratio : {1.25, 1.5, 2.0, 4.0}) {
        const pl::AdlerParams p{1.0, ratio};
        const auto run = pl::adler_integrate(p, 2000.0, 1e-2 / std::max(1.0, ratio));
        const double err = std::abs(run.mean_freq / pl::adler_mean_frequency(p) - 1.0);
        out.push_back(at_most("Adler relative error, dw/K = " + std::to_string(ratio).substr(0, 4), err, 0.01));
    }
    for (double ratio : {0.0, 0.5, 0.9}) {
        const auto run = pl::adler_integrate({1.0, ratio, 2.0}, 500.0, 0.005);
        out.push_back(at_most("Adler locked |mean freq|, dw/K = " + std::to_string(ratio).substr(0, 3),
                              std::abs(run.mean_freq), 1e-3));
    }

    double rigid = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double omega = i / 100.0;
        rigid = std::max(rigid, std::abs(pl::winding_number({omega, 0.0}).nu - omega));
    }
    out.push_back(at_most("circle map |nu - Omega| max at c = 0", rigid, 1e-12));

    const auto pts = pl::staircase(0.8, 0.0, 1.0, 1001, 10'000);
    double violations = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        violations += pts[i].nu < pts[i - 1].nu ? 1.0 : 0.0;
    }
    out.push_back(exactly("staircase monotonicity violations (c = 0.8)", violations, 0.0));

    const double w2 = pl::plateau_width(0.2, {1, 2}, 1e-5);
    const double w5 = pl::plateau_width(0.5, {1, 2}, 1e-5);
    const double w9 = pl::plateau_width(0.9, {1, 2}, 1e-5);
    CheckResult grow{"1/2 plateau width increments min over c = 0.2, 0.5, 0.9", std::min(w5 - w2, w9 - w5), 0.0, ">", false};
    grow.pass = grow.measured > 0.0 && w2 > 0.0;
    out.push_back(grow);
    out.push_back(at_least("1/2 plateau width at c = 0.9", w9, w5));
}

} // namespace

bool VerifyReport::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifyReport verify(std::string_view suite)
{
    VerifyReport report{std::string(suite), {}};
    const bool all = suite == "all";
    if (!all && suite != "operators" && suite != "kms" && suite != "dynamics") {
        throw DomainError("verify: unknown suite '" + std::string(suite) +
                          "' (expected operators, kms, dynamics or all)");
    }
    if (all || suite == "operators") {
        operator_checks(report.checks);
    }
    if (all || suite == "kms") {
        kms_checks(report.checks);
    }
    if (all || suite == "dynamics") {
        dynamics_checks(report.checks);
    }
    return report;
}

} // namespace qphase::cli
