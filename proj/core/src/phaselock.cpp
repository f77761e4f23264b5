#include "qphase/phaselock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qphase/error.hpp"
#include "qphase/numtheory.hpp"

namespace qphase::phaselock {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double adler_rhs(const AdlerParams& p, double phi)
{
    return p.delta_omega - p.K * std::sin(phi);
}

void check_adler(const AdlerParams& p)
{
    if (!(p.K >= 0.0) || !std::isfinite(p.K) || !std::isfinite(p.delta_omega) ||
        !std::isfinite(p.phi0)) {
        throw DomainError("AdlerParams: K must be >= 0 and all fields finite");
    }
}

/// Iterates the circle map with coupling coupling(n) at step n = 1..n_iter
/// and returns the final phase; `on_step` sees (n, phi_n, phi_{n+1}).
template <typename Coupling, typename OnStep>
double iterate_circle_map(double Omega, double phi0, std::uint64_t n_iter, Coupling coupling,
                          OnStep on_step)
{
    const double drive = kTwoPi * Omega;
    double phi = phi0;
    for (std::uint64_t n = 1; n <= n_iter; ++n) {
        const double next = phi + drive - coupling(n) * std::sin(phi);
        on_step(n, phi, next);
        phi = next;
    }
    return phi;
}

bool locked_at(double Omega, double c, const LockRatio& frac, std::uint64_t n_iter)
{
    const auto w = winding_number({Omega, c, 0.0, n_iter});
    return std::abs(w.nu - frac.value()) < 2.0 / static_cast<double>(n_iter);
}

/// Moves outward from a locked Omega until unlocked, then bisects the edge.
double find_edge(double inside, double direction, double c, const LockRatio& frac, double tol,
                 std::uint64_t n_iter)
{
    double step = 1e-3;
    double outside = inside + direction * step;
    while (locked_at(outside, c, frac, n_iter)) {
        inside = outside;
        step *= 2.0;
        if (step > 1.0) {
            // the coupling regime guarantees tongue widths below 1
            break;
        }
        outside = inside + direction * step;
    }
    while (std::abs(outside - inside) > tol) {
        const double mid = 0.5 * (inside + outside);
        if (locked_at(mid, c, frac, n_iter)) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    return inside;
}

} // namespace

double adler_mean_frequency(const AdlerParams& params)
{
    check_adler(params);
    const double dw = params.delta_omega;
    if (std::abs(dw) <= params.K) {
        return 0.0;
    }
    return std::copysign(std::sqrt(dw * dw - params.K * params.K), dw);
}

AdlerRun adler_integrate(const AdlerParams& params, double t_end, double dt)
{
    check_adler(params);
    const double max_rate = std::max({params.K, std::abs(params.delta_omega), 1.0});
    if (!(dt > 0.0) || dt > 1e-2 / max_rate) {
        throw DomainError("adler_integrate: dt must lie in (0, 1e-2 / max(K, |dw|, 1)]");
    }
    if (!(t_end >= 100.0 * dt) || !std::isfinite(t_end)) {
        throw DomainError("adler_integrate: t_end must be >= 100 dt");
    }
    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    std::vector<double> phi(steps + 1);
    phi[0] = params.phi0;
    double y = params.phi0;
    for (std::size_t i = 1; i <= steps; ++i) {
        const double k1 = adler_rhs(params, y);
        const double k2 = adler_rhs(params, y + 0.5 * dt * k1);
        const double k3 = adler_rhs(params, y + 0.5 * dt * k2);
        const double k4 = adler_rhs(params, y + dt * k3);
        y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        phi[i] = y;
    }
    const auto burn = static_cast<std::size_t>(std::llround(0.2 * static_cast<double>(steps)));
    const double mean =
        (phi[steps] - phi[burn]) / (static_cast<double>(steps - burn) * dt);
    return {spectral::RealSeries(0, std::move(phi)), dt, mean};
}

double adler_exact_phase(const AdlerParams& params, double t)
{
    check_adler(params);
    const double K = params.K;
    const double dw = params.delta_omega;
    if (K == 0.0) {
        return std::remainder(params.phi0 + dw * t, kTwoPi);
    }
    // u = tan(Phi/2) obeys u' = (dw u^2 - 2 K u + dw) / 2
    const double u0 = std::tan(0.5 * params.phi0);
    double u;
    if (dw == 0.0) {
        u = u0 * std::exp(-K * t);
    } else {
        const double shift = K / dw;
        const double s0 = u0 - shift;
        const double disc = 1.0 - shift * shift;
        double s;
        if (disc > 0.0) {
            const double w = std::sqrt(disc);
            s = w * std::tan(0.5 * dw * w * t + std::atan(s0 / w));
        } else if (disc < 0.0) {
            const double w = std::sqrt(-disc);
            const double tau = 0.5 * dw * w * t;
            if (std::abs(s0) < w) {
                s = -w * std::tanh(tau + std::atanh(-s0 / w));
            } else if (std::abs(s0) > w) {
                s = -w / std::tanh(tau + std::atanh(-w / s0));
            } else {
                s = s0;
            }
        } else {
            s = s0 / (1.0 - 0.5 * dw * s0 * t);
        }
        u = s + shift;
    }
    return 2.0 * std::atan(u);
}

WindingEstimate winding_number(const CircleMapParams& params)
{
    if (params.n_iter == 0 || !std::isfinite(params.Omega) || !std::isfinite(params.c)) {
        throw DomainError("winding_number: need finite parameters and n_iter >= 1");
    }
    const double c = params.c;
    const double last = iterate_circle_map(
        params.Omega, params.phi0, params.n_iter, [c](std::uint64_t) { return c; },
        [](std::uint64_t, double, double) {});
    const double n = static_cast<double>(params.n_iter);
    return {(last - params.phi0) / (kTwoPi * n), 1.0 / n, c >= 1.0};
}

std::optional<LockRatio> nearest_lock(double nu, double tol, std::int64_t q_max)
{
    for (std::int64_t q = 1; q <= q_max; ++q) {
        const auto p = static_cast<std::int64_t>(std::llround(nu * static_cast<double>(q)));
        if (std::gcd(p, q) != 1 && !(p == 0 && q == 1)) {
            continue;
        }
        const LockRatio r{p, q};
        if (std::abs(nu - r.value()) < tol) {
            return r;
        }
    }
    return std::nullopt;
}

std::vector<StaircasePoint> staircase(double c, double Omega_lo, double Omega_hi,
                                      std::size_t n_points, std::uint64_t n_iter,
                                      std::int64_t q_max)
{
    if (!(c < 1.0) || c < 0.0) {
        throw DomainError("staircase: coupling must satisfy 0 <= c < 1");
    }
    if (n_points < 2 || !(Omega_lo < Omega_hi) || n_iter == 0) {
        throw DomainError("staircase: need n_points >= 2, Omega_lo < Omega_hi, n_iter >= 1");
    }
    const double tol = 2.0 / static_cast<double>(n_iter);
    std::vector<StaircasePoint> out(n_points);
    const double span = Omega_hi - Omega_lo;
    for (std::size_t i = 0; i < n_points; ++i) {
        const double Omega =
            Omega_lo + span * static_cast<double>(i) / static_cast<double>(n_points - 1);
        const double nu = winding_number({Omega, c, 0.0, n_iter}).nu;
        out[i] = {Omega, nu, c == 0.0 ? std::nullopt : nearest_lock(nu, tol, q_max)};
    }
    return out;
}

double plateau_width(double c, LockRatio frac, double tol, std::uint64_t n_iter)
{
    if (!(c < 1.0) || c < 0.0) {
        throw DomainError("plateau_width: coupling must satisfy 0 <= c < 1");
    }
    if (frac.q < 1 || std::gcd(frac.p, frac.q) != 1 || !(tol > 0.0)) {
        throw DomainError("plateau_width: need a reduced fraction and tol > 0");
    }
    if (c == 0.0) {
        // rigid rotation: nu = Omega, no interval is locked
        return 0.0;
    }
    constexpr int kScan = 50;
    constexpr double kScanStep = 1e-3;
    const double center = frac.value();
    for (int j = 0; j <= kScan; ++j) {
        for (int sign : {1, -1}) {
            const double Omega = center + sign * j * kScanStep;
            if (locked_at(Omega, c, frac, n_iter)) {
                const double hi = find_edge(Omega, +1.0, c, frac, tol, n_iter);
                const double lo = find_edge(Omega, -1.0, c, frac, tol, n_iter);
                return hi - lo;
            }
            if (j == 0) {
                break;
            }
        }
    }
    return 0.0;
}

ModulatedRun mangoldt_modulated_map(double Omega, double c, double kappa, std::uint64_t n_iter,
                                    double phi0)
{
    if (n_iter == 0 || !std::isfinite(Omega) || !std::isfinite(c) || !std::isfinite(kappa)) {
        throw DomainError("mangoldt_modulated_map: need finite parameters and n_iter >= 1");
    }
    std::vector<double> lambda(n_iter + 1, 0.0);
    for (std::uint64_t n = 2; n <= n_iter; ++n) {
        lambda[n] = numtheory::mangoldt(n);
    }
    bool exceeds = false;
    auto coupling = [&](std::uint64_t n) {
        const double cn = c * (1.0 + kappa * (lambda[n] - 1.0));
        exceeds = exceeds || cn >= 1.0;
        return cn;
    };
    std::vector<double> beat(n_iter);
    const double last = iterate_circle_map(Omega, phi0, n_iter, coupling,
                                           [&](std::uint64_t n, double phi, double next) {
                                               beat[n - 1] = (next - phi) / kTwoPi;
                                           });
    const double winding = (last - phi0) / (kTwoPi * static_cast<double>(n_iter));
    return {winding, spectral::RealSeries(1, std::move(beat)), exceeds};
}

} // namespace qphase::phaselock
