#ifndef QPHASE_PHASELOCK_HPP
#define QPHASE_PHASELOCK_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qphase/spectral.hpp"

namespace qphase::phaselock {

/// dPhi/dt + K sin Phi = delta_omega
struct AdlerParams {
    double K;
    double delta_omega;
    double phi0 = 0.0;
};

/// Phi_{n+1} = Phi_n + 2 pi Omega - c sin Phi_n
struct CircleMapParams {
    double Omega;
    double c;
    double phi0 = 0.0;
    std::uint64_t n_iter = 10'000;
};

/// Coprime p/q, q >= 1, used to label locked steps (1/1 allowed).
struct LockRatio {
    std::int64_t p;
    std::int64_t q;

    double value() const noexcept { return static_cast<double>(p) / static_cast<double>(q); }
    friend bool operator==(const LockRatio&, const LockRatio&) = default;
};

struct StaircasePoint {
    double Omega;
    double nu;
    std::optional<LockRatio> locked_to;
};

struct WindingEstimate {
    double nu;
    double uncertainty;   // 1 / n_iter
    bool overlap_regime;  // c >= 1: tongues overlap, the limit need not exist
};

struct AdlerRun {
    spectral::RealSeries phi;  // Phi at t = i dt, i = 0..steps (origin 0)
    double dt;
    double mean_freq;
};

struct ModulatedRun {
    double winding;
    spectral::RealSeries beat;  // (Phi_{n+1} - Phi_n) / 2 pi, n = 1..n_iter
    bool coupling_exceeds_one;  // some c_n >= 1 was applied
};

/// 0 inside |delta_omega| <= K, else sign(dw) sqrt(dw^2 - K^2).
double adler_mean_frequency(const AdlerParams& params);

/// Fixed-step RK4. Requires dt <= 1e-2 / max(K, |dw|, 1) and t_end >= 100 dt.
/// mean_freq is measured after a burn-in of 0.2 t_end.
AdlerRun adler_integrate(const AdlerParams& params, double t_end, double dt);

/// Closed-form Phi(t) reduced to (-pi, pi]; used as a reference solution.
double adler_exact_phase(const AdlerParams& params, double t);

WindingEstimate winding_number(const CircleMapParams& params);

inline constexpr std::int64_t kDefaultLockDenominator = 8;

/// Smallest-denominator p/q (q <= q_max) within tol of nu, if any.
std::optional<LockRatio> nearest_lock(double nu, double tol, std::int64_t q_max);

/// Winding numbers on a uniform Omega grid; a point is locked to p/q when
/// |nu - p/q| < 2 / n_iter.
std::vector<StaircasePoint> staircase(double c, double Omega_lo, double Omega_hi,
                                      std::size_t n_points, std::uint64_t n_iter,
                                      std::int64_t q_max = kDefaultLockDenominator);

/// Width of the Omega interval locked to frac, edges found by bisection to `tol`.
/// Returns 0 when no locked point turns up in a scan around p/q.
double plateau_width(double c, LockRatio frac, double tol, std::uint64_t n_iter = 10'000);

/// Circle map with coupling c_n = c (1 + kappa (Lambda(n) - 1)), n = 1..n_iter.
ModulatedRun mangoldt_modulated_map(double Omega, double c, double kappa, std::uint64_t n_iter,
                                    double phi0 = 0.0);

} // namespace qphase::phaselock

#endif
