#ifndef QPHASE_BOSTCONNES_HPP
#define QPHASE_BOSTCONNES_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qphase::bostconnes {

/// p/q in lowest terms with 0 <= p < q (p = 0 only for q = 1).
class ReducedFraction {
public:
    ReducedFraction(std::uint64_t p, std::uint64_t q);

    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t q() const noexcept { return q_; }

    friend bool operator==(const ReducedFraction&, const ReducedFraction&) = default;

private:
    std::uint64_t p_;
    std::uint64_t q_;
};

struct ThermalSample {
    std::uint64_t q;
    std::uint64_t p;
    double beta;
    double value;
};

/// Partial sum of a convergent series plus an upper bound on what is left.
template <typename T>
struct TailBoundedSum {
    T partial;
    std::uint64_t terms_used;
    double tail_bound;
};

/// zeta(beta) for beta > 1: sum_{n<=N} n^-beta plus the Euler-Maclaurin
/// correction N^{1-beta}/(beta-1) - N^{-beta}/2. tail_bound = beta N^{-beta-1}.
TailBoundedSum<double> zeta_partial(double beta, std::uint64_t n_terms);

/// KMS_beta expectation of e(p/q):
///   prod_{b^k || q} b^{-k beta} (1 - b^{beta-1}) / (1 - b^{-1}).
/// Evaluated in log space with per-factor sign tracking; exactly 0 at beta = 1
/// for q > 1 and exactly 1 at beta = 0 or q = 1.
double kms_expectation(const ReducedFraction& frac, double beta);

/// The same value written as q^-beta prod_{b | q} (1 - b^{beta-1}) / (1 - b^{-1}),
/// evaluated directly for beta > 1.
double kms_lowtemp_phase(std::uint64_t q, double beta);

/// zeta(beta)^-1 sum_n n^-beta exp(2 pi i n p t / q) for one Galois element t,
/// i.e. the trace of pi_w(e(p/q)) e^{-beta H0} for w: zeta -> zeta^t.
/// Complex in general.
TailBoundedSum<std::complex<double>> extremal_trace(const ReducedFraction& frac, std::uint64_t t,
                                                    double beta, std::uint64_t n_terms);

/// Trace of e(p/q) e^{-beta H0} / zeta(beta), averaged over the Galois
/// orbit {pi_w : w in (Z/qZ)*}. The character coefficients are summed
/// directly from the roots of unity; n_terms is rounded up to whole periods
/// of q. The imaginary part is kept in `partial` for inspection.
TailBoundedSum<std::complex<double>> dirichlet_oracle(const ReducedFraction& frac, double beta,
                                                      std::uint64_t n_terms);

/// beta -> infinity limit: mu(q) / phi(q).
double lowtemp_limit(std::uint64_t q);

struct CriticalSlope {
    double exact;               // lim_{eps->0+} psi_{1-eps}(1/q) / eps
    double mangoldt_over_q;     // Lambda(q) / q, the cruder near-critical approximation
};

/// Lambda(q)/phi(q) for prime powers, 0 when q has two or more distinct primes.
CriticalSlope critical_slope(std::uint64_t q);

/// Finite-difference estimate of the critical slope from kms_expectation
/// alone: g(eps) = psi_{1-eps}(1/q) / eps, Richardson-extrapolated over
/// eps, eps/2, eps/4, ...
double critical_slope_richardson(std::uint64_t q, double eps = 1e-3, int levels = 4);

/// kms_expectation(1/q, beta) for q = 1..q_max and each beta, q outer.
std::vector<ThermalSample> thermal_surface(std::uint64_t q_max, std::span<const double> betas);

/// beta_min + (beta_max - beta_min) i / (steps - 1), i = 0..steps-1.
std::vector<double> uniform_grid(double lo, double hi, std::size_t steps);

} // namespace qphase::bostconnes

#endif
