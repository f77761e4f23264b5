#ifndef QPHASE_SPECTRAL_HPP
#define QPHASE_SPECTRAL_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qphase::spectral {

/// Finite real sequence; samples[i] sits at index origin + i.
class RealSeries {
public:
    RealSeries(std::int64_t origin, std::vector<double> samples);

    std::int64_t origin() const noexcept { return origin_; }
    const std::vector<double>& samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double operator[](std::size_t i) const { return samples_[i]; }
    std::int64_t index_of(std::size_t i) const noexcept
    {
        return origin_ + static_cast<std::int64_t>(i);
    }

private:
    std::int64_t origin_;
    std::vector<double> samples_;
};

/// One-sided power spectrum, DC excluded. Frequencies in cycles per sample.
struct Periodogram {
    std::vector<double> frequencies;
    std::vector<double> powers;
};

struct FrequencyBand {
    double lo;
    double hi;
};

struct SlopeFit {
    double exponent;   // fitted log10-log10 slope, i.e. -gamma for 1/f^gamma
    double intercept;  // log10 power at f = 1
    FrequencyBand band;
    double residual_rms;
    std::size_t n_points;
    std::size_t dropped_zero_bins;
};

using ArithmeticSequence = std::function<double(std::uint64_t)>;

/// Raw running sums S(t) = f(1) + ... + f(t), t = 1..t_max.
RealSeries cumulative_sum(const ArithmeticSequence& f, std::uint64_t t_max);

/// S(t) / t^sigma for t = 1..t_max.
RealSeries normalized_cumsum(const ArithmeticSequence& f, std::uint64_t t_max, double sigma);

/// Least-squares slope of ln S(t) against ln t over the upper half of the series.
double growth_exponent(const RealSeries& cumulative);

/// Discrete Fourier transform X_k = sum_n x_n exp(-2 pi i k n / N).
/// Radix-2 when N is a power of two, direct summation otherwise.
std::vector<std::complex<double>> dft(std::span<const double> x);

/// Mean-removed one-sided periodogram: power_k = |X_k|^2 / N at f = k/N,
/// k = 1..floor(N/2).
Periodogram periodogram(const RealSeries& series);

/// Full one-sided band of a periodogram (first to last frequency).
FrequencyBand full_band(const Periodogram& p);

/// OLS of log10(power) on log10(frequency) over bins inside `band`.
/// Zero-power bins are dropped and counted; fewer than 8 usable bins is an error.
SlopeFit loglog_slope(const Periodogram& p, FrequencyBand band);

} // namespace qphase::spectral

#endif
