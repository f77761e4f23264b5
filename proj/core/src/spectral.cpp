#include "qphase/spectral.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qphase/error.hpp"

namespace qphase::spectral {

namespace {

constexpr std::size_t kMinFitPoints = 8;

struct LineFit {
    double slope;
    double intercept;
    double residual_rms;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y)
{
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw DomainError("least squares: abscissae are all equal");
    }
    LineFit fit{sxy / sxx, 0.0, 0.0};
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

bool is_power_of_two(std::size_t n)
{
    return n != 0 && (n & (n - 1)) == 0;
}

void fft_radix2(std::vector<std::complex<double>>& a)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::size_t half = len / 2;
        // twiddles computed directly, not by recurrence, to keep rounding flat in N
        std::vector<std::complex<double>> w(half);
        for (std::size_t k = 0; k < half; ++k) {
            w[k] = std::polar(1.0, ang * static_cast<double>(k));
        }
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const auto u = a[i + k];
                const auto b = a[i + k + half];
                // plain product: std::complex operator* carries inf/nan recovery we never need here
                const std::complex<double> v{b.real() * w[k].real() - b.imag() * w[k].imag(),
                                             b.real() * w[k].imag() + b.imag() * w[k].real()};
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

/// Bluestein: an arbitrary-length DFT as a power-of-two circular convolution.
std::vector<std::complex<double>> fft_bluestein(std::span<const double> x)
{
    const std::size_t n = x.size();
    std::size_t m = 1;
    while (m < 2 * n - 1) {
        m <<= 1;
    }
    // chirp exp(-i pi k^2 / n) with k^2 reduced mod 2n
    std::vector<std::complex<double>> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto k2 = static_cast<double>((k * k) % (2 * n));
        chirp[k] = std::polar(1.0, -std::numbers::pi * k2 / static_cast<double>(n));
    }
    std::vector<std::complex<double>> a(m);
    std::vector<std::complex<double>> b(m);
    for (std::size_t k = 0; k < n; ++k) {
        a[k] = x[k] * chirp[k];
        b[k] = std::conj(chirp[k]);
        if (k != 0) {
            b[m - k] = b[k];
        }
    }
    fft_radix2(a);
    fft_radix2(b);
    for (std::size_t k = 0; k < m; ++k) {
        a[k] = std::conj(a[k] * b[k]);
    }
    fft_radix2(a);
    const double scale = 1.0 / static_cast<double>(m);
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = std::conj(a[k]) * scale * chirp[k];
    }
    return out;
}

} // namespace

RealSeries::RealSeries(std::int64_t origin, std::vector<double> samples)
    : origin_(origin), samples_(std::move(samples))
{
    if (samples_.empty()) {
        throw DomainError("RealSeries: must be non-empty");
    }
    for (double v : samples_) {
        if (!std::isfinite(v)) {
            throw DomainError("RealSeries: samples must be finite");
        }
    }
}

RealSeries cumulative_sum(const ArithmeticSequence& f, std::uint64_t t_max)
{
    if (t_max < 2) {
        throw DomainError("cumulative_sum: t_max must be >= 2");
    }
    std::vector<double> s(t_max);
    double acc = 0.0;
    for (std::uint64_t t = 1; t <= t_max; ++t) {
        acc += f(t);
        s[t - 1] = acc;
    }
    return RealSeries(1, std::move(s));
}

RealSeries normalized_cumsum(const ArithmeticSequence& f, std::uint64_t t_max, double sigma)
{
    if (!std::isfinite(sigma)) {
        throw DomainError("normalized_cumsum: sigma must be finite");
    }
    auto raw = cumulative_sum(f, t_max);
    std::vector<double> s = raw.samples();
    for (std::uint64_t t = 1; t <= t_max; ++t) {
        s[t - 1] /= std::pow(static_cast<double>(t), sigma);
    }
    return RealSeries(1, std::move(s));
}

double growth_exponent(const RealSeries& cumulative)
{
    const std::size_t n = cumulative.size();
    const std::size_t first = n / 2;
    if (n - first < 2) {
        throw DomainError("growth_exponent: need at least 2 points in the upper half");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = first; i < n; ++i) {
        const auto t = cumulative.index_of(i);
        const double s = cumulative[i];
        if (t <= 0 || s <= 0.0) {
            throw DomainError("growth_exponent: nonpositive value at t = " + std::to_string(t));
        }
        x.push_back(std::log(static_cast<double>(t)));
        y.push_back(std::log(s));
    }
    return least_squares(x, y).slope;
}

std::vector<std::complex<double>> dft(std::span<const double> x)
{
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(x.begin(), x.end());
    if (is_power_of_two(n)) {
        fft_radix2(out);
        return out;
    }
    return fft_bluestein(x);
}

Periodogram periodogram(const RealSeries& series)
{
    const std::size_t n = series.size();
    if (n < 16) {
        throw DomainError("periodogram: series length must be >= 16");
    }
    const auto& s = series.samples();
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(n);
    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) {
        centered[i] = s[i] - mean;
    }
    const auto spectrum = dft(centered);
    Periodogram p;
    const std::size_t half = n / 2;
    p.frequencies.reserve(half);
    p.powers.reserve(half);
    for (std::size_t k = 1; k <= half; ++k) {
        p.frequencies.push_back(static_cast<double>(k) / static_cast<double>(n));
        p.powers.push_back(std::norm(spectrum[k]) / static_cast<double>(n));
    }
    return p;
}

FrequencyBand full_band(const Periodogram& p)
{
    if (p.frequencies.empty()) {
        throw DomainError("full_band: empty periodogram");
    }
    return {p.frequencies.front(), p.frequencies.back()};
}

SlopeFit loglog_slope(const Periodogram& p, FrequencyBand band)
{
    if (!(band.lo < band.hi)) {
        throw DomainError("loglog_slope: band requires f_lo < f_hi");
    }
    std::vector<double> x;
    std::vector<double> y;
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < p.frequencies.size(); ++i) {
        const double f = p.frequencies[i];
        if (f < band.lo || f > band.hi) {
            continue;
        }
        if (!(p.powers[i] > 0.0)) {
            ++dropped;
            continue;
        }
        x.push_back(std::log10(f));
        y.push_back(std::log10(p.powers[i]));
    }
    if (x.size() < kMinFitPoints) {
        throw DomainError("loglog_slope: only " + std::to_string(x.size()) +
                          " usable bins in band, need >= 8");
    }
    const auto fit = least_squares(x, y);
    return {fit.slope, fit.intercept, band, fit.residual_rms, x.size(), dropped};
}

} // namespace qphase::spectral
