#include "cavity/beats.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <unsupported/Eigen/FFT>

namespace cavity {

PowerSpectrum power_spectrum(const std::vector<double>& times,
                             const std::vector<double>& values) {
    const std::size_t n = times.size();
    if (n < 8 || values.size() != n)
        fail(ErrorCode::InvalidScenario, "series", "spectrum needs >= 8 samples");
    const double dt = (times.back() - times.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * std::max(dt, 1.0))
            fail(ErrorCode::InvalidScenario, "times", "spectrum needs a uniform grid");

    const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                        static_cast<double>(n);
    std::vector<double> windowed(n);
    double window_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w =
            0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) /
                                  static_cast<double>(n - 1)));
        windowed[i] = (values[i] - mean) * w;
        window_sum += w;
    }

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> transform;
    fft.fwd(transform, windowed);

    PowerSpectrum spec;
    spec.bin_width = 2.0 * M_PI / (dt * static_cast<double>(n));
    const std::size_t half = n / 2 + 1;
    spec.frequency.resize(half);
    spec.amplitude.resize(half);
    for (std::size_t k = 0; k < half; ++k) {
        spec.frequency[k] = spec.bin_width * static_cast<double>(k);
        spec.amplitude[k] = 2.0 * std::abs(transform[k]) / window_sum;
    }
    return spec;
}

std::vector<SpectrumPeak> find_spectrum_peaks(const PowerSpectrum& spectrum,
                                              double rel_threshold,
                                              std::size_t min_bin) {
    std::vector<SpectrumPeak> peaks;
    const auto& amp = spectrum.amplitude;
    if (amp.size() < min_bin + 2) return peaks;

    double top = 0.0;
    for (std::size_t k = min_bin; k < amp.size(); ++k) top = std::max(top, amp[k]);
    if (top <= 0.0) return peaks;
    const double floor = rel_threshold * top;

    for (std::size_t k = std::max<std::size_t>(min_bin, 1); k + 1 < amp.size(); ++k) {
        if (amp[k] < floor) continue;
        if (!(amp[k] > amp[k - 1] && amp[k] >= amp[k + 1])) continue;
        const double a = amp[k - 1], b = amp[k], c = amp[k + 1];
        const double denom = a - 2.0 * b + c;
        const double shift = (denom == 0.0) ? 0.0 : 0.5 * (a - c) / denom;
        SpectrumPeak peak;
        peak.bin = k;
        peak.frequency = (static_cast<double>(k) + shift) * spectrum.bin_width;
        peak.amplitude = b - 0.25 * (a - c) * shift;
        peaks.push_back(peak);
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const SpectrumPeak& lhs, const SpectrumPeak& rhs) {
                  return lhs.amplitude > rhs.amplitude;
              });
    return peaks;
}

double slowest_expected_component(const SystemParams& params) {
    const double rabi = params.rabi;
    const double delta = std::max(std::abs(params.delta_1), std::abs(params.delta_2));
    double slowest = 0.0;
    for (double f : {2.0 * rabi, std::abs(rabi - 0.5 * delta), rabi + 0.5 * delta, delta})
        if (f > 0.0 && (slowest == 0.0 || f < slowest)) slowest = f;
    return slowest;
}

void require_window(const std::vector<double>& times, double slowest_frequency) {
    if (slowest_frequency <= 0.0 || times.size() < 2) return;
    const double span = times.back() - times.front();
    const double needed = 4.0 * 2.0 * M_PI / slowest_frequency;
    if (span < needed)
        fail(ErrorCode::WindowTooShort, "tmax",
             "grid spans less than 4 periods of the slowest expected component");
}

} // namespace cavity
