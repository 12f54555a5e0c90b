#pragma once

#include <vector>

#include "cavity/core.hpp"

namespace cavity {

/// One-sided amplitude spectrum of a real series on a uniform grid.
/// Angular frequencies; the series is mean-subtracted and Hann-windowed,
/// amplitudes rescaled so a pure cosine of amplitude A shows a peak of
/// height ~A.
struct PowerSpectrum {
    std::vector<double> frequency;
    std::vector<double> amplitude;
    double bin_width = 0.0;
};

PowerSpectrum power_spectrum(const std::vector<double>& times,
                             const std::vector<double>& values);

struct SpectrumPeak {
    double frequency = 0.0; // quadratically interpolated
    double amplitude = 0.0;
    std::size_t bin = 0;
};

/// Interior local maxima above rel_threshold * (largest amplitude beyond
/// min_bin). The first min_bin bins are excluded: components slower than
/// ~4 periods per window are trend, not oscillation.
std::vector<SpectrumPeak> find_spectrum_peaks(const PowerSpectrum& spectrum,
                                              double rel_threshold = 0.05,
                                              std::size_t min_bin = 4);

/// Slowest oscillation frequency expected from the dressed-state
/// splittings; 0 if nothing oscillates. Used for window-length checks.
double slowest_expected_component(const SystemParams& params);

/// Throws WindowTooShort unless the grid spans >= 4 periods of
/// slowest_frequency (no-op when slowest_frequency == 0).
void require_window(const std::vector<double>& times, double slowest_frequency);

} // namespace cavity
