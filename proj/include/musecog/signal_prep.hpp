#pragma once

#include <vector>

#include "musecog/segment.hpp"

namespace musecog::dsp {

// Second-order IIR section, normalized so a0 == 1.
struct Biquad {
  double b0 = 0, b1 = 0, b2 = 0;
  double a1 = 0, a2 = 0;
};

inline constexpr double kBandpassLowHz = 0.1;
inline constexpr double kBandpassHighHz = 75.0;
inline constexpr double kNotchHz = 60.0;
inline constexpr double kNotchQ = 30.0;

// 4th-order Butterworth bandpass as two cascaded biquads, designed by
// bilinear transform with frequency prewarping. Unity gain at the geometric
// center of the passband, zeros at DC and Nyquist.
std::vector<Biquad> butter_bandpass_sections(double low_hz, double high_hz,
                                             double fs);

// RBJ-style biquad notch with an exact null at center_hz.
Biquad notch_section(double center_hz, double quality, double fs);

// Complex magnitude of a biquad cascade at frequency hz. A forward-backward
// pass has magnitude response equal to the square of this.
double cascade_magnitude(const std::vector<Biquad>& sections, double hz,
                         double fs);

// Zero-phase (forward-backward) application of a biquad cascade with odd
// reflection padding and steady-state initial conditions. Output length
// equals input length. Throws DataError on non-finite input or a signal too
// short for stable filtering.
std::vector<double> filtfilt(const std::vector<Biquad>& sections,
                             const std::vector<double>& x);

// filtfilt through the 4th-order Butterworth bandpass.
std::vector<double> bandpass_filter(const std::vector<double>& x, double low_hz,
                                    double high_hz, double fs = kSampleRate);

// filtfilt through the biquad notch.
std::vector<double> notch_filter(const std::vector<double>& x, double center_hz,
                                 double quality, double fs = kSampleRate);

// Final 2-second window of a 10-second interval: samples [2048, 2560) of each
// channel. Requires exactly 4 channels of exactly 2560 samples.
EegSegment extract_window(const std::vector<std::vector<double>>& interval);

// Per-channel standardization to mean 0 and population std 1. A channel whose
// std falls below 1e-8 (flat channel, e.g. a headband dropout) becomes all
// zeros. Idempotent.
EegSegment normalize_segment(const EegSegment& segment);

// Non-overlapping window means along time: out[c][t'] is the mean of
// segment[c][t'*P .. (t'+1)*P). Requires samples divisible by window.
PooledTarget avg_pool_target(const EegSegment& segment, int window);

}  // namespace musecog::dsp
