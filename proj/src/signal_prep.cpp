#include "musecog/signal_prep.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "musecog/common.hpp"

namespace musecog::dsp {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Cplx = std::complex<double>;

// One stable-direction pass of a single section in transposed direct form II,
// with the state preseeded to the steady-state response for a constant input
// equal to the first sample. gain_in is the cascade DC gain accumulated from
// upstream sections so the seed matches what actually arrives.
void run_section(const Biquad& s, std::vector<double>& x) {
  const double denom = 1.0 + s.a1 + s.a2;
  const double dc_gain = denom != 0.0 ? (s.b0 + s.b1 + s.b2) / denom : 0.0;
  const double u = x.empty() ? 0.0 : x[0];
  const double y0 = dc_gain * u;
  double z2 = s.b2 * u - s.a2 * y0;
  double z1 = s.b1 * u - s.a1 * y0 + z2;
  for (double& v : x) {
    const double in = v;
    const double out = s.b0 * in + z1;
    z1 = s.b1 * in - s.a1 * out + z2;
    z2 = s.b2 * in - s.a2 * out;
    v = out;
  }
}

void run_cascade(const std::vector<Biquad>& sections, std::vector<double>& x) {
  for (const Biquad& s : sections) run_section(s, x);
}

}  // namespace

std::vector<Biquad> butter_bandpass_sections(double low_hz, double high_hz,
                                             double fs) {
  if (!(low_hz > 0.0 && low_hz < high_hz && high_hz < fs / 2.0)) {
    throw ConfigError(str("bandpass edges must satisfy 0 < low < high < fs/2; "
                          "got low=", low_hz, " high=", high_hz, " fs=", fs));
  }
  // Prewarped analog edge frequencies (bilinear transform convention).
  const double wl = std::tan(kPi * low_hz / fs);
  const double wh = std::tan(kPi * high_hz / fs);
  const double w0sq = wl * wh;
  const double bw = wh - wl;

  // 2nd-order Butterworth lowpass prototype pole in the upper half-plane;
  // the lowpass-to-bandpass transform doubles the order to 4.
  const Cplx proto(-std::sqrt(0.5), std::sqrt(0.5));

  // Roots of s^2 - bw*p*s + w0^2 = 0 for the prototype pole p.
  const Cplx bp = bw * proto;
  const Cplx disc = std::sqrt(bp * bp - 4.0 * w0sq);
  const Cplx s_poles[2] = {(bp + disc) / 2.0, (bp - disc) / 2.0};

  std::vector<Biquad> sections(2);
  for (int i = 0; i < 2; ++i) {
    // Bilinear map; the conjugate pole pairs with it to give real coefficients.
    const Cplx zp = (1.0 + s_poles[i]) / (1.0 - s_poles[i]);
    Biquad& s = sections[i];
    s.b0 = 1.0;
    s.b1 = 0.0;
    s.b2 = -1.0;  // zeros at z = +1 and z = -1, one pair per section
    s.a1 = -2.0 * zp.real();
    s.a2 = std::norm(zp);
  }

  // Normalize to unity gain at the geometric center of the passband.
  const double center_hz = fs / kPi * std::atan(std::sqrt(w0sq));
  const double mag = cascade_magnitude(sections, center_hz, fs);
  sections[0].b0 /= mag;
  sections[0].b1 /= mag;
  sections[0].b2 /= mag;
  return sections;
}

Biquad notch_section(double center_hz, double quality, double fs) {
  if (!(center_hz > 0.0 && center_hz < fs / 2.0)) {
    throw ConfigError(str("notch center must satisfy 0 < center < fs/2; got ",
                          center_hz, " at fs=", fs));
  }
  if (!(quality > 0.0)) {
    throw ConfigError(str("notch quality must be positive; got ", quality));
  }
  const double w0 = 2.0 * kPi * center_hz / fs;
  const double alpha = std::sin(w0) / (2.0 * quality);
  const double a0 = 1.0 + alpha;
  Biquad s;
  s.b0 = 1.0 / a0;
  s.b1 = -2.0 * std::cos(w0) / a0;
  s.b2 = 1.0 / a0;
  s.a1 = -2.0 * std::cos(w0) / a0;
  s.a2 = (1.0 - alpha) / a0;
  return s;
}

double cascade_magnitude(const std::vector<Biquad>& sections, double hz,
                         double fs) {
  const double w = 2.0 * kPi * hz / fs;
  const Cplx z1 = std::polar(1.0, -w);
  const Cplx z2 = z1 * z1;
  Cplx h(1.0, 0.0);
  for (const Biquad& s : sections) {
    h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  }
  return std::abs(h);
}

std::vector<double> filtfilt(const std::vector<Biquad>& sections,
                             const std::vector<double>& x) {
  const int order = 2 * static_cast<int>(sections.size());
  const size_t pad = 3 * (static_cast<size_t>(order) + 1);
  const size_t min_len = std::max<size_t>(4 * static_cast<size_t>(order), pad + 1);
  if (x.size() < min_len) {
    throw DataError(str("signal too short for stable filtering: have ",
                        x.size(), " samples, need at least ", min_len,
                        " for a filter of order ", order));
  }
  if (!all_finite(x)) {
    throw DataError("non-finite value in filter input");
  }

  const size_t n = x.size();
  std::vector<double> ext(n + 2 * pad);
  for (size_t i = 0; i < pad; ++i) {
    ext[i] = 2.0 * x[0] - x[pad - i];
    ext[pad + n + i] = 2.0 * x[n - 1] - x[n - 2 - i];
  }
  std::copy(x.begin(), x.end(), ext.begin() + pad);

  run_cascade(sections, ext);
  std::reverse(ext.begin(), ext.end());
  run_cascade(sections, ext);
  std::reverse(ext.begin(), ext.end());

  return std::vector<double>(ext.begin() + pad, ext.begin() + pad + n);
}

std::vector<double> bandpass_filter(const std::vector<double>& x, double low_hz,
                                    double high_hz, double fs) {
  return filtfilt(butter_bandpass_sections(low_hz, high_hz, fs), x);
}

std::vector<double> notch_filter(const std::vector<double>& x, double center_hz,
                                 double quality, double fs) {
  return filtfilt({notch_section(center_hz, quality, fs)}, x);
}

EegSegment extract_window(const std::vector<std::vector<double>>& interval) {
  if (interval.size() != kNumChannels) {
    throw DataError(str("interval must have ", kNumChannels, " channels, got ",
                        interval.size()));
  }
  for (size_t c = 0; c < interval.size(); ++c) {
    if (interval[c].size() != kIntervalSamples) {
      throw DataError(str("interval channel ", c, " has ", interval[c].size(),
                          " samples, expected ", kIntervalSamples));
    }
  }
  EegSegment out(kNumChannels, kWindowSamples);
  const int start = kIntervalSamples - kWindowSamples;
  for (int c = 0; c < kNumChannels; ++c) {
    std::copy(interval[c].begin() + start, interval[c].end(), out.row(c));
  }
  return out;
}

EegSegment normalize_segment(const EegSegment& segment) {
  if (!all_finite(segment.data)) {
    throw DataError("non-finite value in segment to normalize");
  }
  EegSegment out(segment.channels, segment.samples);
  const int t_len = segment.samples;
  for (int c = 0; c < segment.channels; ++c) {
    const double* in = segment.row(c);
    double mean = 0.0;
    for (int t = 0; t < t_len; ++t) mean += in[t];
    mean /= t_len;
    double var = 0.0;
    for (int t = 0; t < t_len; ++t) {
      const double d = in[t] - mean;
      var += d * d;
    }
    var /= t_len;
    const double sd = std::sqrt(var);
    double* dst = out.row(c);
    if (sd < 1e-8) {
      // Flat channel (headband dropout): zeros rather than an error.
      std::fill(dst, dst + t_len, 0.0);
    } else {
      for (int t = 0; t < t_len; ++t) dst[t] = (in[t] - mean) / sd;
    }
  }
  return out;
}

PooledTarget avg_pool_target(const EegSegment& segment, int window) {
  if (window <= 0 || segment.samples % window != 0) {
    throw ConfigError(str("pool window ", window,
                          " must evenly divide segment length ",
                          segment.samples));
  }
  const int bins = segment.samples / window;
  PooledTarget out(segment.channels, bins);
  for (int c = 0; c < segment.channels; ++c) {
    const double* in = segment.row(c);
    for (int b = 0; b < bins; ++b) {
      double sum = 0.0;
      for (int i = 0; i < window; ++i) sum += in[b * window + i];
      out.at(c, b) = sum / window;
    }
  }
  return out;
}

}  // namespace musecog::dsp
