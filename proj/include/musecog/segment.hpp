#pragma once

#include <string>
#include <vector>

namespace musecog {

// Sampling and windowing constants for the Muse S recording pipeline:
// 4 channels at 256 Hz, 10-second labeled intervals, 2-second model windows.
inline constexpr int kSampleRate = 256;
inline constexpr int kNumChannels = 4;
inline constexpr int kIntervalSamples = 10 * kSampleRate;  // 2560
inline constexpr int kWindowSamples = 2 * kSampleRate;     // 512
inline constexpr int kNumClasses = 3;

inline constexpr const char* kChannelNames[kNumChannels] = {"TP9", "AF7",
                                                            "AF8", "TP10"};

// One recording: per-channel voltage series in microvolts, all the same
// length, channels in canonical order (TP9, AF7, AF8, TP10).
struct RawRecording {
  std::string subject_id;
  int sample_rate = kSampleRate;
  std::vector<std::string> channel_names;
  std::vector<std::vector<double>> samples;  // [channel][sample]

  size_t length() const { return samples.empty() ? 0 : samples[0].size(); }
};

// Channels-by-time matrix, row-major (channel-major). Production windows are
// 4x512; the model also accepts smaller shapes for diagnostic configs.
struct EegSegment {
  int channels = 0;
  int samples = 0;
  std::vector<double> data;  // channels * samples

  EegSegment() = default;
  EegSegment(int c, int t) : channels(c), samples(t), data(size_t(c) * t, 0.0) {}

  double& at(int c, int t) { return data[size_t(c) * samples + t]; }
  double at(int c, int t) const { return data[size_t(c) * samples + t]; }
  const double* row(int c) const { return data.data() + size_t(c) * samples; }
  double* row(int c) { return data.data() + size_t(c) * samples; }
};

// Window-mean downsampled segment; the reconstruction target.
struct PooledTarget {
  int channels = 0;
  int bins = 0;
  std::vector<double> data;  // channels * bins

  PooledTarget() = default;
  PooledTarget(int c, int b) : channels(c), bins(b), data(size_t(c) * b, 0.0) {}

  double& at(int c, int t) { return data[size_t(c) * bins + t]; }
  double at(int c, int t) const { return data[size_t(c) * bins + t]; }
};

// A model input paired with its 3-class label and provenance.
struct LabeledWindow {
  EegSegment segment;
  int label = 0;  // 0=low, 1=medium, 2=high
  std::string subject_id;
  int interval_index = 0;
};

}  // namespace musecog
