#pragma once

#include <cmath>
#include <cstdint>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace musecog {

// Thrown for invalid configuration (bad flag/config-file values, shape
// mismatches caught before any work starts). CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for malformed or missing input data (CSV parse failures, label
// range violations, short recordings). CLI maps this to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

// Level comes from MUSECOG_LOG={error|info|debug}; defaults to info.
LogLevel log_level();

void log_error(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

namespace detail {
inline void str_append(std::ostringstream&) {}
template <typename T, typename... Rest>
void str_append(std::ostringstream& os, const T& v, const Rest&... rest) {
  if constexpr (std::is_same_v<T, double> || std::is_same_v<T, float>) {
    os << format_double(static_cast<double>(v));
  } else {
    os << v;
  }
  str_append(os, rest...);
}
}  // namespace detail

template <typename... Args>
std::string str(const Args&... args) {
  std::ostringstream os;
  detail::str_append(os, args...);
  return os.str();
}

inline bool all_finite(const double* v, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(v[i])) return false;
  }
  return true;
}

inline bool all_finite(const std::vector<double>& v) {
  return all_finite(v.data(), v.size());
}

}  // namespace musecog
