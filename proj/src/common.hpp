#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qvol {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I1{0.0, 1.0};

// numeric values match the qvol_status codes of the C API
enum class Status : int {
  ok = 0,
  domain = 1,
  branch = 2,
  tolerance = 3,
  continuation = 4,
  degenerate = 5,
  precision = 6,
  consistency = 7,
  insufficient_data = 8,
  internal = 9,
  invalid_argument = 10,
  non_finite = 11,
  exceptional = 12
};

class Error : public std::runtime_error {
 public:
  Error(Status s, const std::string& msg) : std::runtime_error(msg), status_(s) {}
  Status status() const noexcept { return status_; }

 private:
  Status status_;
};

[[noreturn]] inline void fail(Status s, const std::string& msg) { throw Error(s, msg); }

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(cplx z, const char* where) {
  if (!finite(z)) fail(Status::non_finite, std::string(where) + ": non-finite argument");
}

}  // namespace qvol
