#pragma once
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace twistlab {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Exit codes follow the CLI contract: 2 parameter, 3 grid/band-limit, 4 verification.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 1; }
};
struct ParameterError : Error {
  using Error::Error;
  int exit_code() const override { return 2; }
};
struct SingularTimeError : ParameterError {
  using ParameterError::ParameterError;
};
struct GridError : Error {
  using Error::Error;
  int exit_code() const override { return 3; }
};
struct BandLimitError : GridError {
  using GridError::GridError;
};
struct TruncationError : GridError {
  using GridError::GridError;
};
struct VerificationError : Error {
  using Error::Error;
  int exit_code() const override { return 4; }
};
struct DataError : Error {
  using Error::Error;
  int exit_code() const override { return 2; }
};

// Worker count: hardware concurrency capped by TWISTLAB_THREADS.
unsigned thread_count();

// Runs body(i) for i in [0, n). Each index is processed exactly once and
// results must be written to disjoint locations, so output is independent
// of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace twistlab
