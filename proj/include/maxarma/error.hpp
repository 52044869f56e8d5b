#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace maxarma {

// Broad failure classes; the C API maps each onto a status code and the CLI
// onto an exit code.
enum class ErrorKind {
  InvalidArgument,
  Dimension,
  Infeasible,
  InsufficientData,
  Parse,
  Io,
  Optimization,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(ErrorKind::Dimension, what) {}
};

// Parameters outside the stationary / identifiable region.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what) : Error(ErrorKind::Infeasible, what) {}
};

// Too few threshold exceedances (or extreme pairs) for an estimator.
class InsufficientDataError : public Error {
 public:
  InsufficientDataError(const std::string& what, std::size_t count)
      : Error(ErrorKind::InsufficientData, what), count_(count) {}
  [[nodiscard]] std::size_t count() const noexcept { return count_; }

 private:
  std::size_t count_;
};

// An error raised inside one stage of a multi-stage run ("marginal",
// "estimation", "optimization"); the message is prefixed with the stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.kind(), stage + ": " + cause.what()), stage_(std::move(stage)) {}
  [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

inline Error invalid_argument(const std::string& what) {
  return Error(ErrorKind::InvalidArgument, what);
}

}  // namespace maxarma
