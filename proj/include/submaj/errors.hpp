#pragma once

#include <stdexcept>
#include <string>

namespace submaj {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotHermitian : Error {
  explicit NotHermitian(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct AlphaOutOfRange : Error {
  explicit AlphaOutOfRange(const std::string& msg) : Error(msg) {}
};

struct GammaOutOfRange : Error {
  explicit GammaOutOfRange(const std::string& msg) : Error(msg) {}
};

struct NotCommuting : Error {
  explicit NotCommuting(const std::string& msg) : Error(msg) {}
};

struct NotClassical : Error {
  explicit NotClassical(const std::string& msg) : Error(msg) {}
};

struct NotUnitary : Error {
  explicit NotUnitary(const std::string& msg) : Error(msg) {}
};

struct LabelMismatch : Error {
  explicit LabelMismatch(const std::string& msg) : Error(msg) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

struct MalformedProgram : Error {
  explicit MalformedProgram(const std::string& msg) : Error(msg) {}
};

struct SolverStall : Error {
  explicit SolverStall(const std::string& msg) : Error(msg) {}
};

struct DimensionCap : Error {
  explicit DimensionCap(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace submaj
