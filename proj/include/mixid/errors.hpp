#pragma once

#include <stdexcept>
#include <string>

namespace mixid {

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(std::size_t p, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(p) + ": " + msg), pos(p) {}
};

// Candidate enumeration inside realize ran out of budget.
struct ExhaustedSearch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-step retry budget of the witness engine ran out. Names the constant
// whose sampling conditions could not be met.
struct RetryExhausted : std::runtime_error {
  int step;
  std::string constant;
  RetryExhausted(int j, std::string c)
      : std::runtime_error("retry budget exhausted at step " + std::to_string(j) +
                           " (suspected small/slender constant: " + c + ")"),
        step(j),
        constant(std::move(c)) {}
};

struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedRepresentation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContentMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mixid
