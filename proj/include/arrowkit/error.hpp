#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace arrowkit {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed an argument outside an operation's contract
/// (bad size, unknown label, out-of-range voter, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two values over different alternative sets were combined.
class CarrierMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)),
        message_(std::move(message)),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

  ParseError at_line(std::size_t line) const { return {message_, line, column_}; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return column == 0 ? message : "column " + std::to_string(column) + ": " + message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// A theorem checker was asked to run on an input that does not satisfy
/// the theorem's standing assumptions. Distinguishes "inapplicable" from
/// "refuted".
class HypothesesNotMet : public Error {
 public:
  explicit HypothesesNotMet(std::vector<std::string> failed)
      : Error("hypotheses not met: " + join(failed)), failed_(std::move(failed)) {}

  const std::vector<std::string>& failed() const noexcept { return failed_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += ", ";
      out += item;
    }
    return out;
  }

  std::vector<std::string> failed_;
};

/// A pairwise decomposition was requested for an SWF violating IIA.
class IiaViolation : public Error {
 public:
  using Error::Error;
};

/// Assembling pair outcomes produced a non-transitive relation.
class NonTransitiveOutcome : public Error {
 public:
  NonTransitiveOutcome(std::string profile, std::string message)
      : Error(std::move(message)), profile_(std::move(profile)) {}

  const std::string& profile() const noexcept { return profile_; }

 private:
  std::string profile_;
};

/// Extension from the top set found two lifts that disagree after restriction.
class IllDefined : public Error {
 public:
  IllDefined(std::string first_lift, std::string second_lift, std::string message)
      : Error(std::move(message)),
        first_lift_(std::move(first_lift)),
        second_lift_(std::move(second_lift)) {}

  const std::string& first_lift() const noexcept { return first_lift_; }
  const std::string& second_lift() const noexcept { return second_lift_; }

 private:
  std::string first_lift_;
  std::string second_lift_;
};

/// Extension from the top set found a subset profile with no lift.
class NoLift : public Error {
 public:
  using Error::Error;
};

/// The exhaustive verifier found a discrepancy with the theorem's conclusion.
class AssertionFailed : public Error {
 public:
  using Error::Error;
};

/// Raised where the mathematics says a state is impossible; indicates a bug.
class InternalContradiction : public Error {
 public:
  using Error::Error;
};

}  // namespace arrowkit
