#ifndef TAILLAB_ERRORS_HPP
#define TAILLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace taillab {

// Error categories mirror the CLI exit codes: 2 = bad input, 3 = numerical
// failure.  Verification failures are reported through DecayReport verdicts,
// not exceptions.
class Error : public std::runtime_error {
public:
  enum class Kind { InvalidArgument, Degenerate, Numeric };

  Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

class InvalidArgumentError : public Error {
public:
  explicit InvalidArgumentError(const std::string& msg)
      : Error(Kind::InvalidArgument, msg) {}
};

// Parameter combinations the theory excludes (gamma-function poles in the
// connection-coefficient numerator, integer nu couplings, ...).
class DegenerateParameterError : public Error {
public:
  explicit DegenerateParameterError(const std::string& msg)
      : Error(Kind::Degenerate, msg) {}
};

class NumericError : public Error {
public:
  explicit NumericError(const std::string& msg) : Error(Kind::Numeric, msg) {}
};

}  // namespace taillab

#endif
