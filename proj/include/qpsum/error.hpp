#ifndef QPSUM_ERROR_HPP
#define QPSUM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qpsum {

enum class ErrorKind {
  Domain,        // argument outside the mathematical domain of an operation
  Region,        // a point that must lie in A does not
  Numeric,       // iteration failed to converge or an internal bound broke
  Infeasible,    // spectrum outside the constructive corridor
  Format,        // malformed input file
  Io,
  Malformed,     // structurally inconsistent operator or decomposition
  Dimension,     // mismatched family lists or shapes
};

const char *to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) {
  throw Error(kind, what);
}

} // namespace qpsum

#endif
