#include "qpsum/error.hpp"

namespace qpsum {

const char *to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::Domain:
    return "domain error";
  case ErrorKind::Region:
    return "region error";
  case ErrorKind::Numeric:
    return "numeric error";
  case ErrorKind::Infeasible:
    return "infeasible";
  case ErrorKind::Format:
    return "format error";
  case ErrorKind::Io:
    return "i/o error";
  case ErrorKind::Malformed:
    return "malformed operator";
  case ErrorKind::Dimension:
    return "dimension mismatch";
  }
  return "unknown error";
}

} // namespace qpsum
