#include "trackpow/error.hpp"

namespace trackpow {

  char const* to_string(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::parse:
        return "parse";
      case ErrorKind::precondition:
        return "precondition";
      case ErrorKind::not_found:
        return "not-found";
      case ErrorKind::limit:
        return "limit";
      case ErrorKind::convergence:
        return "convergence";
      case ErrorKind::mismatch:
        return "mismatch";
    }
    return "unknown";
  }

}  // namespace trackpow
