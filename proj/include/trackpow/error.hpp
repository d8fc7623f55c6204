#ifndef TRACKPOW_ERROR_HPP_
#define TRACKPOW_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace trackpow {

  // Every failure raised by the library carries one of these kinds; the C API
  // maps them one-to-one onto its status codes.
  enum class ErrorKind {
    parse,         // malformed text input
    precondition,  // operation called outside its contract
    not_found,     // undefined name or letter
    limit,         // configured length/coset/iteration cap exceeded
    convergence,   // numerical iteration did not converge
    mismatch,      // objects over different alphabets/bases
  };

  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(what), _kind(kind) {}

    ErrorKind kind() const noexcept {
      return _kind;
    }

   private:
    ErrorKind _kind;
  };

  [[noreturn]] inline void fail(ErrorKind kind, std::string const& what) {
    throw Error(kind, what);
  }

  char const* to_string(ErrorKind kind) noexcept;

}  // namespace trackpow

#endif  // TRACKPOW_ERROR_HPP_
