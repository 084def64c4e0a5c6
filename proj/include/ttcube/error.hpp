#pragma once

#include <stdexcept>
#include <string>

namespace ttc {

/// Error taxonomy shared with the C API status codes.
enum class ErrorKind {
  parse,     // malformed input text
  invalid,   // object violates its own invariants
  domain,    // argument outside an operation's domain
  limit,     // iteration/size cap exceeded
  structure, // a structural property the theory guarantees failed to verify
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &msg) {
  throw Error(kind, msg);
}

} // namespace ttc
