#pragma once

#include <stdexcept>
#include <string>

namespace chernvan {

enum class ErrorKind { parse, validation, io };

// Errors that originate in user-supplied input rather than in a programming
// mistake. Precondition violations use std::invalid_argument.
class InputError : public std::runtime_error {
 public:
  InputError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace chernvan
