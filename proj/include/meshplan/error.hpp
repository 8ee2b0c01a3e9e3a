#pragma once

#include <stdexcept>
#include <string>

namespace meshplan {

enum class ErrorKind {
  Parse,
  Validation,
  Config,
  Domain,
  Contract,
  Unroutable,
  NotFound,
  Io,
};

const char* to_string(ErrorKind kind);

// Process exit code for each error class; 0 is reserved for success.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Error(ErrorKind kind, std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }

 private:
  ErrorKind kind_;
  std::string stage_;
};

}  // namespace meshplan
