#include "meshplan/error.hpp"

namespace meshplan {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Config: return "configuration error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Contract: return "contract error";
    case ErrorKind::Unroutable: return "unroutable flow";
    case ErrorKind::NotFound: return "not found";
    case ErrorKind::Io: return "I/O error";
  }
  return "error";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return 3;
    case ErrorKind::Validation:
    case ErrorKind::Config: return 4;
    case ErrorKind::Domain:
    case ErrorKind::Contract:
    case ErrorKind::Unroutable: return 5;
    case ErrorKind::NotFound:
    case ErrorKind::Io: return 6;
  }
  return 1;
}

}  // namespace meshplan
