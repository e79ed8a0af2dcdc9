#include "snl/error.hpp"

namespace snl {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NoSupport: return "NoSupport";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::Numeric: return "Numeric";
    case ErrorKind::Network: return "Network";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace snl
