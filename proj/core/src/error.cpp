#include "sftp/error.hpp"

namespace sftp {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateNode: return "DuplicateNode";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::WeightOutOfRange: return "WeightOutOfRange";
    case Errc::InvalidThreshold: return "InvalidThreshold";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::SameEndpoint: return "SameEndpoint";
    case Errc::NoRoute: return "NoRoute";
    case Errc::InvalidRoute: return "InvalidRoute";
    case Errc::NoSafeRoute: return "NoSafeRoute";
    case Errc::InvalidScenario: return "InvalidScenario";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

}  // namespace sftp
