#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sftp {

enum class Errc {
  DuplicateNode,
  SelfLoop,
  DuplicateEdge,
  NonPositiveWeight,
  WeightOutOfRange,
  InvalidThreshold,
  UnknownNode,
  SameEndpoint,
  NoRoute,
  InvalidRoute,
  NoSafeRoute,
  InvalidScenario,
};

std::string_view to_string(Errc code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sftp
