#ifndef BRIM_ERROR_HPP
#define BRIM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace brim {

enum class ErrorKind {
  InvalidInput,
  Undefined,
  ResourceLimit,
  InfiniteColength,
  SupportOffOrigin,
  WindowTooSmall,
  NoStabilization,
  DegreeDeficiency,
  NotMultiplicitySystem,
  InvalidDegree,
  NotSubmodule,
  NotMember,
  NotDeskCase,
  SuperficialSamplingFailed,
  ZeroModule,
  Internal,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Undefined: return "Undefined";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::InfiniteColength: return "InfiniteColength";
    case ErrorKind::SupportOffOrigin: return "SupportOffOrigin";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::NoStabilization: return "NoStabilization";
    case ErrorKind::DegreeDeficiency: return "DegreeDeficiency";
    case ErrorKind::NotMultiplicitySystem: return "NotMultiplicitySystem";
    case ErrorKind::InvalidDegree: return "InvalidDegree";
    case ErrorKind::NotSubmodule: return "NotSubmodule";
    case ErrorKind::NotMember: return "NotMember";
    case ErrorKind::NotDeskCase: return "NotDeskCase";
    case ErrorKind::SuperficialSamplingFailed: return "SuperficialSamplingFailed";
    case ErrorKind::ZeroModule: return "ZeroModule";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

/// All library failures are reported through this exception; `kind()` is
/// stable and is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace brim

#endif  // BRIM_ERROR_HPP
