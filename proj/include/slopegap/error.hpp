#pragma once

#include <stdexcept>
#include <string>

namespace slopegap {

/// Error category, mapped onto CLI exit codes by tools/slopegap.
enum class ErrorKind {
  config,       ///< malformed or inconsistent input (exit code 2)
  computation,  ///< a module could not complete its computation (exit code 3)
};

/// Base exception for the library. Messages are prefixed with the module tag.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& module, const std::string& what)
      : std::runtime_error("[" + module + "] " + what), kind_(kind), module_(module) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

inline Error config_error(const std::string& module, const std::string& what) {
  return Error(ErrorKind::config, module, what);
}

inline Error computation_error(const std::string& module, const std::string& what) {
  return Error(ErrorKind::computation, module, what);
}

}  // namespace slopegap
