#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kglab {

/// Raised on precondition violations and unrecoverable numerical failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using WarningHandler = std::function<void(const std::string&)>;

// Warnings go to stderr unless a handler is installed. Installing returns the
// previous handler so scoped overrides can restore it.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

/// Collects the warnings raised on the current thread while alive; they skip
/// the handler. Captures nest.
class WarningCapture {
 public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  friend void warn(const std::string&);
  std::vector<std::string> messages_;
  WarningCapture* previous_;
};

}  // namespace kglab
