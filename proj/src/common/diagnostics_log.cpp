#include "kglab/log.hpp"

#include <iostream>
#include <mutex>

namespace kglab {
namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& current_handler() {
  static WarningHandler handler;
  return handler;
}

thread_local WarningCapture* active_capture = nullptr;

}  // namespace

WarningCapture::WarningCapture() : previous_(active_capture) { active_capture = this; }

WarningCapture::~WarningCapture() { active_capture = previous_; }

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  auto previous = std::move(current_handler());
  current_handler() = std::move(handler);
  return previous;
}

void warn(const std::string& message) {
  if (active_capture) {
    active_capture->messages_.push_back(message);
    return;
  }
  std::lock_guard lock(handler_mutex());
  if (current_handler()) {
    current_handler()(message);
  } else {
    std::cerr << "kglab warning: " << message << '\n';
  }
}

}  // namespace kglab
