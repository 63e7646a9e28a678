#include "websplit/log.hpp"

#include <iostream>
#include <utility>

namespace websplit {

namespace {
LogSink& sink_ref() {
  static LogSink sink;
  return sink;
}
}  // namespace

void set_log_sink(LogSink sink) { sink_ref() = std::move(sink); }

void log_note(const std::string& message) {
  if (sink_ref()) {
    sink_ref()(message);
  } else {
    std::cerr << "note: " << message << '\n';
  }
}

}  // namespace websplit
