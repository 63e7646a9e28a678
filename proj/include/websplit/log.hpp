#pragma once

#include <functional>
#include <string>

namespace websplit {

using LogSink = std::function<void(const std::string&)>;

// Diagnostics for data oddities (non-tree MRs, degraded generation tiers).
// Defaults to stderr; tests may install a capturing sink. Pass nullptr to
// restore the default.
void set_log_sink(LogSink sink);
void log_note(const std::string& message);

}  // namespace websplit
