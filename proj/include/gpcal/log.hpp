#pragma once

#include <string>

namespace gpcal::log {

enum class Level : int { off = 0, warn = 1, info = 2, debug = 3 };

// Threshold comes from the GPCAL_LOG environment variable, read once per
// process: "off"/"warn"/"info"/"debug" or the numbers 0..3. Default: warn.
Level threshold();

bool enabled(Level lvl);

// Writes to stderr so it never mixes with data emitted on stdout.
void write(Level lvl, const std::string& msg);

inline void warn(const std::string& m) { write(Level::warn, m); }
inline void info(const std::string& m) { write(Level::info, m); }
inline void debug(const std::string& m) { write(Level::debug, m); }

}  // namespace gpcal::log
