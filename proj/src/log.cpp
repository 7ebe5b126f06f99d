#include "gpcal/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace gpcal::log {

static Level parse_env() {
  const char* v = std::getenv("GPCAL_LOG");
  if (!v || !*v) return Level::warn;
  if (!std::strcmp(v, "off") || !std::strcmp(v, "0")) return Level::off;
  if (!std::strcmp(v, "warn") || !std::strcmp(v, "1")) return Level::warn;
  if (!std::strcmp(v, "info") || !std::strcmp(v, "2")) return Level::info;
  if (!std::strcmp(v, "debug") || !std::strcmp(v, "3")) return Level::debug;
  return Level::warn;
}

Level threshold() {
  static const Level lvl = parse_env();
  return lvl;
}

bool enabled(Level lvl) {
  return static_cast<int>(lvl) <= static_cast<int>(threshold()) &&
         threshold() != Level::off;
}

void write(Level lvl, const std::string& msg) {
  if (!enabled(lvl)) return;
  static const char* names[] = {"off", "warn", "info", "debug"};
  std::fprintf(stderr, "[gpcal %s] %s\n", names[static_cast<int>(lvl)],
               msg.c_str());
}

}  // namespace gpcal::log
