#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace gpcal {

// Command entry points shared by the command line driver and the test
// harness. Each reads and writes only through the filesystem paths it is
// given and throws ConfigError / NumericalError / IoError on failure.

struct GenerateArgs {
  std::string config;
  std::string out;
};

struct InvertArgs {
  std::string config;
  std::string data;
  std::string out;
  std::string scenario;              // "ignore" or "gp"; empty takes the config value
  std::optional<std::uint64_t> seed; // overrides the config seed
};

struct OptimizeArgs {
  std::string config;
  std::string data;
  std::string out;
  std::string scenario;  // "ignore" or "gp-fixed"; empty takes the config value
};

struct ReportArgs {
  std::string archive;
  std::string out;
};

struct PredictArgs {
  std::string archive;
  std::string data;
  std::string out;
};

void cmd_generate(const GenerateArgs& args);
void cmd_invert(const InvertArgs& args);
void cmd_optimize(const OptimizeArgs& args);
void cmd_report(const ReportArgs& args);
void cmd_predict(const PredictArgs& args);

}  // namespace gpcal
