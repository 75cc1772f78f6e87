#pragma once
// Verification drivers behind the CLI subcommands. Each driver builds the
// relevant objects, evaluates the claims it owns and returns one canonical
// JSON verification body: {"params", "claims", "data"}. Claims carry
// expected and actual values so a failure names the violated statement.

#include <string>

#include <json.hpp>

#include "hsurf/config.hpp"
#include "hsurf/pencil.hpp"
#include "hsurf/unitary.hpp"

namespace hsurf {

enum class OutputFormat { json, csv, md };

struct RunConfig {
  uint32_t p = 2;
  uint32_t a = 1;
  Level level = Level::quadratic;
  OutputFormat format = OutputFormat::json;
  std::string line_selector;  // empty, an index, or eight comma-separated indices
  uint32_t sample = 3;        // quartic base parameters per pencil
  bool all_quartic = false;
  bool pencil_quartic = true;  // general-fiber checks on/off
  unsigned workers = 1;
};

struct CommandResult {
  nlohmann::json verification;
  bool all_ok = false;
  const char* command = "";
};

CommandResult run_points(const RunConfig& cfg);
CommandResult run_lines(const RunConfig& cfg);
CommandResult run_config_cmd(const RunConfig& cfg);
CommandResult run_pencil(const RunConfig& cfg);
CommandResult run_stabilizer(const RunConfig& cfg);
CommandResult run_orbit(const RunConfig& cfg);
CommandResult run_report_all(const RunConfig& cfg);

// Full document with the meta block; only "verification" is part of the
// determinism contract.
std::string render(const CommandResult& result, OutputFormat format,
                   const nlohmann::json& meta);

// Fixed-seed unirationality sampling; returns how many of `count` parameter
// pairs landed on the surface.
uint64_t unirational_on_surface_count(const FieldCtx& F4, uint64_t count, uint64_t seed);

inline constexpr uint64_t kUnirationalSeed = 0x5eed0001;

}  // namespace hsurf
