#pragma once

#include <string>
#include <vector>

#include "fracwave/sim_config.hh"

namespace fracwave {

// Parse a flat key=value config.  '#' starts a comment, blank lines are
// skipped, unknown and duplicate keys are rejected.  Every parse problem is
// reported at once (ConfigError); if the text parses, every violated value
// constraint is likewise reported at once.
SimConfig parse_config_text(const std::string& text);

// parse_config_text applied to a file; throws Error if unreadable.
SimConfig load_config(const std::string& path);

// Inverse of parse_config_text on resolved configs:
//   parse_config_text(serialize_config(cfg.resolved())) == cfg.resolved()
// Numbers are printed with enough digits to round-trip bit-for-bit.
std::string serialize_config(const SimConfig& cfg);

// The value-constraint checks applied by parse_config_text after a clean
// parse, exposed for configs built in code.  Returns the violation list
// (empty when valid) instead of throwing.
std::vector<std::string> config_violations(const SimConfig& cfg);

// Throwing wrapper around config_violations.
void validate_config(const SimConfig& cfg);

}  // namespace fracwave
