#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "bgt/instance.hpp"
#include "bgt/m2_oracle.hpp"
#include "bgt/sim.hpp"

namespace bgt {

// Instance files: {"rates": ["1/2", "1/8", ...]} with exact "p/q" strings.
// The writer emits canonical order plus "original_index"; when the reader
// finds "original_index" it restores the caller's order before
// canonicalizing, so write-then-read reproduces the instance exactly.
// Throws std::invalid_argument on malformed documents.
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& instance);
Instance read_instance_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Rationals appear as "p/q" strings; bamboo indices are canonical (1-based)
// with the original positions listed per bamboo.
nlohmann::json report_to_json(const SimulationReport& report, const Instance& instance);
// Trace rows: day,trimmed_index,height_before_cut,running_makespan. Idle
// days leave the index and height empty.
std::string report_csv(const SimulationReport& report);

nlohmann::json equivalence_to_json(const EquivalenceReport& report);

nlohmann::json tree_to_json(const OracleTree& tree);
// Indented outline, one node per line: rate, children count, leaf index.
std::string tree_outline(const OracleTree& tree);

}  // namespace bgt
