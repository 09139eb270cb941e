#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>

#include "puc/cli/config.hpp"
#include "puc/cli/csv.hpp"
#include "puc/cli/report.hpp"
#include "puc/unit_kb.hpp"

namespace puc::cli {

// Directory of the bundled unit dictionary and fixtures.
std::filesystem::path data_dir();
std::filesystem::path default_kb_path();

std::shared_ptr<const KnowledgeBase> load_kb(const RunConfig& config);

// One report document covering every input CSV (one dataset per file).
Json run_annotate(const RunConfig& config);

struct CanonicalizeOutput {
  CsvTable table;  // the single input CSV, selected columns rewritten
  Json report;     // provenance sidecar
};
CanonicalizeOutput run_canonicalize(const RunConfig& config);

Json run_evaluate(const RunConfig& config);

// Runs the configured mode and writes its outputs. Returns the process exit
// code; fatal problems are reported on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace puc::cli
