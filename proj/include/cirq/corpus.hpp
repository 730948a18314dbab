#pragma once

#include <filesystem>

#include "cirq/formula.hpp"
#include "cirq/strategy.hpp"

namespace cirq {

struct CheckResult {
  std::string entry;
  std::string kind;
  std::string provenance;
  bool pass = false;
  std::string detail;
};

struct CorpusReport {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const CheckResult& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Resolves the corpus directory: CIRQUENT_CORPUS_DIR, else ./corpus.
std::filesystem::path corpus_dir();

Cirquent load_corpus_cirquent(const std::filesystem::path& dir,
                              const std::string& file);
Interpretation load_corpus_interpretation(const std::filesystem::path& dir,
                                          const std::string& file);
Situation load_corpus_situation(const std::filesystem::path& dir,
                                const std::string& file);

// Runs every check of every entry in entries.json whose name contains
// `filter` (empty matches all).
CorpusReport run_corpus(const std::filesystem::path& dir,
                        const std::string& filter = "");

std::string report_text(const CorpusReport& report);
std::string report_json(const CorpusReport& report);

}  // namespace cirq
