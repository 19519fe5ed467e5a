#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "microrep/config.hpp"
#include "microrep/review.hpp"

namespace microrep {

// High-level command implementations behind the CLI. Each throws the
// library's error types on failure; the CLI maps them to exit codes.

// Generate a synthetic corpus and write it as JSONL.
void run_synth(const CorpusSpec& spec, const std::string& out_path, std::ostream& log);

// Validity-filter and preprocess reviews; write `{"id", "tokens"}` JSONL.
void run_preprocess(const RunConfig& cfg, const std::string& out_path, std::ostream& log);

struct TrainingArtifacts {
    std::string checkpoint_path;
    std::string vocab_path;
    std::string curve_path;
    std::string metrics_path;
};

// Full pipeline: ingest -> split -> preprocess -> vocabulary + embeddings ->
// (resample) -> train -> evaluate. Writes checkpoint.bin, vocab.tsv,
// curve.csv, and metrics.json into cfg.out_dir and prints both the test and
// validation classification reports.
TrainingArtifacts run_training(const RunConfig& cfg, std::ostream& log);

// Evaluate a checkpoint on a labeled review file twice: as-is and under the
// balanced-test protocol (test set oversampled with replacement to
// n_per_class per class). Writes eval_balanced.json; prints both reports.
void run_eval_balanced(const RunConfig& cfg, const std::string& checkpoint_path,
                       const std::string& vocab_path, size_t n_per_class, uint64_t seed,
                       std::ostream& log);

// Finite-difference gradient audit on a small fixed configuration
// (V=20, D=8, H=6, max_len=5, batch of 4). Returns the max relative error.
double run_gradcheck(Arch arch, uint64_t seed, double eps, bool corrupt_first_gate,
                     std::ostream& log);

// Score provider reputation from predicted labels; writes reputation.json
// and prints the table.
void run_reputation(const RunConfig& cfg, const std::string& checkpoint_path,
                    const std::string& vocab_path, std::ostream& log);

} // namespace microrep
