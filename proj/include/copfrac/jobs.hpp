#pragma once

#include "copfrac/measures.hpp"

#include <string>
#include <vector>

namespace copfrac {

struct OutputSpec {
    std::string format = "csv"; // "csv" | "json"
    std::string path;           // empty -> stdout
};

struct SweepParameter {
    std::string path; // dotted path into the job object, e.g. "true_copula.theta"
    std::vector<double> values;
};

/// A parsed and fully validated job file. Sweeps keep the raw job JSON so
/// each cell re-parses a patched copy; every cell is validated before any
/// evaluation starts.
struct JobFile {
    int schema_version = 1;
    std::vector<MeasureJob> jobs;
    std::vector<std::string> job_json; // raw JSON per job, for sweep patching
    std::vector<SweepParameter> sweep;
    OutputSpec output;
};

JobFile parse_job_file(const std::string& text);
JobFile load_job_file(const std::string& path);

struct SweepRecord {
    std::string kind;
    std::vector<double> parameter_values; // in sweep declaration order
    IntegralResult result;
    double wall_time_ms = 0.0;
};

/// One record per job, in declaration order.
std::vector<SweepRecord> run_measures(const JobFile& file);

/// Cartesian sweep: one record per (job, cell), jobs outermost and cells in
/// lexicographic declaration order. Cells may evaluate concurrently
/// (COPFRAC_THREADS bounds the workers); emission order is deterministic.
std::vector<SweepRecord> run_sweep(const JobFile& file);

/// CSV with header; swept columns in declaration order, then
/// value,error_estimate,evaluations[,wall_time_ms]. A kind column is
/// prepended when the file holds more than one job. Numbers use
/// shortest round-trip formatting, so equal inputs give equal bytes.
std::string to_csv(const JobFile& file, const std::vector<SweepRecord>& records,
                   bool include_timing);

/// JSON-lines output with the same fields.
std::string to_jsonl(const JobFile& file, const std::vector<SweepRecord>& records,
                     bool include_timing);

/// Per-parameter monotone-trend summary lines ("# trend ..."), one per
/// (job, parameter); reported, never asserted.
std::vector<std::string> trend_summary(const JobFile& file,
                                       const std::vector<SweepRecord>& records);

/// Worker count from COPFRAC_THREADS (0 or unset -> hardware concurrency).
int worker_threads();

/// Shortest round-trip decimal representation.
std::string format_double(double x);

} // namespace copfrac
