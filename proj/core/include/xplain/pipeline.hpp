#pragma once

#include <cstddef>
#include <vector>

#include "xplain/config.hpp"
#include "xplain/dataset.hpp"
#include "xplain/evidence.hpp"
#include "xplain/report.hpp"

namespace xplain {

inline constexpr const char* kToolVersion = "1.0.0";

/// Everything a run produces. The report refers to rows of the dataset file;
/// the training-set views (`train`, `evidence`, `hull_rows`) use training-set
/// indices, which the plot renderer consumes directly.
struct PipelineOutcome {
    ExplanationReport report;
    Dataset train;
    TestQuery x0;
    EvidenceSet evidence;
    std::vector<std::size_t> hull_rows;
};

/// Runs the full explanation pipeline: load, encode, train, hull summary,
/// evidence selection, semantic uplift, completion per polarity, contraction
/// and ranking. A held-out test row is removed from training. Every failure
/// surfaces as a StageError naming the stage; failures while loading input
/// files keep their input classification for the exit-code mapping. The run
/// is a pure function of the input files, the configuration and the seed.
PipelineOutcome run_pipeline(const RunConfig& cfg);

} // namespace xplain
