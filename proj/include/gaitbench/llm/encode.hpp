#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaitbench/cycle.hpp"
#include "gaitbench/preprocess_types.hpp"

namespace gaitbench {

struct EncodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two decimals, half-away-from-zero, never "-0.00".
std::string format_2dp(double v);

// Hierarchical trial payload: feature -> side -> t0..t100, canonical key
// order, 2-decimal values. Byte-deterministic.
std::string encode_trial(const GaitCycle& cycle);

// Reads a trial payload back into the 143-dim canonical layout.
FeatureVector decode_trial(const std::string& json_text);

struct ReferenceCell {
    double mean = 0.0;
    double sd = 0.0;   // population form
    double p5 = 0.0;   // linear interpolation between order statistics
    double p95 = 0.0;
};

struct ReferenceStats {
    std::map<ChannelId, std::array<ReferenceCell, kTimepoints>> cells;
    std::string excluded_subject;
    int source_cycles = 0;
};

// p in [0, 100]; linear interpolation between order statistics of the
// sorted sample.
double percentile_linear(std::vector<double> values, double p);

// Statistics over all NORMAL cycles of every subject except the excluded
// one. Requires NORMAL data from >= 2 other subjects.
ReferenceStats build_reference_stats(const Dataset& dataset,
                                     const std::string& excluded_subject);

// Same, over a pre-filtered cycle list (used by the LOSO runner so access
// instrumentation sees every read). Non-NORMAL or excluded-subject cycles
// in the list are an error.
ReferenceStats build_reference_stats_from_cycles(const std::vector<const GaitCycle*>& normals,
                                                 const std::string& excluded_subject);

// Reference payload mirroring encode_trial's hierarchy with
// {"mean":..,"sd":..,"p5":..,"p95":..} leaves.
std::string render_reference(const ReferenceStats& stats);

}  // namespace gaitbench
