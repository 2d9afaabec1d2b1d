#pragma once

#include <span>
#include <stdexcept>

#include "gaitbench/preprocess_types.hpp"

namespace gaitbench {

struct PreprocessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Natural cubic spline through n >= 4 uniformly spaced samples spanning
// 0..100% of the cycle, evaluated at 0,10,...,100. Exact at coincident
// abscissae.
Waveform11 spline_resample(std::span<const double> samples);

// Per-channel spline_resample; identifiers and label pass through.
// Errors are tagged with the offending channel.
GaitCycle time_normalize(const RawCycle& raw);

// Canonical channel-major flattening (see canonical_channels()), 143 dims.
FeatureVector vectorize(const GaitCycle& cycle);

// Inverse of vectorize's layout; any 143-value sequence maps to a channel map.
ChannelMap devectorize(const FeatureVector& v);

class Standardizer {
  public:
    // Per-dimension mean and population SD over the training set.
    // Dimensions with SD < 1e-12 pass through unscaled (SD stored as 1).
    static Standardizer fit(const std::vector<FeatureVector>& train);

    FeatureVector apply(const FeatureVector& v) const;

    const std::vector<double>& mean() const { return mean_; }
    const std::vector<double>& sd() const { return sd_; }

  private:
    std::vector<double> mean_;
    std::vector<double> sd_;
};

}  // namespace gaitbench
