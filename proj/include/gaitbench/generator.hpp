#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "gaitbench/cycle.hpp"
#include "gaitbench/rng.hpp"

namespace gaitbench {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeneratorConfig {
    int n_subjects = 20;
    int cycles_per_class = 3;
    std::uint64_t rng_seed = 42;
    double noise_sd_deg = 1.5;
    double subject_variation_sd_deg = 3.0;
    double class_effect_scale = 1.0;

    void validate() const;  // throws ConfigError naming the offending field
};

// Fixed 11-point normative curve for one channel. Right-side curves are the
// left-side curves shifted by half a cycle; the authored constants live in
// assets/normal_templates.json as well.
Waveform11 normal_template(const ChannelId& channel);

// All 13 channels of the NORMAL template.
ChannelMap normal_template_map();

// The NORMAL template with this subject's individual gain/offset draws
// applied (deterministic in rng_seed and subject index). Class transforms
// and noise are applied on top of this.
ChannelMap subject_base(const GeneratorConfig& config, int subject_index);

// Deterministic class signature on top of a base curve set. Noise is added
// separately by the generator, so effect_scale = anything with NORMAL is an
// exact identity.
ChannelMap apply_class_transform(const ChannelMap& base, ClassLabel label,
                                 double effect_scale);

// Gaussian perturbation smoothed with a 3-point moving average.
void add_smooth_noise(ChannelMap& channels, Rng& rng, double noise_sd_deg);

std::string subject_name(int index);  // "S01", "S02", ...

// n_subjects x 7 classes x cycles_per_class cycles, pure in the config.
Dataset generate_dataset(const GeneratorConfig& config);

}  // namespace gaitbench
