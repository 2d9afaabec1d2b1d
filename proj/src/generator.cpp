#include "gaitbench/generator.hpp"

#include <algorithm>
#include <cstdio>

namespace gaitbench {

void GeneratorConfig::validate() const {
    if (n_subjects < 1) throw ConfigError("n_subjects must be positive");
    if (cycles_per_class < 1) throw ConfigError("cycles_per_class must be positive");
    if (noise_sd_deg < 0.0) throw ConfigError("noise_sd_deg must be non-negative");
    if (subject_variation_sd_deg < 0.0)
        throw ConfigError("subject_variation_sd_deg must be non-negative");
    if (class_effect_scale < 0.0) throw ConfigError("class_effect_scale must be non-negative");
}

namespace {

// Left-side curves at 0,10,...,100% of the cycle, degrees. Periodic
// (t100 == t0) so that the half-cycle shift used for the right side stays
// continuous. Numbers are artifact constants, not measured data.
Waveform11 left_template(Feature f) {
    switch (f) {
        case Feature::pelvis_tilt:
            return {12.0, 12.6, 13.1, 12.8, 12.1, 11.6, 12.0, 12.7, 13.0, 12.4, 12.0};
        case Feature::pelvis_obliquity:
            return {0.0, 2.4, 3.0, 1.2, -1.5, -3.0, -1.8, 1.5, 3.0, 2.0, 0.0};
        case Feature::pelvis_rotation:
            return {-4.0, -2.5, 0.0, 2.5, 4.0, 2.5, 0.0, -2.5, -4.0, -3.0, -4.0};
        case Feature::hip_flexion:
            return {30.0, 27.0, 18.0, 8.0, -2.0, -8.0, -5.0, 10.0, 25.0, 32.0, 30.0};
        case Feature::hip_adduction:
            return {0.0, -3.0, -4.0, -3.0, -1.0, 1.0, 3.0, 4.0, 3.0, 1.0, 0.0};
        case Feature::hip_rotation:
            return {-2.0, -4.0, -3.0, -1.0, 1.0, 3.0, 2.0, 0.0, -2.0, -3.0, -2.0};
        case Feature::knee_flexion:
            return {5.0, 15.0, 10.0, 5.0, 3.0, 5.0, 20.0, 45.0, 60.0, 30.0, 5.0};
        case Feature::ankle_dorsiflexion:
            return {0.0, -5.0, 3.0, 8.0, 10.0, 5.0, -15.0, -5.0, 2.0, 5.0, 0.0};
    }
    return {};
}

// Half-cycle phase shift over the periodic 10-interval grid.
Waveform11 phase_shift_half(const Waveform11& w) {
    Waveform11 out{};
    for (int i = 0; i < kTimepoints; ++i) out[i] = w[(i + 5) % 10];
    return out;
}

// Nominal class effect sizes (scaled by class_effect_scale).
constexpr double kBouncyKneeAmp = 1.0;     // shape carries the +-15 deg bump
constexpr double kStiffCompression = 0.75; // knee scaled by 1 - 0.75*s
constexpr double kCrouchKnee = 40.0;
constexpr double kCrouchHip = 30.0;
constexpr double kRotationShift = 20.0;
constexpr double kSwingAbduction = 15.0;

// Stance-phase flexion/re-extension bump, authored for the left channel;
// the right channel gets the half-cycle-shifted copy.
const Waveform11 kBouncyBumpLeft = {0.0, 12.0, 18.0, 10.0, 0.0, -3.0,
                                    0.0, 0.0,  0.0,  0.0,  0.0};

// Swing-phase (60-100%) abduction ramp for the right limb.
const Waveform11 kSwingBump = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
                               0.5, 0.8, 1.0, 0.8, 0.5};

}  // namespace

Waveform11 normal_template(const ChannelId& channel) {
    if (!is_valid_channel(channel))
        throw std::invalid_argument("invalid channel: " + channel_name(channel));
    const Waveform11 left = left_template(channel.feature);
    if (channel.side == Side::right) return phase_shift_half(left);
    return left;
}

ChannelMap normal_template_map() {
    ChannelMap out;
    for (const ChannelId& id : canonical_channels()) out[id] = normal_template(id);
    return out;
}

ChannelMap subject_base(const GeneratorConfig& config, int subject_index) {
    Rng rng(derive_seed(config.rng_seed, 1, static_cast<std::uint64_t>(subject_index)));
    const double sd = config.subject_variation_sd_deg;
    // One (gain, offset) pair per feature, shared by left and right so that
    // gait symmetry survives the subject effects.
    std::map<Feature, std::pair<double, double>> effects;
    for (Feature f : {Feature::pelvis_tilt, Feature::pelvis_obliquity, Feature::pelvis_rotation,
                      Feature::hip_flexion, Feature::hip_adduction, Feature::hip_rotation,
                      Feature::knee_flexion, Feature::ankle_dorsiflexion}) {
        const double gain = std::clamp(1.0 + rng.gaussian() * sd / 15.0, 0.6, 1.4);
        const double offset = rng.gaussian() * sd;
        effects[f] = {gain, offset};
    }
    ChannelMap out;
    for (const ChannelId& id : canonical_channels()) {
        const auto [gain, offset] = effects.at(id.feature);
        Waveform11 w = normal_template(id);
        for (double& v : w) v = gain * v + offset;
        out[id] = w;
    }
    return out;
}

ChannelMap apply_class_transform(const ChannelMap& base, ClassLabel label,
                                 double effect_scale) {
    ChannelMap out = base;
    const double s = effect_scale;
    auto& knee_l = out.at({Feature::knee_flexion, Side::left});
    auto& knee_r = out.at({Feature::knee_flexion, Side::right});
    switch (label) {
        case ClassLabel::NORMAL:
            break;
        case ClassLabel::BOUNCY: {
            const Waveform11 bump_r = phase_shift_half(kBouncyBumpLeft);
            for (int i = 0; i < kTimepoints; ++i) {
                knee_l[i] += s * kBouncyKneeAmp * kBouncyBumpLeft[i];
                knee_r[i] += s * kBouncyKneeAmp * bump_r[i];
            }
            break;
        }
        case ClassLabel::STIFF: {
            const double c = std::max(0.0, 1.0 - kStiffCompression * s);
            for (int i = 0; i < kTimepoints; ++i) {
                knee_l[i] *= c;
                knee_r[i] *= c;
            }
            break;
        }
        case ClassLabel::CROUCHED: {
            auto& hip_l = out.at({Feature::hip_flexion, Side::left});
            auto& hip_r = out.at({Feature::hip_flexion, Side::right});
            for (int i = 0; i < kTimepoints; ++i) {
                knee_l[i] += s * kCrouchKnee;
                knee_r[i] += s * kCrouchKnee;
                hip_l[i] += s * kCrouchHip;
                hip_r[i] += s * kCrouchHip;
            }
            break;
        }
        case ClassLabel::LIMB_ABDUCTION: {
            auto& add_r = out.at({Feature::hip_adduction, Side::right});
            auto& rot_r = out.at({Feature::hip_rotation, Side::right});
            for (int i = 0; i < kTimepoints; ++i) {
                add_r[i] += s * kSwingAbduction * kSwingBump[i];  // abduction positive
                rot_r[i] += s * kRotationShift;                   // external positive
            }
            break;
        }
        case ClassLabel::INWARD_FOOT: {
            auto& rot_r = out.at({Feature::hip_rotation, Side::right});
            for (double& v : rot_r) v -= s * kRotationShift;  // internal negative
            break;
        }
        case ClassLabel::OUTWARD_FOOT: {
            auto& rot_r = out.at({Feature::hip_rotation, Side::right});
            for (double& v : rot_r) v += s * kRotationShift;
            break;
        }
    }
    return out;
}

void add_smooth_noise(ChannelMap& channels, Rng& rng, double noise_sd_deg) {
    for (const ChannelId& id : canonical_channels()) {
        Waveform11 raw{};
        for (double& v : raw) v = rng.gaussian() * noise_sd_deg;
        Waveform11& w = channels.at(id);
        for (int i = 0; i < kTimepoints; ++i) {
            double sum = raw[i];
            int n = 1;
            if (i > 0) { sum += raw[i - 1]; ++n; }
            if (i + 1 < kTimepoints) { sum += raw[i + 1]; ++n; }
            w[i] += sum / n;
        }
    }
}

std::string subject_name(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "S%02d", index + 1);
    return buf;
}

Dataset generate_dataset(const GeneratorConfig& config) {
    config.validate();
    Dataset d;
    d.cycles.reserve(static_cast<std::size_t>(config.n_subjects) * kAllLabels.size() *
                     config.cycles_per_class);
    for (int subj = 0; subj < config.n_subjects; ++subj) {
        const ChannelMap base = subject_base(config, subj);
        for (std::size_t li = 0; li < kAllLabels.size(); ++li) {
            const ClassLabel label = kAllLabels[li];
            const ChannelMap transformed =
                apply_class_transform(base, label, config.class_effect_scale);
            for (int cyc = 0; cyc < config.cycles_per_class; ++cyc) {
                GaitCycle cycle;
                cycle.subject_id = subject_name(subj);
                cycle.label = label;
                cycle.cycle_index = cyc;
                cycle.channels = transformed;
                Rng noise(derive_seed(config.rng_seed, 2, static_cast<std::uint64_t>(subj),
                                      li * 1000 + static_cast<std::uint64_t>(cyc)));
                add_smooth_noise(cycle.channels, noise, config.noise_sd_deg);
                d.cycles.push_back(std::move(cycle));
            }
        }
    }
    return d;
}

}  // namespace gaitbench
