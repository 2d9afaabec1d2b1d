#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gaitbench/dataset_io.hpp"
#include "gaitbench/generator.hpp"

using namespace gaitbench;

namespace {

double channel_mean(const Waveform11& w) {
    double s = 0.0;
    for (double v : w) s += v;
    return s / kTimepoints;
}

// Mean waveform of all cycles of one (subject, label) group.
Waveform11 group_mean(const Dataset& d, const std::string& subject, ClassLabel label,
                      const ChannelId& id) {
    Waveform11 acc{};
    int n = 0;
    for (const auto& c : d.cycles) {
        if (c.subject_id != subject || c.label != label) continue;
        const Waveform11& w = c.channels.at(id);
        for (int t = 0; t < kTimepoints; ++t) acc[t] += w[t];
        ++n;
    }
    REQUIRE(n > 0);
    for (double& v : acc) v /= n;
    return acc;
}

}  // namespace

TEST_CASE("default config yields 420 cycles over 20 subjects") {
    const Dataset d = generate_dataset(GeneratorConfig{});
    CHECK(d.cycles.size() == 420);
    CHECK(d.subjects().size() == 20);
}

TEST_CASE("minimal config yields 7 cycles for 1 subject") {
    GeneratorConfig cfg;
    cfg.n_subjects = 1;
    cfg.cycles_per_class = 1;
    cfg.rng_seed = 0;
    const Dataset d = generate_dataset(cfg);
    CHECK(d.cycles.size() == 7);
    CHECK(d.subjects() == std::set<std::string>{"S01"});
}

TEST_CASE("identical configs serialize byte-identically") {
    std::ostringstream a, b;
    write_dataset(a, generate_dataset(GeneratorConfig{}));
    write_dataset(b, generate_dataset(GeneratorConfig{}));
    CHECK(a.str() == b.str());
    CHECK(!a.str().empty());
}

TEST_CASE("different seeds produce different data") {
    GeneratorConfig cfg;
    cfg.rng_seed = 43;
    std::ostringstream a, b;
    write_dataset(a, generate_dataset(GeneratorConfig{}));
    write_dataset(b, generate_dataset(cfg));
    CHECK(a.str() != b.str());
}

TEST_CASE("config validation names the offending field") {
    GeneratorConfig cfg;
    cfg.n_subjects = 0;
    try {
        cfg.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("n_subjects") != std::string::npos);
    }
    cfg = GeneratorConfig{};
    cfg.noise_sd_deg = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = GeneratorConfig{};
    cfg.cycles_per_class = -2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("template constants: knee starts low, repeated calls identical") {
    const Waveform11 knee = normal_template({Feature::knee_flexion, Side::left});
    CHECK(knee[0] == doctest::Approx(5.0));
    CHECK(normal_template({Feature::pelvis_tilt, Side::center}) ==
          normal_template({Feature::pelvis_tilt, Side::center}));
    CHECK_THROWS(normal_template({Feature::pelvis_tilt, Side::left}));
}

TEST_CASE("right-side templates are half-cycle shifts of the left") {
    for (const ChannelId& id : canonical_channels()) {
        if (id.side != Side::right) continue;
        const Waveform11 left = normal_template({id.feature, Side::left});
        const Waveform11 right = normal_template(id);
        for (int t = 0; t < kTimepoints; ++t) {
            CHECK(right[t] == doctest::Approx(left[(t + 5) % 10]).epsilon(1e-12));
        }
    }
}

TEST_CASE("templates are periodic") {
    for (const ChannelId& id : canonical_channels()) {
        const Waveform11 w = normal_template(id);
        CHECK(w[0] == doctest::Approx(w[10]).epsilon(1e-12));
    }
}

TEST_CASE("shipped template data file matches the built-in constants") {
    std::ifstream f(std::string(GAITBENCH_ASSET_DIR) + "/normal_templates.json");
    REQUIRE(f.good());
    const nlohmann::json j = nlohmann::json::parse(f);
    for (const ChannelId& id : canonical_channels()) {
        if (id.side == Side::right) continue;
        const auto& arr = j.at("left").at(std::string(to_string(id.feature)));
        REQUIRE(arr.size() == kTimepoints);
        const Waveform11 w = normal_template(id);
        for (int t = 0; t < kTimepoints; ++t) {
            CHECK(w[t] == doctest::Approx(arr[t].get<double>()).epsilon(1e-12));
        }
    }
}

TEST_CASE("NORMAL transform is the identity") {
    const ChannelMap base = subject_base(GeneratorConfig{}, 3);
    CHECK(apply_class_transform(base, ClassLabel::NORMAL, 1.0) == base);
    CHECK(apply_class_transform(base, ClassLabel::NORMAL, 0.0) == base);
}

TEST_CASE("zero effect scale keeps every class at the base curves") {
    const ChannelMap base = subject_base(GeneratorConfig{}, 0);
    for (ClassLabel l : kAllLabels) {
        const ChannelMap out = apply_class_transform(base, l, 0.0);
        for (const auto& [id, w] : out) {
            const Waveform11& b = base.at(id);
            for (int t = 0; t < kTimepoints; ++t) CHECK(std::fabs(w[t] - b[t]) < 1e-9);
        }
    }
}

TEST_CASE("CROUCHED adds about 40 degrees of knee flexion") {
    const Dataset d = generate_dataset(GeneratorConfig{});
    const ChannelId knee_r = {Feature::knee_flexion, Side::right};
    for (const auto& subject : {"S01", "S07", "S20"}) {
        const double crouched = channel_mean(group_mean(d, subject, ClassLabel::CROUCHED, knee_r));
        const double normal = channel_mean(group_mean(d, subject, ClassLabel::NORMAL, knee_r));
        CHECK(crouched - normal == doctest::Approx(40.0).epsilon(0.15));
    }
}

TEST_CASE("INWARD_FOOT rotates the right hip internally") {
    const Dataset d = generate_dataset(GeneratorConfig{});
    const ChannelId rot_l = {Feature::hip_rotation, Side::left};
    const ChannelId rot_r = {Feature::hip_rotation, Side::right};
    for (const auto& subject : d.subjects()) {
        const double right =
            channel_mean(group_mean(d, subject, ClassLabel::INWARD_FOOT, rot_r));
        const double left = channel_mean(group_mean(d, subject, ClassLabel::INWARD_FOOT, rot_l));
        CHECK(right < left);
    }
}

TEST_CASE("class signatures point the documented direction for every subject") {
    const Dataset d = generate_dataset(GeneratorConfig{});
    const ChannelId knee_l = {Feature::knee_flexion, Side::left};
    const ChannelId knee_r = {Feature::knee_flexion, Side::right};
    const ChannelId hip_r = {Feature::hip_flexion, Side::right};
    const ChannelId rot_r = {Feature::hip_rotation, Side::right};
    const ChannelId add_r = {Feature::hip_adduction, Side::right};
    for (const auto& s : d.subjects()) {
        const double knee_n = channel_mean(group_mean(d, s, ClassLabel::NORMAL, knee_r));
        // STIFF compresses knee range toward zero.
        CHECK(channel_mean(group_mean(d, s, ClassLabel::STIFF, knee_r)) < knee_n);
        // CROUCHED raises knee and hip flexion.
        CHECK(channel_mean(group_mean(d, s, ClassLabel::CROUCHED, knee_r)) > knee_n);
        CHECK(channel_mean(group_mean(d, s, ClassLabel::CROUCHED, hip_r)) >
              channel_mean(group_mean(d, s, ClassLabel::NORMAL, hip_r)));
        // BOUNCY adds stance-phase knee flexion.
        CHECK(channel_mean(group_mean(d, s, ClassLabel::BOUNCY, knee_l)) >
              channel_mean(group_mean(d, s, ClassLabel::NORMAL, knee_l)));
        // Foot rotations move the right hip rotation in opposite directions.
        const double rot_n = channel_mean(group_mean(d, s, ClassLabel::NORMAL, rot_r));
        CHECK(channel_mean(group_mean(d, s, ClassLabel::INWARD_FOOT, rot_r)) < rot_n);
        CHECK(channel_mean(group_mean(d, s, ClassLabel::OUTWARD_FOOT, rot_r)) > rot_n);
        // Abduction pushes the right hip toward negative adduction in swing.
        CHECK(channel_mean(group_mean(d, s, ClassLabel::LIMB_ABDUCTION, add_r)) >
              channel_mean(group_mean(d, s, ClassLabel::NORMAL, add_r)));
    }
}

TEST_CASE("unilateral classes leave the left limb untouched before noise") {
    const GeneratorConfig cfg;
    for (int subj : {0, 5, 12}) {
        const ChannelMap base = subject_base(cfg, subj);
        for (ClassLabel l : {ClassLabel::LIMB_ABDUCTION, ClassLabel::INWARD_FOOT,
                             ClassLabel::OUTWARD_FOOT}) {
            const ChannelMap out = apply_class_transform(base, l, 1.0);
            for (const ChannelId& id : canonical_channels()) {
                if (id.side != Side::left) continue;
                CHECK(out.at(id) == base.at(id));
            }
        }
    }
}

TEST_CASE("unilateral classes keep left channels within 3 noise SDs in generated data") {
    const GeneratorConfig cfg;
    const Dataset d = generate_dataset(cfg);
    for (const auto& s : d.subjects()) {
        for (ClassLabel l : {ClassLabel::LIMB_ABDUCTION, ClassLabel::INWARD_FOOT,
                             ClassLabel::OUTWARD_FOOT}) {
            for (const ChannelId& id : canonical_channels()) {
                if (id.side != Side::left) continue;
                const Waveform11 w = group_mean(d, s, l, id);
                const Waveform11 n = group_mean(d, s, ClassLabel::NORMAL, id);
                for (int t = 0; t < kTimepoints; ++t) {
                    CHECK(std::fabs(w[t] - n[t]) < 3.0 * cfg.noise_sd_deg);
                }
            }
        }
    }
}

TEST_CASE("zero noise reproduces the transformed base exactly") {
    GeneratorConfig cfg;
    cfg.n_subjects = 2;
    cfg.cycles_per_class = 2;
    cfg.noise_sd_deg = 0.0;
    const Dataset d = generate_dataset(cfg);
    const ChannelMap base = subject_base(cfg, 0);
    for (const auto& c : d.cycles) {
        if (c.subject_id != "S01" || c.label != ClassLabel::NORMAL) continue;
        CHECK(c.channels == base);
    }
}

TEST_CASE("validation passes on generated data") {
    const ValidationReport r = validate_dataset(generate_dataset(GeneratorConfig{}));
    CHECK(r.ok());
    CHECK(r.violations.empty());
}

TEST_CASE("validation names an injected NaN") {
    GeneratorConfig cfg;
    cfg.n_subjects = 2;
    cfg.cycles_per_class = 1;
    Dataset d = generate_dataset(cfg);
    d.cycles[3].channels.at({Feature::hip_flexion, Side::left})[7] = std::nan("");
    const ValidationReport r = validate_dataset(d);
    REQUIRE(!r.ok());
    bool found = false;
    for (const auto& v : r.violations) {
        if (v.kind != "non-finite") continue;
        found = true;
        CHECK(v.subject_id == d.cycles[3].subject_id);
        CHECK(v.label == to_string(d.cycles[3].label));
        CHECK(v.cycle_index == d.cycles[3].cycle_index);
        CHECK(v.channel == "hip_flexion/left");
        CHECK(v.timepoint == 70);
    }
    CHECK(found);
}

TEST_CASE("validation flags duplicate (subject,label,cycle) keys") {
    GeneratorConfig cfg;
    cfg.n_subjects = 1;
    cfg.cycles_per_class = 1;
    Dataset d = generate_dataset(cfg);
    d.cycles.push_back(d.cycles.front());
    const ValidationReport r = validate_dataset(d);
    REQUIRE(!r.ok());
    CHECK(r.violations.front().kind == "duplicate-key");
}

TEST_CASE("validation flags a missing channel") {
    GeneratorConfig cfg;
    cfg.n_subjects = 1;
    cfg.cycles_per_class = 1;
    Dataset d = generate_dataset(cfg);
    d.cycles.front().channels.erase({Feature::ankle_dorsiflexion, Side::right});
    const ValidationReport r = validate_dataset(d);
    REQUIRE(!r.ok());
    CHECK(r.violations.front().kind == "missing-channel");
    CHECK(r.violations.front().channel == "ankle_dorsiflexion/right");
}

TEST_CASE("dataset io round-trips generated data") {
    GeneratorConfig cfg;
    cfg.n_subjects = 3;
    cfg.cycles_per_class = 2;
    const Dataset d = generate_dataset(cfg);
    std::ostringstream out;
    write_dataset(out, d);
    std::istringstream in(out.str());
    const Dataset back = read_dataset(in);
    REQUIRE(back.cycles.size() == d.cycles.size());
    for (std::size_t i = 0; i < d.cycles.size(); ++i) {
        CHECK(back.cycles[i].subject_id == d.cycles[i].subject_id);
        CHECK(back.cycles[i].label == d.cycles[i].label);
        CHECK(back.cycles[i].cycle_index == d.cycles[i].cycle_index);
        CHECK(back.cycles[i].channels == d.cycles[i].channels);
    }
}
