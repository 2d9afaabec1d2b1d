#include "gaitbench/llm/encode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gaitbench {

std::string format_2dp(double v) {
    if (!std::isfinite(v)) throw EncodeError("cannot format non-finite value");
    double r = std::round(std::fabs(v) * 100.0) / 100.0;  // half away from zero
    if (v < 0.0 && r != 0.0) r = -r;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", r);
    return buf;
}

namespace {

// Feature -> side -> t0..t100 with a per-leaf value formatter.
template <typename LeafFn>
std::string render_hierarchy(LeafFn&& leaf) {
    std::ostringstream out;
    out << "{";
    Feature last_feature{};
    bool first_feature = true;
    bool first_side = true;
    for (const ChannelId& id : canonical_channels()) {
        if (first_feature || id.feature != last_feature) {
            if (!first_feature) out << "}, ";
            out << "\"" << to_string(id.feature) << "\": {";
            first_side = true;
        }
        if (!first_side) out << ", ";
        out << "\"" << to_string(id.side) << "\": {";
        for (int t = 0; t < kTimepoints; ++t) {
            if (t > 0) out << ", ";
            out << "\"t" << t * 10 << "\": " << leaf(id, t);
        }
        out << "}";
        first_feature = false;
        first_side = false;
        last_feature = id.feature;
    }
    out << "}}";
    return out.str();
}

}  // namespace

std::string encode_trial(const GaitCycle& cycle) {
    for (const ChannelId& id : canonical_channels()) {
        if (!cycle.channels.count(id))
            throw EncodeError("encode_trial: missing channel " + channel_name(id));
    }
    return render_hierarchy(
        [&](const ChannelId& id, int t) { return format_2dp(cycle.channels.at(id)[t]); });
}

FeatureVector decode_trial(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw EncodeError(std::string("decode_trial: ") + e.what());
    }
    FeatureVector v;
    v.reserve(kFeatureDim);
    try {
        for (const ChannelId& id : canonical_channels()) {
            const auto& leaf =
                j.at(std::string(to_string(id.feature))).at(std::string(to_string(id.side)));
            for (int t = 0; t < kTimepoints; ++t) {
                v.push_back(leaf.at("t" + std::to_string(t * 10)).get<double>());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw EncodeError(std::string("decode_trial: ") + e.what());
    }
    return v;
}

double percentile_linear(std::vector<double> values, double p) {
    if (values.empty()) throw EncodeError("percentile of empty sample");
    std::sort(values.begin(), values.end());
    const double rank = p / 100.0 * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

ReferenceStats build_reference_stats_from_cycles(const std::vector<const GaitCycle*>& normals,
                                                 const std::string& excluded_subject) {
    std::set<std::string> subjects;
    for (const GaitCycle* c : normals) {
        if (c->label != ClassLabel::NORMAL)
            throw EncodeError("reference stats input must be NORMAL cycles only");
        if (c->subject_id == excluded_subject)
            throw EncodeError("reference stats input contains the excluded subject");
        subjects.insert(c->subject_id);
    }
    if (subjects.size() < 2)
        throw EncodeError("reference stats need NORMAL cycles from >= 2 subjects");

    ReferenceStats stats;
    stats.excluded_subject = excluded_subject;
    stats.source_cycles = static_cast<int>(normals.size());
    for (const ChannelId& id : canonical_channels()) {
        auto& cells = stats.cells[id];
        for (int t = 0; t < kTimepoints; ++t) {
            std::vector<double> sample;
            sample.reserve(normals.size());
            for (const GaitCycle* c : normals) sample.push_back(c->channels.at(id)[t]);
            double mean = 0.0;
            for (double v : sample) mean += v;
            mean /= static_cast<double>(sample.size());
            double var = 0.0;
            for (double v : sample) var += (v - mean) * (v - mean);
            var /= static_cast<double>(sample.size());
            cells[t] = {mean, std::sqrt(var), percentile_linear(sample, 5.0),
                        percentile_linear(sample, 95.0)};
        }
    }
    return stats;
}

ReferenceStats build_reference_stats(const Dataset& dataset,
                                     const std::string& excluded_subject) {
    std::vector<const GaitCycle*> normals;
    for (const auto& c : dataset.cycles) {
        if (c.label == ClassLabel::NORMAL && c.subject_id != excluded_subject)
            normals.push_back(&c);
    }
    return build_reference_stats_from_cycles(normals, excluded_subject);
}

std::string render_reference(const ReferenceStats& stats) {
    for (const ChannelId& id : canonical_channels()) {
        if (!stats.cells.count(id))
            throw EncodeError("render_reference: missing channel " + channel_name(id));
    }
    return render_hierarchy([&](const ChannelId& id, int t) {
        const ReferenceCell& c = stats.cells.at(id)[t];
        return "{\"mean\": " + format_2dp(c.mean) + ", \"sd\": " + format_2dp(c.sd) +
               ", \"p5\": " + format_2dp(c.p5) + ", \"p95\": " + format_2dp(c.p95) + "}";
    });
}

}  // namespace gaitbench
