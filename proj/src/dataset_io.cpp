#include "gaitbench/dataset_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gaitbench {

namespace {

using ordered_json = nlohmann::ordered_json;

// Channels grouped by feature in canonical order, sides nested inside.
ordered_json channels_to_json(const ChannelMap& channels) {
    ordered_json out = ordered_json::object();
    for (const ChannelId& id : canonical_channels()) {
        auto it = channels.find(id);
        if (it == channels.end()) continue;
        ordered_json arr = ordered_json::array();
        for (double v : it->second) arr.push_back(v);
        out[std::string(to_string(id.feature))][std::string(to_string(id.side))] =
            std::move(arr);
    }
    return out;
}

template <typename ChannelValue>
void parse_channels(const nlohmann::json& j, int line_no,
                    std::map<ChannelId, ChannelValue>& out) {
    for (const auto& [fname, sides] : j.items()) {
        auto feature = parse_feature(fname);
        if (!feature) {
            throw IoError("line " + std::to_string(line_no) + ": unknown feature '" + fname +
                          "'");
        }
        for (const auto& [sname, arr] : sides.items()) {
            auto side = parse_side(sname);
            if (!side || !is_valid_channel({*feature, *side})) {
                throw IoError("line " + std::to_string(line_no) + ": invalid side '" + sname +
                              "' for feature '" + fname + "'");
            }
            ChannelValue values{};
            if constexpr (std::is_same_v<ChannelValue, Waveform11>) {
                if (arr.size() != kTimepoints) {
                    throw IoError("line " + std::to_string(line_no) + ": channel " + fname +
                                  "/" + sname + " has " + std::to_string(arr.size()) +
                                  " samples, expected 11");
                }
                for (int t = 0; t < kTimepoints; ++t)
                    values[t] = arr[t].template get<double>();
            } else {
                for (const auto& v : arr) values.push_back(v.template get<double>());
            }
            out[{*feature, *side}] = std::move(values);
        }
    }
}

template <typename CycleT>
CycleT parse_cycle_common(const std::string& line, int line_no) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("line " + std::to_string(line_no) + ": " + e.what());
    }
    CycleT c;
    try {
        c.subject_id = j.at("subject_id").get<std::string>();
        const auto label = parse_class_label(j.at("label").get<std::string>());
        if (!label) {
            throw IoError("line " + std::to_string(line_no) + ": unknown label '" +
                          j.at("label").get<std::string>() + "'");
        }
        c.label = *label;
        c.cycle_index = j.at("cycle_index").get<int>();
        parse_channels(j.at("channels"), line_no, c.channels);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("line " + std::to_string(line_no) + ": " + e.what());
    }
    return c;
}

}  // namespace

void write_dataset(std::ostream& out, const Dataset& d) {
    for (const auto& c : d.cycles) {
        ordered_json j;
        j["subject_id"] = c.subject_id;
        j["label"] = std::string(to_string(c.label));
        j["cycle_index"] = c.cycle_index;
        j["channels"] = channels_to_json(c.channels);
        out << j.dump() << '\n';
    }
}

void write_dataset_file(const std::string& path, const Dataset& d) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    write_dataset(f, d);
    if (!f) throw IoError("write failed: " + path);
}

Dataset read_dataset(std::istream& in) {
    Dataset d;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        d.cycles.push_back(parse_cycle_common<GaitCycle>(line, line_no));
    }
    return d;
}

Dataset read_dataset_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    return read_dataset(f);
}

std::vector<RawCycle> read_raw_cycles(std::istream& in) {
    std::vector<RawCycle> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        out.push_back(parse_cycle_common<RawCycle>(line, line_no));
    }
    return out;
}

std::vector<RawCycle> read_raw_cycles_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    return read_raw_cycles(f);
}

}  // namespace gaitbench
