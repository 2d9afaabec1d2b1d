#include <cmath>
#include <set>
#include <tuple>

#include "gaitbench/cycle.hpp"

namespace gaitbench {

std::set<std::string> Dataset::subjects() const {
    std::set<std::string> out;
    for (const auto& c : cycles) out.insert(c.subject_id);
    return out;
}

ValidationReport validate_dataset(const Dataset& d) {
    ValidationReport report;
    std::set<std::tuple<std::string, ClassLabel, int>> seen;
    for (const auto& c : d.cycles) {
        const auto key = std::make_tuple(c.subject_id, c.label, c.cycle_index);
        if (!seen.insert(key).second) {
            report.violations.push_back({c.subject_id, std::string(to_string(c.label)),
                                         c.cycle_index, "", -1, "duplicate-key",
                                         "duplicate (subject, label, cycle_index)"});
        }
        for (const ChannelId& id : canonical_channels()) {
            auto it = c.channels.find(id);
            if (it == c.channels.end()) {
                report.violations.push_back({c.subject_id, std::string(to_string(c.label)),
                                             c.cycle_index, channel_name(id), -1,
                                             "missing-channel", "channel absent"});
                continue;
            }
            for (int t = 0; t < kTimepoints; ++t) {
                if (!std::isfinite(it->second[t])) {
                    report.violations.push_back({c.subject_id, std::string(to_string(c.label)),
                                                 c.cycle_index, channel_name(id), t * 10,
                                                 "non-finite", "value is not finite"});
                }
            }
        }
        for (const auto& [id, w] : c.channels) {
            if (!is_valid_channel(id)) {
                report.violations.push_back({c.subject_id, std::string(to_string(c.label)),
                                             c.cycle_index, channel_name(id), -1,
                                             "extra-channel", "not a valid channel id"});
            }
        }
    }
    return report;
}

}  // namespace gaitbench
