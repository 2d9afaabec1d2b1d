#include "gaitbench/llm/backend.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <thread>

#include "gaitbench/preprocess.hpp"

#include <json.hpp>

#include "gaitbench/llm/encode.hpp"

namespace gaitbench {

ClassifyOutcome classify_trial(Backend& backend, const std::string& prompt,
                               const ClassifyPolicy& policy) {
    ClassifyOutcome outcome;
    const int max_attempts = 1 + policy.max_retries;
    std::string last_raw;
    std::string last_error;
    ClassifyFailure::Kind last_kind = ClassifyFailure::Kind::schema;
    double backoff_ms = policy.backoff_base_ms;

    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        std::string raw;
        try {
            raw = backend.complete(prompt);
        } catch (const TransportError& e) {
            last_kind = ClassifyFailure::Kind::transport;
            last_error = e.what();
            if (!e.retryable) {
                outcome.failure = {last_kind, last_error, "", attempt};
                return outcome;
            }
            if (attempt < max_attempts) {
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(static_cast<long>(backoff_ms)));
                backoff_ms *= policy.backoff_factor;
            }
            continue;
        }
        last_raw = raw;
        VerdictOrError parsed = parse_verdict(raw);
        if (auto* verdict = std::get_if<LlmVerdict>(&parsed)) {
            verdict->attempts = attempt;
            outcome.verdict = std::move(*verdict);
            return outcome;
        }
        const auto& err = std::get<SchemaError>(parsed);
        last_kind = ClassifyFailure::Kind::schema;
        last_error = std::string(to_string(err.kind)) + ": " + err.detail;
    }
    outcome.failure = {last_kind, last_error, last_raw, max_attempts};
    return outcome;
}

MockBackend::MockBackend(std::map<ClassLabel, FeatureVector> centroids)
    : centroids_(std::move(centroids)) {
    if (centroids_.empty()) throw std::invalid_argument("MockBackend: no centroids");
}

void MockBackend::inject_fault(Fault fault) {
    std::lock_guard lock(mutex_);
    faults_.push_back(fault);
}

ClassLabel MockBackend::classify_vector(const FeatureVector& v) const {
    ClassLabel best = centroids_.begin()->first;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& [label, centroid] : centroids_) {
        double d = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double t = v[i] - centroid[i];
            d += t * t;
        }
        if (d < best_d) {
            best_d = d;
            best = label;
        }
    }
    return best;
}

std::string MockBackend::complete(const std::string& prompt) {
    {
        std::lock_guard lock(mutex_);
        if (!faults_.empty()) {
            const Fault f = faults_.front();
            faults_.pop_front();
            switch (f) {
                case Fault::truncate:
                    return "{\"class\": \"NORMAL\", \"confi";
                case Fault::extra_field:
                    return "{\"class\": \"NORMAL\", \"confidence\": \"high\", "
                           "\"justification\": \"x\", \"debug\": 1}";
                case Fault::bad_class:
                    return "{\"class\": \"WOBBLY\", \"confidence\": \"high\", "
                           "\"justification\": \"x\"}";
                case Fault::prose:
                    return "The trial looks like normal gait to me.";
                case Fault::transport:
                    throw TransportError("injected transport fault", true);
            }
        }
    }

    static const std::string marker = "TRIAL DATA (% Gait Cycle): ";
    const std::size_t pos = prompt.rfind(marker);
    if (pos == std::string::npos)
        throw std::runtime_error("MockBackend: no TRIAL DATA block in prompt");
    std::size_t end = prompt.find('\n', pos);
    if (end == std::string::npos) end = prompt.size();
    const std::string payload = prompt.substr(pos + marker.size(), end - pos - marker.size());
    const FeatureVector v = decode_trial(payload);

    // Rank centroids by squared-Euclidean distance.
    ClassLabel best = centroids_.begin()->first;
    ClassLabel second = best;
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    for (const auto& [label, centroid] : centroids_) {
        double d = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double t = v[i] - centroid[i];
            d += t * t;
        }
        if (d < d1) {
            d2 = d1;
            second = best;
            d1 = d;
            best = label;
        } else if (d < d2) {
            d2 = d;
            second = label;
        }
    }
    const double ratio = d2 > 0.0 ? std::sqrt(d1 / d2) : 1.0;
    const char* confidence = ratio < 0.8 ? "high" : (ratio > 0.95 ? "low" : "medium");

    nlohmann::ordered_json j;
    j["class"] = std::string(to_string(best));
    j["confidence"] = confidence;
    j["justification"] = "Trial kinematics are closest to the " +
                         std::string(to_string(best)) + " centroid, with " +
                         std::string(to_string(second)) + " second nearest.";
    return j.dump();
}

std::map<ClassLabel, FeatureVector> class_centroids(
    const std::vector<FeatureVector>& vectors, const std::vector<ClassLabel>& labels) {
    if (vectors.size() != labels.size() || vectors.empty())
        throw std::invalid_argument("class_centroids: bad input");
    std::map<ClassLabel, std::pair<FeatureVector, int>> acc;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        auto& [sum, count] = acc[labels[i]];
        if (sum.empty()) sum.assign(vectors[i].size(), 0.0);
        for (std::size_t d = 0; d < vectors[i].size(); ++d) sum[d] += vectors[i][d];
        ++count;
    }
    std::map<ClassLabel, FeatureVector> out;
    for (auto& [label, sc] : acc) {
        for (double& v : sc.first) v /= sc.second;
        out[label] = std::move(sc.first);
    }
    return out;
}

std::map<ClassLabel, FeatureVector> mock_centroid_table(const Dataset& dataset) {
    const std::set<std::string> all = dataset.subjects();
    if (all.empty()) throw std::invalid_argument("mock_centroid_table: empty dataset");
    const std::size_t take = std::max<std::size_t>(2, (all.size() + 4) / 5);
    std::set<std::string> split;
    for (const auto& s : all) {
        split.insert(s);
        if (split.size() == take) break;
    }
    std::vector<FeatureVector> vectors;
    std::vector<ClassLabel> labels;
    for (const auto& c : dataset.cycles) {
        if (!split.count(c.subject_id)) continue;
        vectors.push_back(vectorize(c));
        labels.push_back(c.label);
    }
    return class_centroids(vectors, labels);
}

}  // namespace gaitbench
