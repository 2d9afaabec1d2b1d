#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "gaitbench/eval.hpp"

namespace gaitbench {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw EvalError("cannot write " + path.string());
    f << text;
}

bool has_multiclass(const PredictionSet& preds) {
    for (const auto& r : preds.records) {
        if (!r.failed && !r.predicted) return false;
    }
    return true;
}

bool has_confidence(const PredictionSet& preds) {
    bool any = false;
    for (const auto& r : preds.records) {
        if (r.failed) continue;
        if (!r.confidence) return false;
        any = true;
    }
    return any;
}

std::string fraction_pct_2dp(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
    return buf;
}

}  // namespace

void write_bundle(const std::string& dir, const PredictionSet& preds,
                  const std::vector<OcsvmFoldInfo>* tuning) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    // predictions.jsonl -- everything deterministic; timing lives in
    // diagnostics.json instead.
    {
        std::ofstream f(fs::path(dir) / "predictions.jsonl", std::ios::binary);
        if (!f) throw EvalError("cannot write predictions.jsonl");
        for (const auto& r : preds.records) {
            ordered_json j;
            j["subject_id"] = r.subject_id;
            j["truth"] = std::string(to_string(r.truth));
            j["cycle_index"] = r.cycle_index;
            j["fold_id"] = r.fold_id;
            j["predicted"] =
                r.predicted ? ordered_json(std::string(to_string(*r.predicted))) : nullptr;
            j["predicted_binary"] =
                r.predicted_binary ? ordered_json(std::string(to_string(*r.predicted_binary)))
                                   : nullptr;
            j["confidence"] =
                r.confidence ? ordered_json(std::string(to_string(*r.confidence))) : nullptr;
            j["justification"] = r.justification ? ordered_json(*r.justification) : nullptr;
            j["attempts"] = r.attempts;
            j["fence_stripped"] = r.fence_stripped;
            j["failed"] = r.failed;
            j["error"] = r.error;
            j["prompt_hash"] = r.prompt_hash;
            j["raw_response"] = r.raw_response;
            f << j.dump() << '\n';
        }
    }

    ordered_json metrics;
    metrics["classifier"] = preds.classifier_id;
    if (!preds.model_id.empty()) metrics["model_id"] = preds.model_id;
    if (preds.classifier_id == "llm") metrics["grounded"] = preds.grounded;
    if (has_multiclass(preds)) {
        const ConfusionMatrix cm = confusion_multiclass(preds);
        metrics["multiclass"]["mcc"] = mcc(cm);
        metrics["multiclass"]["macro_f1"] = macro_f1(cm);
        write_text(fs::path(dir) / "confusion_multiclass.csv", cm.to_csv());
    }
    {
        const ConfusionMatrix cm = confusion_binary(preds);
        metrics["binary"]["mcc"] = mcc_binary(cm);
        metrics["binary"]["macro_f1"] = macro_f1(cm);
        write_text(fs::path(dir) / "confusion_binary.csv", cm.to_csv());
    }
    if (has_confidence(preds)) {
        ordered_json strata = ordered_json::object();
        for (const ConfidenceStratum& s : stratify_by_confidence(preds)) {
            ordered_json entry;
            entry["n"] = s.n;
            entry["pct_samples"] = fraction_pct_2dp(s.fraction);
            if (s.sufficient) {
                entry["mcc"] = s.mcc;
                entry["macro_f1"] = s.macro_f1;
            } else {
                entry["mcc"] = nullptr;
                entry["macro_f1"] = nullptr;
                entry["insufficient"] = true;
            }
            strata[std::string(to_string(s.level))] = entry;
        }
        metrics["by_confidence"] = strata;
    }
    write_text(fs::path(dir) / "metrics.json", metrics.dump(2) + "\n");

    if (tuning) {
        ordered_json arr = ordered_json::array();
        for (const auto& t : *tuning) {
            arr.push_back(ordered_json{{"fold_id", t.fold_id},
                                       {"test_subject", t.test_subject},
                                       {"gamma", t.gamma},
                                       {"nu", t.nu},
                                       {"degenerate_inner_folds", t.degenerate_folds}});
        }
        write_text(fs::path(dir) / "tuning.json", arr.dump(2) + "\n");
    }

    // Diagnostics: failures, fence-stripped count, attempts histogram, timing.
    ordered_json diag;
    ordered_json failures = ordered_json::array();
    int fence_count = 0;
    std::map<int, int> attempts_hist;
    double latency_sum = 0.0;
    for (const auto& r : preds.records) {
        if (r.fence_stripped) ++fence_count;
        ++attempts_hist[r.attempts];
        latency_sum += r.latency_ms;
        if (r.failed) {
            failures.push_back(ordered_json{{"subject_id", r.subject_id},
                                            {"truth", std::string(to_string(r.truth))},
                                            {"cycle_index", r.cycle_index},
                                            {"error", r.error}});
        }
    }
    diag["n_records"] = preds.records.size();
    diag["n_failed"] = failures.size();
    diag["failures"] = failures;
    diag["fence_stripped_count"] = fence_count;
    ordered_json hist = ordered_json::object();
    for (const auto& [attempts, count] : attempts_hist) {
        hist[std::to_string(attempts)] = count;
    }
    diag["attempts_histogram"] = hist;
    diag["mean_latency_ms"] =
        preds.records.empty() ? 0.0 : latency_sum / static_cast<double>(preds.records.size());
    write_text(fs::path(dir) / "diagnostics.json", diag.dump(2) + "\n");
}

}  // namespace gaitbench
