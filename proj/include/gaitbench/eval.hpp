#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gaitbench/cycle.hpp"
#include "gaitbench/llm/backend.hpp"
#include "gaitbench/metrics.hpp"
#include "gaitbench/ocsvm.hpp"

namespace gaitbench {

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Fold {
    int fold_id = 0;
    std::string test_subject;
    std::vector<std::string> train_subjects;
};

struct FoldPlan {
    std::vector<Fold> folds;
};

// One fold per subject, ordered by subject id. Errors below 2 subjects.
FoldPlan loso_split(const Dataset& dataset);

// Records which subjects' cycle data a training-side computation touched;
// the leakage guard asserts the held-out subject never appears.
class AccessLog {
  public:
    void record(const std::string& subject_id) const;
    std::set<std::string> subjects() const;

  private:
    mutable std::mutex mutex_;
    mutable std::set<std::string> subjects_;
};

// The only path by which experiments read training cycles: every access to
// a cycle is recorded in the attached log.
class TrainView {
  public:
    TrainView(std::vector<const GaitCycle*> cycles, std::shared_ptr<const AccessLog> log);

    std::size_t size() const { return cycles_.size(); }
    const GaitCycle& operator[](std::size_t i) const;

  private:
    std::vector<const GaitCycle*> cycles_;
    std::shared_ptr<const AccessLog> log_;
};

TrainView make_train_view(const Dataset& dataset, const Fold& fold,
                          std::shared_ptr<const AccessLog> log);

struct FoldAudit {
    int fold_id = 0;
    std::string test_subject;
    std::set<std::string> accessed_subjects;  // during training-side computation
};

using AuditTrail = std::vector<FoldAudit>;

struct PredictionRecord {
    std::string subject_id;
    ClassLabel truth = ClassLabel::NORMAL;
    int cycle_index = 0;
    int fold_id = 0;
    std::optional<ClassLabel> predicted;         // multiclass arms
    std::optional<BinaryLabel> predicted_binary; // ocsvm arm
    std::optional<Confidence> confidence;
    std::optional<std::string> justification;
    int attempts = 1;
    bool fence_stripped = false;
    bool failed = false;
    std::string error;
    std::string prompt_hash;
    std::string raw_response;
    double latency_ms = 0.0;
};

struct PredictionSet {
    std::string classifier_id;
    std::string model_id;
    bool grounded = false;
    std::vector<PredictionRecord> records;
};

struct OcsvmFoldInfo {
    int fold_id = 0;
    std::string test_subject;
    double gamma = 0.0;
    double nu = 0.0;
    int degenerate_folds = 0;  // inner folds with single-class validation data
};

struct OcsvmExperimentResult {
    PredictionSet predictions;
    std::vector<OcsvmFoldInfo> tuning;
};

PredictionSet run_knn_experiment(const Dataset& dataset, int k, bool standardize,
                                 AuditTrail* audit = nullptr);

// Inner tuning per fold (stratified 3-fold on training samples), retrain on
// all training NORMAL samples, predict the held-out subject. Inputs are
// standardized per fold.
OcsvmExperimentResult run_ocsvm_experiment(const Dataset& dataset,
                                           const TuningGrid* grid, std::uint64_t seed,
                                           AuditTrail* audit = nullptr);

struct LlmExperimentOptions {
    bool grounded = true;
    std::string model_id = "mock";
    ClassifyPolicy policy;
};

// Grounded runs rebuild the reference payload per fold with the test
// subject's NORMAL cycles excluded. Terminal classification failures are
// recorded as failed records, never dropped.
PredictionSet run_llm_experiment(const Dataset& dataset, Backend& backend,
                                 const LlmExperimentOptions& options,
                                 AuditTrail* audit = nullptr);

ConfusionMatrix confusion_multiclass(const PredictionSet& preds);
ConfusionMatrix confusion_binary(const PredictionSet& preds);

struct ConfidenceStratum {
    Confidence level = Confidence::high;
    int n = 0;
    double fraction = 0.0;  // of all scored records
    bool sufficient = true; // metrics suppressed when n < threshold
    double mcc = 0.0;
    double macro_f1 = 0.0;
};

// Multiclass metrics per self-rated confidence level. Errors if any scored
// record lacks a confidence rating.
std::vector<ConfidenceStratum> stratify_by_confidence(const PredictionSet& preds,
                                                      int min_n = 5);

// Results bundle: predictions.jsonl, metrics.json, confusion CSVs,
// diagnostics.json and (when present) tuning.json.
void write_bundle(const std::string& dir, const PredictionSet& preds,
                  const std::vector<OcsvmFoldInfo>* tuning = nullptr);

std::string fnv1a_hex(const std::string& text);

}  // namespace gaitbench
