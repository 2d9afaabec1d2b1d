#include "gaitbench/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "gaitbench/generator.hpp"
#include "gaitbench/knn.hpp"
#include "gaitbench/llm/encode.hpp"
#include "gaitbench/llm/prompt.hpp"
#include "gaitbench/preprocess.hpp"
#include "gaitbench/rng.hpp"

namespace gaitbench {

FoldPlan loso_split(const Dataset& dataset) {
    const std::set<std::string> subjects = dataset.subjects();
    if (subjects.size() < 2) throw EvalError("loso_split: need at least 2 subjects");
    FoldPlan plan;
    int id = 0;
    for (const auto& test : subjects) {
        Fold fold;
        fold.fold_id = id++;
        fold.test_subject = test;
        for (const auto& s : subjects) {
            if (s != test) fold.train_subjects.push_back(s);
        }
        plan.folds.push_back(std::move(fold));
    }
    return plan;
}

void AccessLog::record(const std::string& subject_id) const {
    std::lock_guard lock(mutex_);
    subjects_.insert(subject_id);
}

std::set<std::string> AccessLog::subjects() const {
    std::lock_guard lock(mutex_);
    return subjects_;
}

TrainView::TrainView(std::vector<const GaitCycle*> cycles,
                     std::shared_ptr<const AccessLog> log)
    : cycles_(std::move(cycles)), log_(std::move(log)) {}

const GaitCycle& TrainView::operator[](std::size_t i) const {
    const GaitCycle& c = *cycles_.at(i);
    if (log_) log_->record(c.subject_id);
    return c;
}

TrainView make_train_view(const Dataset& dataset, const Fold& fold,
                          std::shared_ptr<const AccessLog> log) {
    std::vector<const GaitCycle*> cycles;
    for (const auto& c : dataset.cycles) {
        if (c.subject_id != fold.test_subject) cycles.push_back(&c);
    }
    return TrainView(std::move(cycles), std::move(log));
}

namespace {

std::vector<const GaitCycle*> test_cycles(const Dataset& dataset, const Fold& fold) {
    std::vector<const GaitCycle*> out;
    for (const auto& c : dataset.cycles) {
        if (c.subject_id == fold.test_subject) out.push_back(&c);
    }
    return out;
}

PredictionRecord base_record(const GaitCycle& c, int fold_id) {
    PredictionRecord r;
    r.subject_id = c.subject_id;
    r.truth = c.label;
    r.cycle_index = c.cycle_index;
    r.fold_id = fold_id;
    return r;
}

void push_audit(AuditTrail* audit, const Fold& fold, const AccessLog& log) {
    if (!audit) return;
    audit->push_back({fold.fold_id, fold.test_subject, log.subjects()});
}

}  // namespace

PredictionSet run_knn_experiment(const Dataset& dataset, int k, bool standardize,
                                 AuditTrail* audit) {
    const FoldPlan plan = loso_split(dataset);
    PredictionSet out;
    out.classifier_id = "knn";
    for (const Fold& fold : plan.folds) {
        auto log = std::make_shared<AccessLog>();
        const TrainView train = make_train_view(dataset, fold, log);

        std::vector<FeatureVector> vectors;
        std::vector<ClassLabel> labels;
        vectors.reserve(train.size());
        for (std::size_t i = 0; i < train.size(); ++i) {
            const GaitCycle& c = train[i];
            vectors.push_back(vectorize(c));
            labels.push_back(c.label);
        }
        std::optional<Standardizer> scaler;
        if (standardize) {
            scaler = Standardizer::fit(vectors);
            for (auto& v : vectors) v = scaler->apply(v);
        }
        const KnnModel model(std::move(vectors), std::move(labels), k);

        for (const GaitCycle* c : test_cycles(dataset, fold)) {
            FeatureVector v = vectorize(*c);
            if (scaler) v = scaler->apply(v);
            PredictionRecord r = base_record(*c, fold.fold_id);
            r.predicted = model.predict(v);
            out.records.push_back(std::move(r));
        }
        push_audit(audit, fold, *log);
    }
    return out;
}

OcsvmExperimentResult run_ocsvm_experiment(const Dataset& dataset, const TuningGrid* grid,
                                           std::uint64_t seed, AuditTrail* audit) {
    const FoldPlan plan = loso_split(dataset);
    OcsvmExperimentResult result;
    result.predictions.classifier_id = "ocsvm";
    for (const Fold& fold : plan.folds) {
        auto log = std::make_shared<AccessLog>();
        const TrainView train = make_train_view(dataset, fold, log);

        std::vector<FeatureVector> vectors;
        std::vector<BinaryLabel> labels;
        std::vector<FeatureVector> raw_normals;
        for (std::size_t i = 0; i < train.size(); ++i) {
            const GaitCycle& c = train[i];
            vectors.push_back(vectorize(c));
            labels.push_back(project_binary(c.label));
            if (labels.back() == BinaryLabel::NORMAL) raw_normals.push_back(vectors.back());
        }
        // Scale by the target-class distribution: pooling the deviant classes
        // into the fit would inflate exactly the dimensions that carry the
        // class signatures and flatten the novelty signal.
        const Standardizer scaler = Standardizer::fit(raw_normals);
        for (auto& v : vectors) v = scaler.apply(v);

        const TuningGrid fold_grid = grid ? *grid : default_tuning_grid(vectors);
        const TuningReport report =
            tune_ocsvm(vectors, labels, fold_grid,
                       derive_seed(seed, 40, static_cast<std::uint64_t>(fold.fold_id)));

        std::vector<FeatureVector> normals;
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            if (labels[i] == BinaryLabel::NORMAL) normals.push_back(vectors[i]);
        }
        const OcsvmModel model = ocsvm_train(normals, report.gamma, report.nu);

        int degenerate = 0;
        for (const TuningCell& cell : report.cells) {
            if (cell.gamma == report.gamma && cell.nu == report.nu)
                degenerate = cell.degenerate_folds;
        }
        result.tuning.push_back(
            {fold.fold_id, fold.test_subject, report.gamma, report.nu, degenerate});

        for (const GaitCycle* c : test_cycles(dataset, fold)) {
            PredictionRecord r = base_record(*c, fold.fold_id);
            r.predicted_binary = ocsvm_predict(model, scaler.apply(vectorize(*c)));
            result.predictions.records.push_back(std::move(r));
        }
        push_audit(audit, fold, *log);
    }
    return result;
}

PredictionSet run_llm_experiment(const Dataset& dataset, Backend& backend,
                                 const LlmExperimentOptions& options, AuditTrail* audit) {
    const FoldPlan plan = loso_split(dataset);
    PredictionSet out;
    out.classifier_id = "llm";
    out.model_id = options.model_id;
    out.grounded = options.grounded;
    const std::string& template_text =
        options.grounded ? grounded_prompt_template() : ungrounded_prompt_template();

    for (const Fold& fold : plan.folds) {
        auto log = std::make_shared<AccessLog>();
        std::optional<std::string> reference_text;
        if (options.grounded) {
            const TrainView train = make_train_view(dataset, fold, log);
            std::vector<const GaitCycle*> normals;
            for (std::size_t i = 0; i < train.size(); ++i) {
                const GaitCycle& c = train[i];  // records access
                if (c.label == ClassLabel::NORMAL) normals.push_back(&c);
            }
            reference_text = render_reference(
                build_reference_stats_from_cycles(normals, fold.test_subject));
        }

        for (const GaitCycle* c : test_cycles(dataset, fold)) {
            const std::string prompt =
                assemble_prompt(encode_trial(*c), reference_text, template_text);
            PredictionRecord r = base_record(*c, fold.fold_id);
            r.prompt_hash = fnv1a_hex(prompt);
            const auto t0 = std::chrono::steady_clock::now();
            const ClassifyOutcome outcome = classify_trial(backend, prompt, options.policy);
            r.latency_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
            if (outcome.ok()) {
                r.predicted = outcome.verdict->predicted;
                r.confidence = outcome.verdict->confidence;
                r.justification = outcome.verdict->justification;
                r.attempts = outcome.verdict->attempts;
                r.fence_stripped = outcome.verdict->fence_stripped;
                r.raw_response = outcome.verdict->raw_response;
            } else {
                r.failed = true;
                r.error = outcome.failure->detail;
                r.attempts = outcome.failure->attempts;
                r.raw_response = outcome.failure->last_raw;
            }
            out.records.push_back(std::move(r));
        }
        push_audit(audit, fold, *log);
    }
    return out;
}

ConfusionMatrix confusion_multiclass(const PredictionSet& preds) {
    std::vector<std::string> labels;
    for (ClassLabel l : kAllLabels) labels.emplace_back(to_string(l));
    ConfusionMatrix cm(std::move(labels));
    for (const auto& r : preds.records) {
        if (r.failed) continue;
        if (!r.predicted) throw MetricError("record lacks a multiclass prediction");
        cm.add(std::string(to_string(r.truth)), std::string(to_string(*r.predicted)));
    }
    return cm;
}

ConfusionMatrix confusion_binary(const PredictionSet& preds) {
    ConfusionMatrix cm({"NORMAL", "NOT_NORMAL"});
    for (const auto& r : preds.records) {
        if (r.failed) continue;
        const BinaryLabel pred = r.predicted_binary ? *r.predicted_binary
                                                    : project_binary(r.predicted.value());
        cm.add(std::string(to_string(project_binary(r.truth))),
               std::string(to_string(pred)));
    }
    return cm;
}

std::vector<ConfidenceStratum> stratify_by_confidence(const PredictionSet& preds,
                                                      int min_n) {
    int total = 0;
    for (const auto& r : preds.records) {
        if (r.failed) continue;
        if (!r.confidence) throw EvalError("stratify: record lacks a confidence rating");
        ++total;
    }
    if (total == 0) throw EvalError("stratify: no scored records");

    std::vector<ConfidenceStratum> out;
    for (Confidence level : {Confidence::high, Confidence::medium, Confidence::low}) {
        PredictionSet subset;
        for (const auto& r : preds.records) {
            if (!r.failed && *r.confidence == level) subset.records.push_back(r);
        }
        ConfidenceStratum s;
        s.level = level;
        s.n = static_cast<int>(subset.records.size());
        s.fraction = static_cast<double>(s.n) / static_cast<double>(total);
        s.sufficient = s.n >= min_n;
        if (s.sufficient) {
            const ConfusionMatrix cm = confusion_multiclass(subset);
            s.mcc = mcc(cm);
            s.macro_f1 = macro_f1(cm);
        }
        out.push_back(s);
    }
    return out;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace gaitbench
