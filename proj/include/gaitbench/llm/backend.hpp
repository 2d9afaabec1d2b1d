#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "gaitbench/cycle.hpp"
#include "gaitbench/llm/verdict.hpp"
#include "gaitbench/preprocess_types.hpp"

namespace gaitbench {

struct TransportError : std::runtime_error {
    TransportError(const std::string& what, bool retryable_)
        : std::runtime_error(what), retryable(retryable_) {}
    bool retryable;
};

// A chat-completion endpoint: one stateless prompt in, raw response text out.
// Implementations must be callable from multiple threads.
class Backend {
  public:
    virtual ~Backend() = default;
    virtual std::string complete(const std::string& prompt) = 0;
};

struct BackendSpec {
    enum class Kind { http, mock };
    Kind kind = Kind::mock;
    std::string model_id = "mock";
    std::string endpoint_url;            // http kind only
    bool supports_temperature = false;   // send temperature: 0 only when true
    int max_retries = 3;
    int max_concurrent = 1;
    double timeout_sec = 120.0;
};

struct ClassifyPolicy {
    int max_retries = 3;      // resubmissions after the first attempt
    int backoff_base_ms = 200;
    double backoff_factor = 2.0;
};

struct ClassifyFailure {
    enum class Kind { schema, transport };
    Kind kind = Kind::schema;
    std::string detail;
    std::string last_raw;  // last raw response for schema failures
    int attempts = 0;
};

struct ClassifyOutcome {
    std::optional<LlmVerdict> verdict;
    std::optional<ClassifyFailure> failure;
    bool ok() const { return verdict.has_value(); }
};

// Sends the identical prompt until a schema-valid verdict arrives, up to
// 1 + max_retries total attempts. Retryable transport errors back off
// exponentially against the same attempt cap; non-retryable ones are
// terminal immediately.
ClassifyOutcome classify_trial(Backend& backend, const std::string& prompt,
                               const ClassifyPolicy& policy);

// Offline stand-in: decodes the TRIAL DATA payload out of the prompt and
// answers by nearest class centroid. Fault injection produces malformed
// responses on demand.
class MockBackend : public Backend {
  public:
    enum class Fault { truncate, extra_field, bad_class, prose, transport };

    explicit MockBackend(std::map<ClassLabel, FeatureVector> centroids);

    // Queue a malformed response for an upcoming call (FIFO).
    void inject_fault(Fault fault);

    std::string complete(const std::string& prompt) override;

    // Nearest-centroid call on a raw vector; the oracle the mock's verdicts
    // are compared against.
    ClassLabel classify_vector(const FeatureVector& v) const;

  private:
    std::map<ClassLabel, FeatureVector> centroids_;
    std::deque<Fault> faults_;
    std::mutex mutex_;
};

// Builds per-class mean vectors from labeled training data.
std::map<ClassLabel, FeatureVector> class_centroids(
    const std::vector<FeatureVector>& vectors, const std::vector<ClassLabel>& labels);

// The mock's knowledge base: centroids computed from a fixed training split,
// the first max(2, ceil(n/5)) subjects in sorted id order. Keeping the split
// small leaves the stand-in imperfect on purpose.
std::map<ClassLabel, FeatureVector> mock_centroid_table(const Dataset& dataset);

// POST {endpoint}/chat/completions with a bearer credential from
// GAITBENCH_API_KEY. HTTP >= 500 and timeouts are retryable; 4xx terminal.
class HttpBackend : public Backend {
  public:
    explicit HttpBackend(const BackendSpec& spec);
    std::string complete(const std::string& prompt) override;

  private:
    BackendSpec spec_;
    std::string base_url_;
    std::string path_prefix_;
    std::string api_key_;
};

}  // namespace gaitbench
