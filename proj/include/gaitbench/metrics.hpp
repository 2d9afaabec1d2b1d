#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gaitbench {

struct MetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rows = truth, columns = prediction, over an ordered label set.
class ConfusionMatrix {
  public:
    explicit ConfusionMatrix(std::vector<std::string> labels);

    void add(const std::string& truth, const std::string& predicted, long count = 1);

    long at(std::size_t truth, std::size_t pred) const {
        return counts_[truth * labels_.size() + pred];
    }
    long& at(std::size_t truth, std::size_t pred) {
        return counts_[truth * labels_.size() + pred];
    }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    long total() const;

    std::string to_csv() const;

  private:
    std::vector<std::string> labels_;
    std::vector<long> counts_;
};

// Generalized (covariance-form) MCC for any label count; zero denominator
// factors give 0. Errors on an empty matrix.
double mcc(const ConfusionMatrix& cm);

// Closed-form 2x2 MCC (TP*TN - FP*FN over the product of marginals), with
// row/column 0 as the positive class. Algebraically equal to mcc() on 2x2
// input; kept separate so the two routes can be cross-checked.
double mcc_binary(const ConfusionMatrix& cm);

// Unweighted mean of per-class F1. A class with P + R = 0 contributes 0;
// classes absent from both truth and prediction are excluded.
double macro_f1(const ConfusionMatrix& cm);

}  // namespace gaitbench
