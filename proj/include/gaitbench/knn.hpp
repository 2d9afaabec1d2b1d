#pragma once

#include <stdexcept>
#include <vector>

#include "gaitbench/labels.hpp"
#include "gaitbench/preprocess_types.hpp"

namespace gaitbench {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Squared-Euclidean KNN with deterministic tie handling: neighbors sorted by
// (distance, training index); vote ties broken by smallest summed distance
// among tied classes, then by canonical label order.
class KnnModel {
  public:
    KnnModel(std::vector<FeatureVector> vectors, std::vector<ClassLabel> labels, int k);

    ClassLabel predict(const FeatureVector& x) const;

    int k() const { return k_; }
    std::size_t size() const { return vectors_.size(); }

  private:
    std::vector<FeatureVector> vectors_;
    std::vector<ClassLabel> labels_;
    int k_;
};

}  // namespace gaitbench
