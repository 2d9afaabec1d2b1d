#include "gaitbench/knn.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace gaitbench {

namespace {

double squared_distance(const FeatureVector& a, const FeatureVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        d += t * t;
    }
    return d;
}

}  // namespace

KnnModel::KnnModel(std::vector<FeatureVector> vectors, std::vector<ClassLabel> labels, int k)
    : vectors_(std::move(vectors)), labels_(std::move(labels)), k_(k) {
    if (vectors_.empty()) throw ModelError("empty training set");
    if (vectors_.size() != labels_.size()) throw ModelError("vector/label count mismatch");
    if (k_ < 1 || static_cast<std::size_t>(k_) > vectors_.size())
        throw ModelError("k out of range");
    const std::size_t dim = vectors_.front().size();
    for (const auto& v : vectors_) {
        if (v.size() != dim) throw ModelError("inconsistent vector lengths");
    }
}

ClassLabel KnnModel::predict(const FeatureVector& x) const {
    if (x.size() != vectors_.front().size()) throw ModelError("query dimension mismatch");

    std::vector<std::pair<double, std::size_t>> dist(vectors_.size());
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        dist[i] = {squared_distance(x, vectors_[i]), i};
    }
    std::partial_sort(dist.begin(), dist.begin() + k_, dist.end());

    std::map<ClassLabel, std::pair<int, double>> votes;  // label -> (count, summed dist)
    for (int i = 0; i < k_; ++i) {
        auto& [count, sum] = votes[labels_[dist[i].second]];
        ++count;
        sum += dist[i].first;
    }

    ClassLabel best = ClassLabel::NORMAL;
    int best_count = -1;
    double best_sum = std::numeric_limits<double>::infinity();
    for (ClassLabel l : kAllLabels) {  // canonical order is the final tie-break
        auto it = votes.find(l);
        if (it == votes.end()) continue;
        const auto [count, sum] = it->second;
        if (count > best_count || (count == best_count && sum < best_sum)) {
            best = l;
            best_count = count;
            best_sum = sum;
        }
    }
    return best;
}

}  // namespace gaitbench
