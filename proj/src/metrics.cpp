#include "gaitbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gaitbench {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), counts_(labels_.size() * labels_.size(), 0) {
    if (labels_.empty()) throw MetricError("empty label set");
}

void ConfusionMatrix::add(const std::string& truth, const std::string& predicted,
                          long count) {
    const auto t = std::find(labels_.begin(), labels_.end(), truth);
    const auto p = std::find(labels_.begin(), labels_.end(), predicted);
    if (t == labels_.end()) throw MetricError("unknown truth label: " + truth);
    if (p == labels_.end()) throw MetricError("unknown predicted label: " + predicted);
    at(static_cast<std::size_t>(t - labels_.begin()),
       static_cast<std::size_t>(p - labels_.begin())) += count;
}

long ConfusionMatrix::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0L);
}

std::string ConfusionMatrix::to_csv() const {
    std::ostringstream out;
    out << "truth\\pred";
    for (const auto& l : labels_) out << "," << l;
    out << "\n";
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        out << labels_[i];
        for (std::size_t j = 0; j < labels_.size(); ++j) out << "," << at(i, j);
        out << "\n";
    }
    return out.str();
}

double mcc(const ConfusionMatrix& cm) {
    const std::size_t n = cm.size();
    const double s = static_cast<double>(cm.total());
    if (s == 0.0) throw MetricError("mcc: empty matrix");
    double c = 0.0, dot_pt = 0.0, pp = 0.0, tt = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        c += static_cast<double>(cm.at(k, k));
        double col = 0.0, row = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            col += static_cast<double>(cm.at(i, k));
            row += static_cast<double>(cm.at(k, i));
        }
        dot_pt += col * row;
        pp += col * col;
        tt += row * row;
    }
    // Single sqrt keeps perfect-diagonal matrices at exactly 1 (the product
    // of the exact integer factors is a perfect square there).
    const double den = std::sqrt((s * s - pp) * (s * s - tt));
    if (den == 0.0) return 0.0;
    return (c * s - dot_pt) / den;
}

double mcc_binary(const ConfusionMatrix& cm) {
    if (cm.size() != 2) throw MetricError("mcc_binary: matrix is not 2x2");
    if (cm.total() == 0) throw MetricError("mcc_binary: empty matrix");
    const double tp = static_cast<double>(cm.at(0, 0));
    const double fn = static_cast<double>(cm.at(0, 1));
    const double fp = static_cast<double>(cm.at(1, 0));
    const double tn = static_cast<double>(cm.at(1, 1));
    const double den = std::sqrt(tp + fp) * std::sqrt(tp + fn) * std::sqrt(tn + fp) *
                       std::sqrt(tn + fn);
    if (den == 0.0) return 0.0;
    return (tp * tn - fp * fn) / den;
}

double macro_f1(const ConfusionMatrix& cm) {
    const std::size_t n = cm.size();
    if (cm.total() == 0) throw MetricError("macro_f1: empty matrix");
    double sum = 0.0;
    int classes = 0;
    for (std::size_t k = 0; k < n; ++k) {
        long row = 0, col = 0;
        for (std::size_t i = 0; i < n; ++i) {
            row += cm.at(k, i);
            col += cm.at(i, k);
        }
        if (row == 0 && col == 0) continue;  // absent from truth and prediction
        ++classes;
        const double tp = static_cast<double>(cm.at(k, k));
        const double precision = col > 0 ? tp / static_cast<double>(col) : 0.0;
        const double recall = row > 0 ? tp / static_cast<double>(row) : 0.0;
        if (precision + recall > 0.0) sum += 2.0 * precision * recall / (precision + recall);
    }
    return classes > 0 ? sum / classes : 0.0;
}

}  // namespace gaitbench
