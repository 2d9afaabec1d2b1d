#include "gaitbench/preprocess.hpp"

#include <cmath>

namespace gaitbench {

Waveform11 spline_resample(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 4) throw PreprocessError("insufficient samples (need >= 4)");
    for (double v : samples) {
        if (!std::isfinite(v)) throw PreprocessError("non-finite input sample");
    }

    // Knots at x_i = i * h over [0, 100], h = 100 / (n-1). Second derivatives
    // from the standard natural-spline tridiagonal system, solved with the
    // Thomas algorithm.
    const double h = 100.0 / static_cast<double>(n - 1);
    std::vector<double> m(n, 0.0);  // second derivatives, m[0] = m[n-1] = 0
    if (n > 2) {
        const std::size_t k = n - 2;          // interior unknowns
        std::vector<double> diag(k, 4.0 * h); // uniform spacing
        std::vector<double> rhs(k);
        for (std::size_t i = 0; i < k; ++i) {
            rhs[i] = 6.0 * (samples[i + 2] - 2.0 * samples[i + 1] + samples[i]) / h;
        }
        // Forward sweep, off-diagonals are all h.
        for (std::size_t i = 1; i < k; ++i) {
            const double w = h / diag[i - 1];
            diag[i] -= w * h;
            rhs[i] -= w * rhs[i - 1];
        }
        m[k] = rhs[k - 1] / diag[k - 1];
        for (std::size_t i = k - 1; i >= 1; --i) {
            m[i] = (rhs[i - 1] - h * m[i + 1]) / diag[i - 1];
        }
    }

    Waveform11 out{};
    for (int t = 0; t < kTimepoints; ++t) {
        const double x = 10.0 * t;
        std::size_t i = static_cast<std::size_t>(std::floor(x / h));
        if (i >= n - 1) i = n - 2;
        const double x0 = static_cast<double>(i) * h;
        const double a = (x0 + h - x) / h;
        const double b = (x - x0) / h;
        out[t] = a * samples[i] + b * samples[i + 1] +
                 ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
    }
    return out;
}

GaitCycle time_normalize(const RawCycle& raw) {
    GaitCycle out;
    out.subject_id = raw.subject_id;
    out.label = raw.label;
    out.cycle_index = raw.cycle_index;
    std::size_t expected_len = 0;
    for (const ChannelId& id : canonical_channels()) {
        auto it = raw.channels.find(id);
        if (it == raw.channels.end()) {
            throw PreprocessError("missing channel: " + channel_name(id));
        }
        if (expected_len == 0) expected_len = it->second.size();
        if (it->second.size() != expected_len) {
            throw PreprocessError("channel " + channel_name(id) +
                                  ": sample count differs from other channels");
        }
        try {
            out.channels[id] = spline_resample(it->second);
        } catch (const PreprocessError& e) {
            throw PreprocessError("channel " + channel_name(id) + ": " + e.what());
        }
    }
    return out;
}

FeatureVector vectorize(const GaitCycle& cycle) {
    FeatureVector v;
    v.reserve(kFeatureDim);
    for (const ChannelId& id : canonical_channels()) {
        const Waveform11& w = cycle.channels.at(id);
        v.insert(v.end(), w.begin(), w.end());
    }
    return v;
}

ChannelMap devectorize(const FeatureVector& v) {
    if (v.size() != kFeatureDim) {
        throw PreprocessError("expected 143 values, got " + std::to_string(v.size()));
    }
    ChannelMap out;
    std::size_t pos = 0;
    for (const ChannelId& id : canonical_channels()) {
        Waveform11 w{};
        for (int t = 0; t < kTimepoints; ++t) w[t] = v[pos++];
        out[id] = w;
    }
    return out;
}

Standardizer Standardizer::fit(const std::vector<FeatureVector>& train) {
    if (train.empty()) throw PreprocessError("empty training set");
    const std::size_t dim = train.front().size();
    Standardizer s;
    s.mean_.assign(dim, 0.0);
    s.sd_.assign(dim, 0.0);
    for (const auto& v : train) {
        if (v.size() != dim) throw PreprocessError("inconsistent vector lengths");
        for (std::size_t i = 0; i < dim; ++i) s.mean_[i] += v[i];
    }
    for (double& m : s.mean_) m /= static_cast<double>(train.size());
    for (const auto& v : train) {
        for (std::size_t i = 0; i < dim; ++i) {
            const double d = v[i] - s.mean_[i];
            s.sd_[i] += d * d;
        }
    }
    for (double& sd : s.sd_) {
        sd = std::sqrt(sd / static_cast<double>(train.size()));  // population form
        if (sd < 1e-12) sd = 1.0;
    }
    return s;
}

FeatureVector Standardizer::apply(const FeatureVector& v) const {
    if (v.size() != mean_.size()) throw PreprocessError("dimension mismatch");
    FeatureVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean_[i]) / sd_[i];
    return out;
}

}  // namespace gaitbench
