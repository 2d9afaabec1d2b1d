#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gaitbench/channels.hpp"
#include "gaitbench/generator.hpp"
#include "gaitbench/preprocess.hpp"

using namespace gaitbench;

namespace {

// Independent natural-spline oracle: assemble the full dense linear system
// for the knot second derivatives and solve it by Gaussian elimination with
// partial pivoting. Deliberately shares no code with spline_resample.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

double oracle_spline_eval(const std::vector<double>& y, double t) {
    const std::size_t n = y.size();
    const double h = 100.0 / static_cast<double>(n - 1);
    // Second-derivative system: natural ends, continuity rows inside.
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    a[0][0] = 1.0;
    a[n - 1][n - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        a[i][i - 1] = h / 6.0;
        a[i][i] = 2.0 * h / 3.0;
        a[i][i + 1] = h / 6.0;
        b[i] = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / h;
    }
    const std::vector<double> m = dense_solve(std::move(a), std::move(b));

    std::size_t seg = static_cast<std::size_t>(t / h);
    if (seg >= n - 1) seg = n - 2;
    const double t0 = static_cast<double>(seg) * h;
    const double u = t - t0;
    const double v = h - u;
    return m[seg] * v * v * v / (6.0 * h) + m[seg + 1] * u * u * u / (6.0 * h) +
           (y[seg] / h - m[seg] * h / 6.0) * v + (y[seg + 1] / h - m[seg + 1] * h / 6.0) * u;
}

RawCycle make_raw(int samples_per_channel) {
    RawCycle raw;
    raw.subject_id = "S01";
    raw.label = ClassLabel::NORMAL;
    raw.cycle_index = 0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-30.0, 30.0);
    for (const ChannelId& id : canonical_channels()) {
        std::vector<double> v(samples_per_channel);
        for (double& x : v) x = dist(rng);
        raw.channels[id] = std::move(v);
    }
    return raw;
}

}  // namespace

TEST_CASE("spline reproduces constants") {
    const std::vector<double> in(5, 5.0);
    const Waveform11 out = spline_resample(in);
    for (double v : out) CHECK(std::fabs(v - 5.0) < 1e-12);
}

TEST_CASE("spline reproduces a linear ramp") {
    std::vector<double> in(101);
    for (int i = 0; i <= 100; ++i) in[i] = static_cast<double>(i);
    const Waveform11 out = spline_resample(in);
    for (int k = 0; k < kTimepoints; ++k) {
        CHECK(std::fabs(out[k] - 10.0 * k) < 1e-12);
    }
}

TEST_CASE("spline matches the dense oracle on a sine wave") {
    std::vector<double> in(101);
    for (int i = 0; i <= 100; ++i)
        in[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 100.0);
    const Waveform11 out = spline_resample(in);
    for (int k = 0; k < kTimepoints; ++k) {
        const double expected = oracle_spline_eval(in, 10.0 * k);
        CHECK(std::fabs(out[k] - expected) < 1e-9);
    }
}

TEST_CASE("spline matches the dense oracle on random data of odd lengths") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (int n : {4, 7, 23, 57, 143}) {
        std::vector<double> in(n);
        for (double& v : in) v = dist(rng);
        const Waveform11 out = spline_resample(in);
        for (int k = 0; k < kTimepoints; ++k) {
            CHECK(std::fabs(out[k] - oracle_spline_eval(in, 10.0 * k)) < 1e-9);
        }
    }
}

TEST_CASE("spline is exact at coincident abscissae") {
    std::vector<double> in(11);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-20.0, 20.0);
    for (double& v : in) v = dist(rng);
    const Waveform11 out = spline_resample(in);
    for (int k = 0; k < kTimepoints; ++k) CHECK(out[k] == doctest::Approx(in[k]).epsilon(1e-12));
}

TEST_CASE("spline rejects short or non-finite input") {
    CHECK_THROWS_AS(spline_resample(std::vector<double>{1, 2, 3}), PreprocessError);
    CHECK_THROWS_AS(spline_resample(std::vector<double>{}), PreprocessError);
    std::vector<double> bad = {1, 2, std::nan(""), 4, 5};
    CHECK_THROWS_AS(spline_resample(bad), PreprocessError);
}

TEST_CASE("time_normalize resamples every channel") {
    const RawCycle raw = make_raw(150);
    const GaitCycle cycle = time_normalize(raw);
    CHECK(cycle.subject_id == "S01");
    CHECK(cycle.label == ClassLabel::NORMAL);
    CHECK(cycle.channels.size() == kNumChannels);
}

TEST_CASE("time_normalize passes 11-sample input through unchanged") {
    const RawCycle raw = make_raw(11);
    const GaitCycle cycle = time_normalize(raw);
    for (const auto& [id, values] : raw.channels) {
        const Waveform11& w = cycle.channels.at(id);
        for (int k = 0; k < kTimepoints; ++k)
            CHECK(w[k] == doctest::Approx(values[k]).epsilon(1e-12));
    }
}

TEST_CASE("time_normalize names the missing channel") {
    RawCycle raw = make_raw(30);
    raw.channels.erase({Feature::knee_flexion, Side::right});
    try {
        time_normalize(raw);
        FAIL("expected PreprocessError");
    } catch (const PreprocessError& e) {
        CHECK(std::string(e.what()).find("knee_flexion/right") != std::string::npos);
    }
}

TEST_CASE("vectorize emits 143 dims in canonical layout") {
    GeneratorConfig cfg;
    cfg.n_subjects = 1;
    cfg.cycles_per_class = 1;
    const Dataset d = generate_dataset(cfg);
    const FeatureVector v = vectorize(d.cycles.front());
    CHECK(v.size() == kFeatureDim);

    // Round trip.
    const ChannelMap back = devectorize(v);
    CHECK(back == d.cycles.front().channels);
}

TEST_CASE("vector layout is local: one edited timepoint moves one dim") {
    GeneratorConfig cfg;
    cfg.n_subjects = 1;
    cfg.cycles_per_class = 1;
    const Dataset d = generate_dataset(cfg);
    GaitCycle edited = d.cycles.front();
    edited.channels.at({Feature::knee_flexion, Side::right})[5] += 1.0;
    const FeatureVector a = vectorize(d.cycles.front());
    const FeatureVector b = vectorize(edited);
    int diffs = 0;
    std::size_t where = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) {
            ++diffs;
            where = i;
        }
    }
    CHECK(diffs == 1);
    const std::size_t expect =
        canonical_index({Feature::knee_flexion, Side::right}) * kTimepoints + 5;
    CHECK(where == expect);
}

TEST_CASE("standardizer on a single sample maps it to zero") {
    const FeatureVector v = {3.0, -2.0, 7.5};
    const Standardizer s = Standardizer::fit({v});
    for (double x : s.apply(v)) CHECK(std::fabs(x) < 1e-12);
}

TEST_CASE("standardized training set has mean 0 and sd 1") {
    std::mt19937_64 rng(19);
    std::normal_distribution<double> dist(5.0, 3.0);
    std::vector<FeatureVector> train(40, FeatureVector(6));
    for (auto& v : train)
        for (double& x : v) x = dist(rng);
    const Standardizer s = Standardizer::fit(train);
    std::vector<double> mean(6, 0.0), var(6, 0.0);
    for (const auto& v : train) {
        const FeatureVector z = s.apply(v);
        for (int i = 0; i < 6; ++i) mean[i] += z[i];
    }
    for (double& m : mean) m /= 40.0;
    for (const auto& v : train) {
        const FeatureVector z = s.apply(v);
        for (int i = 0; i < 6; ++i) var[i] += (z[i] - mean[i]) * (z[i] - mean[i]);
    }
    for (int i = 0; i < 6; ++i) {
        CHECK(std::fabs(mean[i]) < 1e-9);
        CHECK(var[i] / 40.0 == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("standardizer apply is affine") {
    const std::vector<FeatureVector> train = {{1, 2}, {3, 4}, {-1, 6}};
    const Standardizer s = Standardizer::fit(train);
    const FeatureVector v1 = {0.5, 9.0}, v2 = {-3.0, 2.0};
    const double a = 0.3;
    FeatureVector mix(2);
    for (int i = 0; i < 2; ++i) mix[i] = a * v1[i] + (1 - a) * v2[i];
    const FeatureVector lhs = s.apply(mix);
    const FeatureVector r1 = s.apply(v1), r2 = s.apply(v2);
    for (int i = 0; i < 2; ++i) {
        CHECK(lhs[i] == doctest::Approx(a * r1[i] + (1 - a) * r2[i]).epsilon(1e-12));
    }
}

TEST_CASE("constant dimensions pass through unscaled") {
    const std::vector<FeatureVector> train = {{1.0, 5.0}, {2.0, 5.0}, {3.0, 5.0}};
    const Standardizer s = Standardizer::fit(train);
    CHECK(s.sd()[1] == 1.0);
    CHECK(s.apply({9.0, 6.0})[1] == doctest::Approx(1.0));  // 6 - 5, unscaled
}
