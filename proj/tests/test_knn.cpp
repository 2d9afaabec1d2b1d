#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "gaitbench/knn.hpp"

using namespace gaitbench;

TEST_CASE("k=1 returns the label of an exactly matching vector") {
    const std::vector<FeatureVector> train = {{0, 0}, {5, 5}, {10, 0}};
    const std::vector<ClassLabel> labels = {ClassLabel::NORMAL, ClassLabel::BOUNCY,
                                            ClassLabel::STIFF};
    const KnnModel model(train, labels, 1);
    CHECK(model.predict({5, 5}) == ClassLabel::BOUNCY);
    CHECK(model.predict({10, 0}) == ClassLabel::STIFF);
}

TEST_CASE("k=3 majority vote") {
    const std::vector<FeatureVector> train = {{0, 0}, {1, 0}, {10, 10}, {0.5, 0.5}};
    const std::vector<ClassLabel> labels = {ClassLabel::NORMAL, ClassLabel::NORMAL,
                                            ClassLabel::BOUNCY, ClassLabel::BOUNCY};
    const KnnModel model(train, labels, 3);
    // Neighbors of the origin: NORMAL(0), BOUNCY(0.5), NORMAL(1) -> NORMAL.
    CHECK(model.predict({0, 0}) == ClassLabel::NORMAL);
}

TEST_CASE("vote tie broken by smaller summed distance") {
    // k=2: one NORMAL at distance 1, one BOUNCY at distance 2 -> 1:1 vote,
    // NORMAL is closer in sum.
    const std::vector<FeatureVector> train = {{1, 0}, {-2, 0}, {50, 50}, {60, 60}};
    const std::vector<ClassLabel> labels = {ClassLabel::NORMAL, ClassLabel::BOUNCY,
                                            ClassLabel::STIFF, ClassLabel::STIFF};
    const KnnModel model(train, labels, 2);
    CHECK(model.predict({0, 0}) == ClassLabel::NORMAL);

    // Mirror it: BOUNCY closer.
    const std::vector<FeatureVector> train2 = {{2, 0}, {-1, 0}, {50, 50}, {60, 60}};
    const KnnModel model2(train2, labels, 2);
    CHECK(model2.predict({0, 0}) == ClassLabel::BOUNCY);
}

TEST_CASE("full tie falls back to canonical label order") {
    // Two classes at identical distances with identical sums.
    const std::vector<FeatureVector> train = {{1, 0}, {-1, 0}};
    const std::vector<ClassLabel> labels = {ClassLabel::STIFF, ClassLabel::BOUNCY};
    const KnnModel model(train, labels, 2);
    // BOUNCY precedes STIFF canonically.
    CHECK(model.predict({0, 0}) == ClassLabel::BOUNCY);
}

TEST_CASE("predictions are invariant to training order") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    std::vector<FeatureVector> train(60, FeatureVector(4));
    std::vector<ClassLabel> labels(60);
    for (int i = 0; i < 60; ++i) {
        for (double& x : train[i]) x = dist(rng);
        labels[i] = kAllLabels[static_cast<std::size_t>(i) % kAllLabels.size()];
    }
    const KnnModel model(train, labels, 5);

    std::vector<std::size_t> perm(60);
    for (std::size_t i = 0; i < 60; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<FeatureVector> shuffled_train(60);
    std::vector<ClassLabel> shuffled_labels(60);
    for (std::size_t i = 0; i < 60; ++i) {
        shuffled_train[i] = train[perm[i]];
        shuffled_labels[i] = labels[perm[i]];
    }
    const KnnModel shuffled(shuffled_train, shuffled_labels, 5);

    for (int probe = 0; probe < 100; ++probe) {
        FeatureVector x(4);
        for (double& v : x) v = dist(rng);
        CHECK(model.predict(x) == shuffled.predict(x));
    }
}

TEST_CASE("constructor validation") {
    const std::vector<FeatureVector> train = {{0, 0}, {1, 1}};
    const std::vector<ClassLabel> labels = {ClassLabel::NORMAL, ClassLabel::BOUNCY};
    CHECK_THROWS_AS(KnnModel(train, labels, 0), ModelError);
    CHECK_THROWS_AS(KnnModel(train, labels, 3), ModelError);  // k > n
    CHECK_THROWS_AS(KnnModel({}, {}, 1), ModelError);
    CHECK_THROWS_AS(KnnModel(train, {ClassLabel::NORMAL}, 1), ModelError);

    const KnnModel ok(train, labels, 2);
    CHECK_THROWS_AS(ok.predict({1, 2, 3}), ModelError);  // dimension mismatch
}
