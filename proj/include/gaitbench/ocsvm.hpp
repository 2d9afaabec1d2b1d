#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaitbench/knn.hpp"  // ModelError
#include "gaitbench/labels.hpp"
#include "gaitbench/preprocess_types.hpp"

namespace gaitbench {

// exp(-gamma * ||x - y||^2)
double rbf_kernel(const FeatureVector& x, const FeatureVector& y, double gamma);

struct OcsvmModel {
    std::vector<FeatureVector> support_vectors;
    std::vector<double> alphas;               // sum to 1, each in (0, 1/(nu*n)]
    std::vector<std::size_t> support_indices; // into the training set
    double gamma = 0.0;
    double nu = 0.0;
    double rho = 0.0;
    double dual_objective = 0.0;   // 1/2 a'Ka at convergence
    double kkt_residual = 0.0;
    int iterations = 0;
    std::vector<double> objective_trace;  // filled when requested
};

struct OcsvmTrainOptions {
    double tol = 1e-6;
    int max_iter = 100000;
    bool record_objective = false;
};

// Solves the one-class dual (min 1/2 a'Ka, 0 <= a_i <= 1/(nu*n), sum a = 1)
// with pairwise maximal-violating-pair updates. Throws on infeasible nu
// (nu*n < 1) or non-convergence.
OcsvmModel ocsvm_train(const std::vector<FeatureVector>& train, double gamma, double nu,
                       const OcsvmTrainOptions& opts = {});

// f(x) = sum_i a_i K(sv_i, x) - rho
double ocsvm_decision(const OcsvmModel& model, const FeatureVector& x);

// NORMAL iff f(x) >= 0.
BinaryLabel ocsvm_predict(const OcsvmModel& model, const FeatureVector& x);

std::string ocsvm_model_dump_json(const OcsvmModel& model);

struct TuningGrid {
    std::vector<double> gamma_values;
    std::vector<double> nu_values;
    int folds = 3;
};

struct TuningCell {
    double gamma = 0.0;
    double nu = 0.0;
    double mean_mcc = 0.0;
    int degenerate_folds = 0;  // folds with single-class validation data (MCC := 0)
    int skipped_folds = 0;     // folds where nu*n_train < 1
};

struct TuningReport {
    double gamma = 0.0;
    double nu = 0.0;
    std::vector<TuningCell> cells;
};

// Stratified k-fold (seeded shuffle, round-robin within each binary class);
// each fold fits on the other folds' NORMAL samples only and scores binary
// MCC on the fold's full validation split. Ties: smaller nu, then smaller
// gamma.
TuningReport tune_ocsvm(const std::vector<FeatureVector>& vectors,
                        const std::vector<BinaryLabel>& labels, const TuningGrid& grid,
                        std::uint64_t seed);

// Default search grid: gamma multiples of 1/(dim * pooled variance),
// nu in {0.01, 0.05, 0.1, 0.2, 0.3, 0.5}.
TuningGrid default_tuning_grid(const std::vector<FeatureVector>& vectors);

}  // namespace gaitbench
