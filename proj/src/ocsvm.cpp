#include "gaitbench/ocsvm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "gaitbench/rng.hpp"

namespace gaitbench {

double rbf_kernel(const FeatureVector& x, const FeatureVector& y, double gamma) {
    if (x.size() != y.size()) throw ModelError("rbf_kernel: length mismatch");
    if (!(gamma > 0.0)) throw ModelError("rbf_kernel: gamma must be positive");
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = x[i] - y[i];
        d += t * t;
    }
    return std::exp(-gamma * d);
}

namespace {

constexpr double kAlphaEps = 1e-9;

std::vector<double> gram_matrix(const std::vector<FeatureVector>& x, double gamma) {
    const std::size_t n = x.size();
    std::vector<double> k(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        k[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = rbf_kernel(x[i], x[j], gamma);
            k[i * n + j] = v;
            k[j * n + i] = v;
        }
    }
    return k;
}

}  // namespace

OcsvmModel ocsvm_train(const std::vector<FeatureVector>& train, double gamma, double nu,
                       const OcsvmTrainOptions& opts) {
    const std::size_t n = train.size();
    if (n < 2) throw ModelError("ocsvm_train: need at least 2 training points");
    if (!(nu > 0.0 && nu <= 1.0)) throw ModelError("ocsvm_train: nu must be in (0, 1]");
    if (nu * static_cast<double>(n) < 1.0)
        throw ModelError("ocsvm_train: infeasible nu (nu*n < 1)");
    if (!(gamma > 0.0)) throw ModelError("ocsvm_train: gamma must be positive");

    const double c = 1.0 / (nu * static_cast<double>(n));
    const std::vector<double> k = gram_matrix(train, gamma);

    // Feasible start: the first floor(nu*n) coefficients at the box bound,
    // the fractional remainder on the next one.
    std::vector<double> alpha(n, 0.0);
    {
        const double nn = nu * static_cast<double>(n);
        const std::size_t full = static_cast<std::size_t>(std::floor(nn));
        for (std::size_t i = 0; i < full && i < n; ++i) alpha[i] = c;
        if (full < n) alpha[full] = (nn - std::floor(nn)) * c;
    }

    // Gradient of 1/2 a'Ka is Ka.
    std::vector<double> grad(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double g = 0.0;
        for (std::size_t j = 0; j < n; ++j) g += k[i * n + j] * alpha[j];
        grad[i] = g;
    }

    auto objective = [&] {
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i) obj += alpha[i] * grad[i];
        return 0.5 * obj;
    };

    OcsvmModel model;
    model.gamma = gamma;
    model.nu = nu;
    if (opts.record_objective) model.objective_trace.push_back(objective());

    double violation = std::numeric_limits<double>::infinity();
    int iter = 0;
    for (; iter < opts.max_iter; ++iter) {
        // Maximal violating pair: raise the coordinate with the smallest
        // gradient (room above), lower the one with the largest (room below).
        std::size_t up = n, lo = n;
        double g_up = std::numeric_limits<double>::infinity();
        double g_lo = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (alpha[i] < c - kAlphaEps && grad[i] < g_up) {
                g_up = grad[i];
                up = i;
            }
            if (alpha[i] > kAlphaEps && grad[i] > g_lo) {
                g_lo = grad[i];
                lo = i;
            }
        }
        violation = g_lo - g_up;
        if (up == n || lo == n || violation <= opts.tol) break;

        const double denom = k[up * n + up] + k[lo * n + lo] - 2.0 * k[up * n + lo];
        double delta = denom > 1e-12 ? violation / denom
                                     : std::numeric_limits<double>::infinity();
        delta = std::min(delta, std::min(c - alpha[up], alpha[lo]));
        alpha[up] += delta;
        alpha[lo] -= delta;
        for (std::size_t j = 0; j < n; ++j) {
            grad[j] += delta * (k[up * n + j] - k[lo * n + j]);
        }
        if (opts.record_objective) model.objective_trace.push_back(objective());
    }
    if (violation > opts.tol) {
        std::ostringstream msg;
        msg << "ocsvm_train: no convergence after " << opts.max_iter
            << " iterations, KKT residual " << violation;
        throw ModelError(msg.str());
    }

    model.iterations = iter;
    model.kkt_residual = std::max(violation, 0.0);
    model.dual_objective = objective();

    // rho from margin (strictly interior) support vectors, else the midpoint
    // of the bounded-side and zero-side gradient extremes.
    double interior_sum = 0.0;
    int interior_count = 0;
    double max_upper = -std::numeric_limits<double>::infinity();
    double min_zero = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] > kAlphaEps && alpha[i] < c - kAlphaEps) {
            interior_sum += grad[i];
            ++interior_count;
        } else if (alpha[i] >= c - kAlphaEps) {
            max_upper = std::max(max_upper, grad[i]);
        } else {
            min_zero = std::min(min_zero, grad[i]);
        }
    }
    if (interior_count > 0) {
        model.rho = interior_sum / interior_count;
    } else if (std::isfinite(max_upper) && std::isfinite(min_zero)) {
        model.rho = 0.5 * (max_upper + min_zero);
    } else if (std::isfinite(max_upper)) {
        model.rho = max_upper;
    } else {
        model.rho = min_zero;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] > kAlphaEps) {
            model.support_vectors.push_back(train[i]);
            model.alphas.push_back(alpha[i]);
            model.support_indices.push_back(i);
        }
    }
    return model;
}

double ocsvm_decision(const OcsvmModel& model, const FeatureVector& x) {
    double f = 0.0;
    for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
        f += model.alphas[i] * rbf_kernel(model.support_vectors[i], x, model.gamma);
    }
    return f - model.rho;
}

BinaryLabel ocsvm_predict(const OcsvmModel& model, const FeatureVector& x) {
    return ocsvm_decision(model, x) >= 0.0 ? BinaryLabel::NORMAL : BinaryLabel::NOT_NORMAL;
}

std::string ocsvm_model_dump_json(const OcsvmModel& model) {
    nlohmann::ordered_json j;
    j["gamma"] = model.gamma;
    j["nu"] = model.nu;
    j["rho"] = model.rho;
    j["dual_objective"] = model.dual_objective;
    j["kkt_residual"] = model.kkt_residual;
    j["iterations"] = model.iterations;
    j["alphas"] = model.alphas;
    j["support_indices"] = model.support_indices;
    return j.dump();
}

namespace {

double binary_mcc_from_counts(long tp, long fp, long fn, long tn) {
    const double den = std::sqrt(static_cast<double>(tp + fp)) *
                       std::sqrt(static_cast<double>(tp + fn)) *
                       std::sqrt(static_cast<double>(tn + fp)) *
                       std::sqrt(static_cast<double>(tn + fn));
    if (den == 0.0) return 0.0;
    return (static_cast<double>(tp) * tn - static_cast<double>(fp) * fn) / den;
}

}  // namespace

TuningReport tune_ocsvm(const std::vector<FeatureVector>& vectors,
                        const std::vector<BinaryLabel>& labels, const TuningGrid& grid,
                        std::uint64_t seed) {
    if (vectors.size() != labels.size()) throw ModelError("tune_ocsvm: size mismatch");
    if (grid.gamma_values.empty() || grid.nu_values.empty())
        throw ModelError("tune_ocsvm: empty grid");
    if (grid.folds < 2) throw ModelError("tune_ocsvm: need >= 2 folds");
    const bool has_normal = std::find(labels.begin(), labels.end(), BinaryLabel::NORMAL) !=
                            labels.end();
    const bool has_other = std::find(labels.begin(), labels.end(), BinaryLabel::NOT_NORMAL) !=
                           labels.end();
    if (!has_normal || !has_other)
        throw ModelError("tune_ocsvm: both binary labels must be present");

    // Stratified fold assignment: shuffle each class, deal round-robin.
    std::vector<int> fold_of(vectors.size(), 0);
    Rng rng(derive_seed(seed, 31));
    for (BinaryLabel cls : {BinaryLabel::NORMAL, BinaryLabel::NOT_NORMAL}) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == cls) idx.push_back(i);
        }
        for (std::size_t i = idx.size(); i > 1; --i) {
            std::swap(idx[i - 1], idx[rng.next_u64() % i]);
        }
        for (std::size_t i = 0; i < idx.size(); ++i) {
            fold_of[idx[i]] = static_cast<int>(i % grid.folds);
        }
    }

    // Ascending iteration plus strict improvement implements the
    // smaller-nu-then-smaller-gamma tie-break.
    std::vector<double> nus = grid.nu_values;
    std::vector<double> gammas = grid.gamma_values;
    std::sort(nus.begin(), nus.end());
    std::sort(gammas.begin(), gammas.end());

    TuningReport report;
    double best_score = -std::numeric_limits<double>::infinity();
    for (double nu : nus) {
        for (double gamma : gammas) {
            TuningCell cell;
            cell.gamma = gamma;
            cell.nu = nu;
            double total = 0.0;
            int scored = 0;
            for (int f = 0; f < grid.folds; ++f) {
                std::vector<FeatureVector> fit;
                for (std::size_t i = 0; i < vectors.size(); ++i) {
                    if (fold_of[i] != f && labels[i] == BinaryLabel::NORMAL)
                        fit.push_back(vectors[i]);
                }
                if (fit.size() < 2 || nu * static_cast<double>(fit.size()) < 1.0) {
                    ++cell.skipped_folds;
                    continue;
                }
                const OcsvmModel m = ocsvm_train(fit, gamma, nu);
                long tp = 0, fp = 0, fn = 0, tn = 0;
                bool saw_normal = false, saw_other = false;
                for (std::size_t i = 0; i < vectors.size(); ++i) {
                    if (fold_of[i] != f) continue;
                    const bool truth_normal = labels[i] == BinaryLabel::NORMAL;
                    (truth_normal ? saw_normal : saw_other) = true;
                    const bool pred_normal =
                        ocsvm_predict(m, vectors[i]) == BinaryLabel::NORMAL;
                    if (truth_normal && pred_normal) ++tp;
                    else if (!truth_normal && pred_normal) ++fp;
                    else if (truth_normal && !pred_normal) ++fn;
                    else ++tn;
                }
                if (!saw_normal || !saw_other) {
                    ++cell.degenerate_folds;  // MCC := 0 for this fold
                    ++scored;
                    continue;
                }
                total += binary_mcc_from_counts(tp, fp, fn, tn);
                ++scored;
            }
            cell.mean_mcc = scored > 0 ? total / scored
                                       : -std::numeric_limits<double>::infinity();
            report.cells.push_back(cell);
            if (cell.mean_mcc > best_score) {
                best_score = cell.mean_mcc;
                report.gamma = gamma;
                report.nu = nu;
            }
        }
    }
    if (!std::isfinite(best_score)) throw ModelError("tune_ocsvm: no feasible grid cell");
    return report;
}

TuningGrid default_tuning_grid(const std::vector<FeatureVector>& vectors) {
    if (vectors.empty()) throw ModelError("default_tuning_grid: empty input");
    const std::size_t dim = vectors.front().size();
    // Pooled per-dimension population variance.
    double pooled = 0.0;
    std::vector<double> mean(dim, 0.0);
    for (const auto& v : vectors) {
        for (std::size_t i = 0; i < dim; ++i) mean[i] += v[i];
    }
    for (double& m : mean) m /= static_cast<double>(vectors.size());
    for (const auto& v : vectors) {
        for (std::size_t i = 0; i < dim; ++i) {
            const double d = v[i] - mean[i];
            pooled += d * d;
        }
    }
    pooled /= static_cast<double>(vectors.size() * dim);
    if (pooled < 1e-12) pooled = 1.0;

    const double base = 1.0 / (static_cast<double>(dim) * pooled);
    TuningGrid grid;
    for (double m : {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0}) grid.gamma_values.push_back(m * base);
    grid.nu_values = {0.01, 0.05, 0.1, 0.2, 0.3, 0.5};
    return grid;
}

}  // namespace gaitbench
