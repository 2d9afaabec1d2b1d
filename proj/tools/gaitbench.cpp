#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaitbench/dataset_io.hpp"
#include "gaitbench/eval.hpp"
#include "gaitbench/generator.hpp"
#include "gaitbench/llm/prompt.hpp"
#include "gaitbench/preprocess.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace gaitbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCredential = 3;

GeneratorConfig load_generator_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    json j = json::parse(f, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw ConfigError("config file is not a JSON object: " + path);
    GeneratorConfig cfg;
    auto read = [&](const char* field, auto& target) {
        if (!j.contains(field)) return;
        try {
            target = j.at(field).get<std::decay_t<decltype(target)>>();
        } catch (const json::exception&) {
            throw ConfigError(std::string("bad value for field '") + field + "'");
        }
    };
    read("n_subjects", cfg.n_subjects);
    read("cycles_per_class", cfg.cycles_per_class);
    read("rng_seed", cfg.rng_seed);
    read("noise_sd_deg", cfg.noise_sd_deg);
    read("subject_variation_sd_deg", cfg.subject_variation_sd_deg);
    read("class_effect_scale", cfg.class_effect_scale);
    for (const auto& [key, value] : j.items()) {
        static const std::set<std::string> known = {
            "n_subjects",       "cycles_per_class",         "rng_seed",
            "noise_sd_deg",     "subject_variation_sd_deg", "class_effect_scale"};
        if (!known.count(key)) throw ConfigError("unknown config field '" + key + "'");
    }
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()));
    }
    return cfg;
}

std::string file_hash(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return fnv1a_hex(ss.str());
}

struct RunOptions {
    std::string arm;
    std::string dataset_path;
    std::string out_dir;
    std::string backend_kind = "mock";
    std::string model_id = "mock";
    std::string endpoint_url;
    bool grounded = false;
    bool standardize = false;
    bool temperature_zero = false;
    int k = 5;
    std::uint64_t seed = 42;
    int jobs = 1;
    int max_retries = 3;
};

void write_echo(const RunOptions& opt) {
    ordered_json echo;
    echo["arm"] = opt.arm;
    echo["dataset"] = fs::absolute(opt.dataset_path).string();
    echo["dataset_hash"] = file_hash(opt.dataset_path);
    echo["seed"] = opt.seed;
    echo["k"] = opt.k;
    echo["standardize"] = opt.standardize;
    echo["grounded"] = opt.grounded;
    echo["backend"] = opt.backend_kind;
    echo["model"] = opt.model_id;
    echo["endpoint"] = opt.endpoint_url;
    echo["temperature_zero"] = opt.temperature_zero;
    echo["max_retries"] = opt.max_retries;
    echo["jobs"] = opt.jobs;
    echo["rng_algorithm"] = kRngAlgorithmId;
    echo["template_hash_grounded"] = fnv1a_hex(grounded_prompt_template());
    echo["template_hash_ungrounded"] = fnv1a_hex(ungrounded_prompt_template());
    std::ofstream f(fs::path(opt.out_dir) / "config_echo.json", std::ios::binary);
    f << echo.dump(2) << "\n";
}

RunOptions load_echo(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    json j = json::parse(f, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw ConfigError("config file is not a JSON object: " + path);
    RunOptions opt;
    opt.arm = j.value("arm", "");
    opt.dataset_path = j.value("dataset", "");
    opt.backend_kind = j.value("backend", "mock");
    opt.model_id = j.value("model", "mock");
    opt.endpoint_url = j.value("endpoint", "");
    opt.grounded = j.value("grounded", false);
    opt.standardize = j.value("standardize", false);
    opt.temperature_zero = j.value("temperature_zero", false);
    opt.k = j.value("k", 5);
    opt.seed = j.value("seed", std::uint64_t{42});
    opt.jobs = j.value("jobs", 1);
    opt.max_retries = j.value("max_retries", 3);
    return opt;
}

int do_run(RunOptions opt) {
    if (opt.arm != "knn" && opt.arm != "ocsvm" && opt.arm != "llm")
        throw ConfigError("arm must be one of knn|ocsvm|llm");
    if (opt.dataset_path.empty()) throw ConfigError("missing dataset path");
    if (opt.out_dir.empty()) throw ConfigError("missing output directory");

    if (opt.arm == "llm" && opt.backend_kind == "http") {
        const char* key = std::getenv("GAITBENCH_API_KEY");
        if (!key || !*key) {
            std::cerr << "error: GAITBENCH_API_KEY is not set\n";
            return kExitCredential;
        }
    }

    const Dataset dataset = read_dataset_file(opt.dataset_path);
    const ValidationReport report = validate_dataset(dataset);
    if (!report.ok()) {
        std::cerr << "error: dataset invalid (" << report.violations.size()
                  << " violations); first: " << report.violations.front().kind << " at "
                  << report.violations.front().subject_id << "\n";
        return kExitRuntime;
    }

    fs::create_directories(opt.out_dir);

    if (opt.arm == "knn") {
        const PredictionSet preds = run_knn_experiment(dataset, opt.k, opt.standardize);
        write_bundle(opt.out_dir, preds);
    } else if (opt.arm == "ocsvm") {
        const OcsvmExperimentResult result =
            run_ocsvm_experiment(dataset, nullptr, opt.seed);
        write_bundle(opt.out_dir, result.predictions, &result.tuning);
    } else {
        LlmExperimentOptions llm_opts;
        llm_opts.grounded = opt.grounded;
        llm_opts.model_id = opt.model_id;
        llm_opts.policy.max_retries = opt.max_retries;
        std::unique_ptr<Backend> backend;
        if (opt.backend_kind == "mock") {
            backend = std::make_unique<MockBackend>(mock_centroid_table(dataset));
        } else if (opt.backend_kind == "http") {
            BackendSpec spec;
            spec.kind = BackendSpec::Kind::http;
            spec.model_id = opt.model_id;
            spec.endpoint_url = opt.endpoint_url;
            spec.supports_temperature = opt.temperature_zero;
            spec.max_retries = opt.max_retries;
            backend = std::make_unique<HttpBackend>(spec);
        } else {
            throw ConfigError("backend must be mock or http");
        }
        const PredictionSet preds = run_llm_experiment(dataset, *backend, llm_opts);
        write_bundle(opt.out_dir, preds);
        int failed = 0;
        for (const auto& r : preds.records) failed += r.failed ? 1 : 0;
        if (failed > 0) {
            std::cerr << failed << " trial(s) failed terminally; see diagnostics.json\n";
            write_echo(opt);
            return kExitRuntime;
        }
    }
    write_echo(opt);
    std::cout << "wrote results bundle to " << opt.out_dir << "\n";
    return kExitOk;
}

struct ReportRow {
    std::string name;
    std::vector<std::string> values;
};

int do_report(const std::vector<std::string>& bundles, const std::string& csv_path) {
    std::vector<std::string> run_names;
    std::vector<json> metrics;
    for (const auto& dir : bundles) {
        const fs::path path = fs::path(dir) / "metrics.json";
        std::ifstream f(path);
        if (!f) throw IoError("corrupt bundle: missing " + path.string());
        json j = json::parse(f, nullptr, false);
        if (j.is_discarded())
            throw IoError("corrupt bundle: " + path.string() + " is not JSON");
        std::string name = j.value("classifier", "?");
        if (j.contains("model_id")) name += ":" + j["model_id"].get<std::string>();
        if (j.contains("grounded"))
            name += j["grounded"].get<bool>() ? "+ref" : "-ref";
        run_names.push_back(name);
        metrics.push_back(std::move(j));
    }

    auto fmt = [](const json& j, const char* section, const char* field) -> std::string {
        if (!j.contains(section) || j[section].is_null()) return "—";
        const json& s = j[section];
        if (!s.contains(field) || s[field].is_null()) return "—";
        if (s[field].is_string()) return s[field].get<std::string>();
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", s[field].get<double>());
        return buf;
    };
    auto fmt_conf = [&](const json& j, const char* level, const char* field) -> std::string {
        if (!j.contains("by_confidence")) return "—";
        const json& bc = j["by_confidence"];
        if (!bc.contains(level)) return "—";
        const json& s = bc[level];
        if (!s.contains(field) || s[field].is_null()) return "—";
        if (s[field].is_string()) return s[field].get<std::string>() + "%";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", s[field].get<double>());
        return buf;
    };

    std::vector<ReportRow> rows;
    auto add_row = [&](const std::string& name, auto&& getter) {
        ReportRow row{name, {}};
        for (const json& j : metrics) row.values.push_back(getter(j));
        rows.push_back(std::move(row));
    };
    add_row("multiclass_f1", [&](const json& j) { return fmt(j, "multiclass", "macro_f1"); });
    add_row("multiclass_mcc", [&](const json& j) { return fmt(j, "multiclass", "mcc"); });
    add_row("binary_f1", [&](const json& j) { return fmt(j, "binary", "macro_f1"); });
    add_row("binary_mcc", [&](const json& j) { return fmt(j, "binary", "mcc"); });
    for (const char* level : {"high", "medium", "low"}) {
        add_row(std::string(level) + "_pct_samples",
                [&](const json& j) { return fmt_conf(j, level, "pct_samples"); });
        add_row(std::string(level) + "_f1",
                [&](const json& j) { return fmt_conf(j, level, "macro_f1"); });
        add_row(std::string(level) + "_mcc",
                [&](const json& j) { return fmt_conf(j, level, "mcc"); });
    }

    std::size_t name_width = 16;
    for (const auto& r : rows) name_width = std::max(name_width, r.name.size());
    std::cout << std::string(name_width, ' ');
    for (const auto& n : run_names) std::cout << "  " << n;
    std::cout << "\n";
    for (const auto& r : rows) {
        std::cout << r.name << std::string(name_width - r.name.size(), ' ');
        for (std::size_t i = 0; i < r.values.size(); ++i) {
            std::cout << "  " << r.values[i]
                      << std::string(
                             run_names[i].size() > r.values[i].size()
                                 ? run_names[i].size() - r.values[i].size()
                                 : 0,
                             ' ');
        }
        std::cout << "\n";
    }

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw IoError("cannot write " + csv_path);
        csv << "metric";
        for (const auto& n : run_names) csv << "," << n;
        csv << "\n";
        for (const auto& r : rows) {
            csv << r.name;
            for (const auto& v : r.values) csv << "," << (v == "—" ? "" : v);
            csv << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic gait classification benchmark"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "Generate a synthetic dataset");
    std::string gen_config, gen_out;
    gen->add_option("--config", gen_config, "Generator config JSON");
    gen->add_option("--out", gen_out, "Output dataset path (JSON Lines)")->required();

    auto* run = app.add_subcommand("run", "Run one experiment arm under LOSO");
    RunOptions opt;
    std::string run_config;
    run->add_option("--config", run_config, "Config-echo JSON to re-execute");
    run->add_option("--arm", opt.arm, "knn|ocsvm|llm");
    run->add_option("--dataset", opt.dataset_path, "Dataset JSON Lines file");
    run->add_option("--out", opt.out_dir, "Results bundle directory");
    run->add_flag("--grounded", opt.grounded, "Include reference stats in the prompt");
    run->add_option("--backend", opt.backend_kind, "mock|http");
    run->add_option("--model", opt.model_id, "Model id");
    run->add_option("--endpoint", opt.endpoint_url, "Chat-completions endpoint base URL");
    run->add_flag("--standardize", opt.standardize, "Standardize features (knn arm)");
    run->add_flag("--temperature-zero", opt.temperature_zero,
                  "Send temperature 0 (model supports it)");
    run->add_option("--k", opt.k, "Neighbor count for knn");
    run->add_option("--seed", opt.seed, "Top-level seed");
    run->add_option("--jobs", opt.jobs, "Parallelism limit");
    run->add_option("--max-retries", opt.max_retries, "LLM resubmission cap");

    auto* report = app.add_subcommand("report", "Merge bundles into a comparison table");
    std::vector<std::string> bundles;
    std::string csv_path;
    report->add_option("bundles", bundles, "Bundle directories")->required();
    report->add_option("--csv", csv_path, "Also write the table as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (gen->parsed()) {
            GeneratorConfig cfg;
            if (!gen_config.empty()) cfg = load_generator_config(gen_config);
            cfg.validate();
            const Dataset d = generate_dataset(cfg);
            write_dataset_file(gen_out, d);
            std::cout << "wrote " << d.cycles.size() << " cycles ("
                      << d.subjects().size() << " subjects) to " << gen_out << "\n";
            return kExitOk;
        }
        if (run->parsed()) {
            if (!run_config.empty()) {
                RunOptions from_echo = load_echo(run_config);
                // Explicit flags override the echo.
                if (opt.arm.empty()) opt.arm = from_echo.arm;
                if (opt.dataset_path.empty()) opt.dataset_path = from_echo.dataset_path;
                if (run->count("--backend") == 0) opt.backend_kind = from_echo.backend_kind;
                if (run->count("--model") == 0) opt.model_id = from_echo.model_id;
                if (run->count("--endpoint") == 0) opt.endpoint_url = from_echo.endpoint_url;
                if (run->count("--grounded") == 0) opt.grounded = from_echo.grounded;
                if (run->count("--standardize") == 0) opt.standardize = from_echo.standardize;
                if (run->count("--temperature-zero") == 0)
                    opt.temperature_zero = from_echo.temperature_zero;
                if (run->count("--k") == 0) opt.k = from_echo.k;
                if (run->count("--seed") == 0) opt.seed = from_echo.seed;
                if (run->count("--jobs") == 0) opt.jobs = from_echo.jobs;
                if (run->count("--max-retries") == 0) opt.max_retries = from_echo.max_retries;
            }
            return do_run(opt);
        }
        if (report->parsed()) return do_report(bundles, csv_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
