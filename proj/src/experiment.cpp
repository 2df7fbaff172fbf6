#include "ffcm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "ffcm/kmeans.hpp"
#include "ffcm/matching.hpp"
#include "ffcm/rng.hpp"

namespace ffcm {

namespace {

using nlohmann::json;

// role salts for deriving independent seed streams per repetition
constexpr std::uint64_t kDataRole = 11, kCentralRole = 12, kAvg1Role = 13, kAvg2Role = 14;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void parallel_for(std::size_t count, std::size_t max_threads,
                  const std::function<void(std::size_t)>& fn) {
    std::size_t workers = std::min<std::size_t>(
        {count, max_threads, std::max(1u, std::thread::hardware_concurrency())});
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

Matrix gather_union(const std::vector<ClientState>& clients) {
    std::size_t total = 0;
    for (const auto& c : clients) total += c.data.rows();
    const std::size_t d = clients.front().data.cols();
    Matrix all(total, d);
    std::size_t row = 0;
    for (const auto& c : clients)
        for (std::size_t i = 0; i < c.data.rows(); ++i, ++row)
            for (std::size_t j = 0; j < d; ++j) all(row, j) = c.data(i, j);
    return all;
}

MetricsReport score(const Matrix& data, const std::vector<int>& labels, const Matrix& centers,
                    const Matrix& truth) {
    MetricsReport r;
    r.wsse = wsse(data, labels, centers);
    r.osse = osse(data, labels, centers);
    r.n_points = data.rows();
    r.dim = data.cols();
    r.k = centers.rows();
    if (!truth.empty()) {
        r.gap = knowledge_gap(centers, truth);
        r.ngap = ngap(*r.gap, data.cols());
    }
    return r;
}

struct CellTask {
    std::string label;
    double sigma = 0.0;
    FederatedDataset dataset;
};

struct CommonKnobs {
    std::size_t k = 2;
    double m = 2.0;
    MembershipFormula formula = MembershipFormula::PaperLiteral;
    double fcm_epsilon = 1e-4;
    int fcm_max_iter = 300;
    bool run_central = true;
    std::vector<AvgMethod> avg_methods;
    int local_epochs = 300;
    int max_rounds = 50;
    double round_epsilon = 1e-4;
    InitStrategy init_strategy = InitStrategy::BoundingBoxUniform;
    int inner_kmeans_n_init = 10;
};

std::vector<RunRecord> run_cell(const CellTask& task, const CommonKnobs& knobs, int rep,
                                std::uint64_t rep_seed) {
    const Matrix all = gather_union(task.dataset.clients);
    const Matrix& truth = task.dataset.ground_truth_centers;
    std::vector<RunRecord> records;
    auto base_record = [&](const char* method) {
        RunRecord r;
        r.case_label = task.label;
        r.method = method;
        r.rep = rep;
        r.seed = rep_seed;
        r.sigma = task.sigma;
        return r;
    };
    if (knobs.run_central) {
        FcmConfig cfg;
        cfg.m = knobs.m;
        cfg.epsilon = knobs.fcm_epsilon;
        cfg.max_iter = knobs.fcm_max_iter;
        cfg.membership_formula = knobs.formula;
        cfg.rng_seed = mix_seed(rep_seed, kCentralRole);
        const FcmResult fit = fcm_fit(all, knobs.k, cfg);
        RunRecord r = base_record("central");
        r.rounds = fit.iterations;
        r.metrics = score(all, hard_assign(fit.membership), fit.centers, truth);
        records.push_back(std::move(r));
    }
    for (AvgMethod method : knobs.avg_methods) {
        FedConfig cfg;
        cfg.k = knobs.k;
        cfg.fcm.m = knobs.m;
        cfg.fcm.epsilon = knobs.fcm_epsilon;
        cfg.fcm.max_iter = knobs.fcm_max_iter;
        cfg.fcm.membership_formula = knobs.formula;
        cfg.avg_method = method;
        cfg.local_epochs = knobs.local_epochs;
        cfg.max_rounds = knobs.max_rounds;
        cfg.round_epsilon = knobs.round_epsilon;
        cfg.init_strategy = knobs.init_strategy;
        cfg.inner_kmeans.n_init = knobs.inner_kmeans_n_init;
        Rng rng(mix_seed(rep_seed, method == AvgMethod::Avg1 ? kAvg1Role : kAvg2Role));
        const FedResult fed = run_federated(task.dataset.clients, cfg, rng);
        RunRecord r = base_record(method == AvgMethod::Avg1 ? "avg1" : "avg2");
        r.rounds = fed.rounds_used;
        r.metrics = score(all, kmeans_assign(all, fed.global_centers), fed.global_centers, truth);
        records.push_back(std::move(r));
    }
    return records;
}

void append_aggregates(ExperimentReport& report) {
    // deterministic reduction ordered by (case label, method) over the
    // already-ordered run records
    struct Acc {
        std::vector<double> wsse, osse, gap, ngap;
    };
    std::vector<std::pair<std::pair<std::string, std::string>, Acc>> groups;
    for (const auto& run : report.runs) {
        const auto key = std::make_pair(run.case_label, run.method);
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == key; });
        if (it == groups.end()) {
            groups.push_back({key, {}});
            it = std::prev(groups.end());
        }
        it->second.wsse.push_back(run.metrics.wsse);
        it->second.osse.push_back(run.metrics.osse);
        if (run.metrics.gap) it->second.gap.push_back(*run.metrics.gap);
        if (run.metrics.ngap) it->second.ngap.push_back(*run.metrics.ngap);
    }
    auto mean_of = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    auto std_of = [&](const std::vector<double>& v, double mean) {
        if (v.size() < 2) return 0.0;
        double s = 0.0;
        for (double x : v) s += (x - mean) * (x - mean);
        return std::sqrt(s / static_cast<double>(v.size() - 1));
    };
    for (const auto& [key, acc] : groups) {
        AggregateRecord a;
        a.case_label = key.first;
        a.method = key.second;
        a.count = acc.wsse.size();
        a.wsse_mean = mean_of(acc.wsse);
        a.wsse_std = std_of(acc.wsse, a.wsse_mean);
        a.osse_mean = mean_of(acc.osse);
        a.osse_std = std_of(acc.osse, a.osse_mean);
        if (!acc.gap.empty()) {
            a.gap_mean = mean_of(acc.gap);
            a.gap_std = std_of(acc.gap, *a.gap_mean);
            a.ngap_mean = mean_of(acc.ngap);
            a.ngap_std = std_of(acc.ngap, *a.ngap_mean);
        }
        report.aggregates.push_back(std::move(a));
    }
}

CommonKnobs knobs_from_spec(const ExperimentSpec& spec) {
    CommonKnobs k;
    k.k = spec.k != 0 ? spec.k : ground_truth_k(spec.case_id);
    k.m = spec.m;
    k.formula = spec.membership_formula;
    k.fcm_epsilon = spec.fcm_epsilon;
    k.fcm_max_iter = spec.fcm_max_iter;
    k.run_central = spec.run_central;
    k.avg_methods = spec.avg_methods;
    k.local_epochs = spec.local_epochs;
    k.max_rounds = spec.max_rounds;
    k.round_epsilon = spec.round_epsilon;
    k.init_strategy = spec.init_strategy;
    k.inner_kmeans_n_init = spec.inner_kmeans_n_init;
    return k;
}

CellTask build_task(const ExperimentSpec& spec, std::uint64_t data_seed) {
    CellTask task;
    task.label = case_label(spec.case_id);
    switch (spec.case_id) {
    case ExperimentCase::Case1Equal:
        task.sigma = 0.5;
        task.dataset = build_case1(Case1Variant::Equal, data_seed);
        break;
    case ExperimentCase::Case1Unequal:
        task.sigma = 0.5;
        task.dataset = build_case1(Case1Variant::Unequal, data_seed);
        break;
    case ExperimentCase::Case2:
        task.sigma = 1.1;
        task.dataset = build_case2(data_seed);
        break;
    case ExperimentCase::Case3:
        task.sigma = 1.0;
        task.dataset = build_case3(spec.points_per_client, data_seed);
        break;
    case ExperimentCase::G2: {
        task.sigma = spec.g2_sigma;
        task.label += "_d" + std::to_string(spec.g2_dim) + "_s" + fmt(spec.g2_sigma);
        auto [data, truth] = gen_g2(spec.g2_dim, spec.g2_sigma, data_seed);
        auto shards = partition_uniform(data, spec.n_clients, mix_seed(data_seed, 21));
        for (std::size_t c = 0; c < shards.size(); ++c)
            task.dataset.clients.push_back({static_cast<int>(c), std::move(shards[c])});
        task.dataset.ground_truth_centers = std::move(truth);
        break;
    }
    case ExperimentCase::Custom: {
        Matrix data = load_dataset(spec.custom_data);
        auto shards = partition_uniform(data, spec.n_clients, mix_seed(data_seed, 21));
        for (std::size_t c = 0; c < shards.size(); ++c)
            task.dataset.clients.push_back({static_cast<int>(c), std::move(shards[c])});
        // no ground truth for user data: gap/ngap stay unset
        break;
    }
    }
    return task;
}

} // namespace

std::string case_label(ExperimentCase c) {
    switch (c) {
    case ExperimentCase::Case1Equal: return "case1_equal";
    case ExperimentCase::Case1Unequal: return "case1_unequal";
    case ExperimentCase::Case2: return "case2";
    case ExperimentCase::Case3: return "case3";
    case ExperimentCase::G2: return "g2";
    case ExperimentCase::Custom: return "custom";
    }
    return "unknown";
}

std::size_t ground_truth_k(ExperimentCase c) {
    switch (c) {
    case ExperimentCase::Case1Equal:
    case ExperimentCase::Case1Unequal:
    case ExperimentCase::Case2: return 3;
    case ExperimentCase::Case3: return 4;
    case ExperimentCase::G2: return 2;
    case ExperimentCase::Custom: return 2;
    }
    return 2;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    if (spec.repetitions < 1)
        throw std::invalid_argument("run_experiment: repetitions must be >= 1");
    const auto start = std::chrono::steady_clock::now();
    const CommonKnobs knobs = knobs_from_spec(spec);
    ExperimentReport report;
    report.name = spec.name;
    report.spec_json = spec_to_json(spec);
    std::vector<std::vector<RunRecord>> slots(spec.repetitions);
    std::vector<std::string> errors(spec.repetitions);
    parallel_for(spec.repetitions, 16, [&](std::size_t rep) {
        const std::uint64_t rep_seed = spec.base_seed + rep;
        try {
            CellTask task = build_task(spec, mix_seed(rep_seed, kDataRole));
            slots[rep] = run_cell(task, knobs, static_cast<int>(rep), rep_seed);
        } catch (const std::exception& e) {
            errors[rep] = e.what();
        }
    });
    for (int rep = 0; rep < spec.repetitions; ++rep) {
        for (auto& r : slots[rep]) report.runs.push_back(std::move(r));
        if (!errors[rep].empty())
            report.errors.push_back("rep " + std::to_string(rep) + ": " + errors[rep]);
    }
    append_aggregates(report);
    report.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

ExperimentReport run_g2_suite(const G2SuiteSpec& spec) {
    if (spec.repetitions < 1 || spec.dims.empty() || spec.sigmas.empty())
        throw std::invalid_argument("run_g2_suite: empty parameter grid");
    const auto start = std::chrono::steady_clock::now();
    ExperimentSpec cell_spec;
    cell_spec.case_id = ExperimentCase::G2;
    cell_spec.n_clients = spec.n_clients;
    cell_spec.k = spec.k;
    cell_spec.m = spec.m;
    cell_spec.membership_formula = spec.membership_formula;
    cell_spec.fcm_epsilon = spec.fcm_epsilon;
    cell_spec.fcm_max_iter = spec.fcm_max_iter;
    cell_spec.local_epochs = spec.local_epochs;
    cell_spec.max_rounds = spec.max_rounds;
    cell_spec.round_epsilon = spec.round_epsilon;
    cell_spec.init_strategy = spec.init_strategy;
    cell_spec.inner_kmeans_n_init = spec.inner_kmeans_n_init;
    const CommonKnobs knobs = knobs_from_spec(cell_spec);

    const std::size_t n_cells = spec.dims.size() * spec.sigmas.size();
    const std::size_t n_tasks = n_cells * spec.repetitions;
    std::vector<std::vector<RunRecord>> slots(n_tasks);
    std::vector<std::string> errors(n_tasks);
    parallel_for(n_tasks, 8, [&](std::size_t idx) {
        const std::size_t cell = idx / spec.repetitions;
        const int rep = static_cast<int>(idx % spec.repetitions);
        ExperimentSpec s = cell_spec;
        s.g2_dim = spec.dims[cell / spec.sigmas.size()];
        s.g2_sigma = spec.sigmas[cell % spec.sigmas.size()];
        const std::uint64_t rep_seed = spec.base_seed + idx;
        try {
            CellTask task = build_task(s, mix_seed(rep_seed, kDataRole));
            slots[idx] = run_cell(task, knobs, rep, rep_seed);
        } catch (const std::exception& e) {
            errors[idx] = e.what();
        }
    });
    ExperimentReport report;
    report.name = spec.name;
    json j;
    j["suite"] = "g2";
    j["dims"] = spec.dims;
    j["sigmas"] = spec.sigmas;
    j["n_clients"] = spec.n_clients;
    j["repetitions"] = spec.repetitions;
    j["base_seed"] = spec.base_seed;
    j["k"] = spec.k;
    j["m"] = spec.m;
    j["local_epochs"] = spec.local_epochs;
    report.spec_json = j.dump();
    for (std::size_t idx = 0; idx < n_tasks; ++idx) {
        for (auto& r : slots[idx]) report.runs.push_back(std::move(r));
        if (!errors[idx].empty())
            report.errors.push_back("task " + std::to_string(idx) + ": " + errors[idx]);
    }
    append_aggregates(report);
    report.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_report: cannot open " + path.string());
    out << contents;
    if (!out) throw std::runtime_error("emit_report: write failed for " + path.string());
}

std::string runs_csv(const ExperimentReport& report) {
    std::string out = "case,method,rep,seed,sigma,rounds," + MetricsReport::csv_header() + "\n";
    for (const auto& r : report.runs) {
        out += r.case_label + "," + r.method + "," + std::to_string(r.rep) + "," +
               std::to_string(r.seed) + "," + fmt(r.sigma) + "," + std::to_string(r.rounds) +
               "," + r.metrics.csv_row() + "\n";
    }
    return out;
}

std::string summary_csv(const ExperimentReport& report) {
    std::string out = "case,method,metric,mean,std,count\n";
    for (const auto& a : report.aggregates) {
        auto row = [&](const char* metric, double mean, double sd) {
            out += a.case_label + "," + a.method + "," + metric + "," + fmt(mean) + "," +
                   fmt(sd) + "," + std::to_string(a.count) + "\n";
        };
        row("wsse", a.wsse_mean, a.wsse_std);
        row("osse", a.osse_mean, a.osse_std);
        if (a.gap_mean) row("gap", *a.gap_mean, *a.gap_std);
        if (a.ngap_mean) row("ngap", *a.ngap_mean, *a.ngap_std);
    }
    return out;
}

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

bool is_g2_report(const ExperimentReport& report) {
    return !report.runs.empty() && report.runs.front().case_label.rfind("g2", 0) == 0;
}

// per-method list of per-set mean gaps (one value per grid cell)
std::map<std::string, std::vector<double>> per_set_mean_gaps(const ExperimentReport& report) {
    std::map<std::string, std::vector<double>> out;
    for (const auto& a : report.aggregates)
        if (a.gap_mean) out[a.method].push_back(*a.gap_mean);
    return out;
}

std::string quantiles_csv(const ExperimentReport& report) {
    std::string out = "method,min,q25,median,q75,max,count\n";
    for (const auto& [method, gaps] : per_set_mean_gaps(report)) {
        if (gaps.empty()) continue;
        out += method + "," + fmt(quantile(gaps, 0.0)) + "," + fmt(quantile(gaps, 0.25)) + "," +
               fmt(quantile(gaps, 0.5)) + "," + fmt(quantile(gaps, 0.75)) + "," +
               fmt(quantile(gaps, 1.0)) + "," + std::to_string(gaps.size()) + "\n";
    }
    return out;
}

json report_json(const ExperimentReport& report) {
    json j;
    j["name"] = report.name;
    j["spec"] = json::parse(report.spec_json);
    j["elapsed_ms"] = report.elapsed_ms;
    j["runs"] = json::array();
    for (const auto& r : report.runs) {
        json run;
        run["case"] = r.case_label;
        run["method"] = r.method;
        run["rep"] = r.rep;
        run["seed"] = r.seed;
        run["sigma"] = r.sigma;
        run["rounds"] = r.rounds;
        run["metrics"] = json::parse(r.metrics.to_json());
        j["runs"].push_back(std::move(run));
    }
    j["aggregates"] = json::array();
    for (const auto& a : report.aggregates) {
        json agg;
        agg["case"] = a.case_label;
        agg["method"] = a.method;
        agg["count"] = a.count;
        agg["wsse_mean"] = a.wsse_mean;
        agg["wsse_std"] = a.wsse_std;
        agg["osse_mean"] = a.osse_mean;
        agg["osse_std"] = a.osse_std;
        if (a.gap_mean) {
            agg["gap_mean"] = *a.gap_mean;
            agg["gap_std"] = *a.gap_std;
            agg["ngap_mean"] = *a.ngap_mean;
            agg["ngap_std"] = *a.ngap_std;
        }
        j["aggregates"].push_back(std::move(agg));
    }
    if (!report.errors.empty()) j["errors"] = report.errors;
    return j;
}

} // namespace

std::vector<std::filesystem::path> emit_report(const ExperimentReport& report,
                                               ReportFormat format,
                                               const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& file, const std::string& contents) {
        const auto path = out_dir / file;
        write_file(path, contents);
        written.push_back(path);
    };
    switch (format) {
    case ReportFormat::Csv:
        emit(report.name + "_runs.csv", runs_csv(report));
        emit(report.name + "_summary.csv", summary_csv(report));
        if (is_g2_report(report)) emit(report.name + "_quantiles.csv", quantiles_csv(report));
        break;
    case ReportFormat::Json:
        emit(report.name + ".json", report_json(report).dump(2) + "\n");
        break;
    case ReportFormat::PlotData: {
        if (is_g2_report(report)) {
            // figure series: mean gap per sigma and mean osse per dimension
            std::map<std::string, std::map<double, std::pair<double, std::size_t>>> by_sigma;
            std::map<std::string, std::map<std::size_t, std::pair<double, std::size_t>>> by_dim;
            for (const auto& r : report.runs) {
                if (r.metrics.gap) {
                    auto& cell = by_sigma[r.method][r.sigma];
                    cell.first += *r.metrics.gap;
                    cell.second += 1;
                }
                auto& ocell = by_dim[r.method][r.metrics.dim];
                ocell.first += r.metrics.osse;
                ocell.second += 1;
            }
            for (const auto& [method, series] : by_sigma) {
                std::string out;
                for (const auto& [sigma, acc] : series)
                    out += fmt(sigma) + " " + fmt(acc.first / acc.second) + "\n";
                emit(report.name + "_gap_vs_sigma_" + method + ".dat", out);
            }
            for (const auto& [method, series] : by_dim) {
                std::string out;
                for (const auto& [dim, acc] : series)
                    out += std::to_string(dim) + " " + fmt(acc.first / acc.second) + "\n";
                emit(report.name + "_osse_vs_dim_" + method + ".dat", out);
            }
        } else {
            std::map<std::string, std::string> series;
            for (const auto& r : report.runs)
                if (r.metrics.gap)
                    series[r.method] += std::to_string(r.rep) + " " + fmt(*r.metrics.gap) + "\n";
            for (const auto& [method, out] : series)
                emit(report.name + "_gap_per_rep_" + method + ".dat", out);
        }
        break;
    }
    }
    return written;
}

namespace {

const std::map<std::string, ExperimentCase> kCaseNames = {
    {"case1_equal", ExperimentCase::Case1Equal},
    {"case1_unequal", ExperimentCase::Case1Unequal},
    {"case2", ExperimentCase::Case2},
    {"case3", ExperimentCase::Case3},
    {"g2", ExperimentCase::G2},
    {"custom", ExperimentCase::Custom},
};

} // namespace

ExperimentSpec parse_spec_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    ExperimentSpec spec;
    const std::string case_name = j.at("case").get<std::string>();
    const auto it = kCaseNames.find(case_name);
    if (it == kCaseNames.end())
        throw std::invalid_argument("spec: unknown case '" + case_name + "'");
    spec.case_id = it->second;
    spec.name = j.value("name", case_label(spec.case_id));
    if (j.contains("points_per_client")) {
        const auto ppc = j.at("points_per_client").get<std::vector<std::size_t>>();
        if (ppc.size() != 3)
            throw std::invalid_argument("spec: points_per_client needs exactly 3 entries");
        std::copy(ppc.begin(), ppc.end(), spec.points_per_client.begin());
    }
    spec.g2_dim = j.value("g2_dim", spec.g2_dim);
    spec.g2_sigma = j.value("g2_sigma", spec.g2_sigma);
    spec.n_clients = j.value("n_clients", spec.n_clients);
    spec.custom_data = j.value("custom_data", std::string{});
    spec.k = j.value("k", spec.k);
    spec.m = j.value("m", spec.m);
    if (j.contains("membership_formula")) {
        const std::string f = j.at("membership_formula").get<std::string>();
        if (f == "paper_literal") spec.membership_formula = MembershipFormula::PaperLiteral;
        else if (f == "bezdek") spec.membership_formula = MembershipFormula::Bezdek;
        else throw std::invalid_argument("spec: unknown membership_formula '" + f + "'");
    }
    spec.fcm_epsilon = j.value("fcm_epsilon", spec.fcm_epsilon);
    spec.fcm_max_iter = j.value("fcm_max_iter", spec.fcm_max_iter);
    spec.run_central = j.value("run_central", spec.run_central);
    if (j.contains("avg_methods")) {
        spec.avg_methods.clear();
        for (const auto& name : j.at("avg_methods")) {
            if (name == "avg1") spec.avg_methods.push_back(AvgMethod::Avg1);
            else if (name == "avg2") spec.avg_methods.push_back(AvgMethod::Avg2);
            else throw std::invalid_argument("spec: unknown avg method");
        }
    }
    spec.repetitions = j.value("repetitions", spec.repetitions);
    spec.base_seed = j.value("base_seed", spec.base_seed);
    spec.local_epochs = j.value("local_epochs", spec.local_epochs);
    spec.max_rounds = j.value("max_rounds", spec.max_rounds);
    spec.round_epsilon = j.value("round_epsilon", spec.round_epsilon);
    if (j.contains("init_strategy")) {
        const std::string s = j.at("init_strategy").get<std::string>();
        if (s == "bounding_box") spec.init_strategy = InitStrategy::BoundingBoxUniform;
        else if (s == "client_sample") spec.init_strategy = InitStrategy::ClientSample;
        else throw std::invalid_argument("spec: unknown init_strategy '" + s + "'");
    }
    spec.inner_kmeans_n_init = j.value("inner_kmeans_n_init", spec.inner_kmeans_n_init);
    return spec;
}

std::string spec_to_json(const ExperimentSpec& spec) {
    json j;
    j["case"] = case_label(spec.case_id);
    j["name"] = spec.name;
    if (spec.case_id == ExperimentCase::Case3)
        j["points_per_client"] = spec.points_per_client;
    if (spec.case_id == ExperimentCase::G2) {
        j["g2_dim"] = spec.g2_dim;
        j["g2_sigma"] = spec.g2_sigma;
    }
    if (spec.case_id == ExperimentCase::G2 || spec.case_id == ExperimentCase::Custom)
        j["n_clients"] = spec.n_clients;
    if (spec.case_id == ExperimentCase::Custom)
        j["custom_data"] = spec.custom_data.string();
    j["k"] = spec.k != 0 ? spec.k : ground_truth_k(spec.case_id);
    j["m"] = spec.m;
    j["membership_formula"] =
        spec.membership_formula == MembershipFormula::PaperLiteral ? "paper_literal" : "bezdek";
    j["fcm_epsilon"] = spec.fcm_epsilon;
    j["fcm_max_iter"] = spec.fcm_max_iter;
    j["run_central"] = spec.run_central;
    j["avg_methods"] = json::array();
    for (AvgMethod m : spec.avg_methods)
        j["avg_methods"].push_back(m == AvgMethod::Avg1 ? "avg1" : "avg2");
    j["repetitions"] = spec.repetitions;
    j["base_seed"] = spec.base_seed;
    j["local_epochs"] = spec.local_epochs;
    j["max_rounds"] = spec.max_rounds;
    j["round_epsilon"] = spec.round_epsilon;
    j["init_strategy"] = spec.init_strategy == InitStrategy::BoundingBoxUniform
                             ? "bounding_box"
                             : "client_sample";
    j["inner_kmeans_n_init"] = spec.inner_kmeans_n_init;
    return j.dump();
}

} // namespace ffcm
