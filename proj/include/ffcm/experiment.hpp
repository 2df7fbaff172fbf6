#ifndef FFCM_EXPERIMENT_HPP
#define FFCM_EXPERIMENT_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ffcm/datagen.hpp"
#include "ffcm/federation.hpp"
#include "ffcm/metrics.hpp"

namespace ffcm {

enum class ExperimentCase { Case1Equal, Case1Unequal, Case2, Case3, G2, Custom };

// One reproducible experiment: build the case dataset per repetition,
// run the centralized baseline on the gathered union plus the federated
// protocol with the requested averaging methods, and score everything
// against the ground truth.
struct ExperimentSpec {
    ExperimentCase case_id = ExperimentCase::Case1Equal;
    std::string name = "experiment";

    // case parameters
    std::array<std::size_t, 3> points_per_client{1000, 1000, 1000}; // Case3
    std::size_t g2_dim = 2;                                         // G2
    double g2_sigma = 10.0;                                         // G2
    std::size_t n_clients = 10;           // G2 / Custom uniform partition
    std::filesystem::path custom_data;    // Custom: dataset file to load

    std::size_t k = 0;     // 0 = ground-truth cluster count for the case
    double m = 2.0;
    MembershipFormula membership_formula = MembershipFormula::PaperLiteral;
    double fcm_epsilon = 1e-4;
    int fcm_max_iter = 300;

    bool run_central = true;
    std::vector<AvgMethod> avg_methods{AvgMethod::Avg1, AvgMethod::Avg2};

    int repetitions = 10;
    std::uint64_t base_seed = 1;

    // federation knobs; the paper-table experiments let clients iterate
    // to local convergence, hence the high default
    int local_epochs = 300;
    int max_rounds = 50;
    double round_epsilon = 1e-4;
    InitStrategy init_strategy = InitStrategy::BoundingBoxUniform;
    int inner_kmeans_n_init = 10;
};

struct RunRecord {
    std::string case_label;
    std::string method; // "central", "avg1", "avg2"
    int rep = 0;
    std::uint64_t seed = 0;
    double sigma = 0.0; // dataset sigma where known, 0 otherwise
    int rounds = 0;     // federated rounds, or central iterations
    MetricsReport metrics;
};

struct AggregateRecord {
    std::string case_label;
    std::string method;
    std::size_t count = 0;
    double wsse_mean = 0.0, wsse_std = 0.0;
    double osse_mean = 0.0, osse_std = 0.0;
    std::optional<double> gap_mean, gap_std;
    std::optional<double> ngap_mean, ngap_std;
};

struct ExperimentReport {
    std::string name;
    std::string spec_json;                // resolved spec echo
    std::vector<RunRecord> runs;          // ordered by (case label, rep, method)
    std::vector<AggregateRecord> aggregates;
    std::vector<std::string> errors;      // failure markers for partial results
    double elapsed_ms = 0.0;              // timing metadata, excluded from determinism checks
};

ExperimentReport run_experiment(const ExperimentSpec& spec);

// Cartesian (dim, sigma) grid of G2 sets, P-client uniform split.
struct G2SuiteSpec {
    std::vector<std::size_t> dims{2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    std::vector<double> sigmas{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    std::size_t n_clients = 10;
    int repetitions = 10;
    std::uint64_t base_seed = 1;
    std::size_t k = 2;
    double m = 2.0;
    MembershipFormula membership_formula = MembershipFormula::PaperLiteral;
    double fcm_epsilon = 1e-4;
    int fcm_max_iter = 300;
    int local_epochs = 300;
    int max_rounds = 50;
    double round_epsilon = 1e-4;
    InitStrategy init_strategy = InitStrategy::BoundingBoxUniform;
    int inner_kmeans_n_init = 10;
    std::string name = "g2";

    static G2SuiteSpec reduced() {
        G2SuiteSpec s;
        s.dims = {2, 4, 8, 16, 32, 64, 128};
        s.name = "g2_reduced";
        return s;
    }
};

ExperimentReport run_g2_suite(const G2SuiteSpec& spec);

enum class ReportFormat { Csv, Json, PlotData };

// Csv: <name>_runs.csv and <name>_summary.csv (plus <name>_quantiles.csv
// for G2 reports). Json: <name>.json mirror. PlotData: two-column (x, y)
// whitespace files per figure series. Returns the paths written.
std::vector<std::filesystem::path> emit_report(const ExperimentReport& report,
                                               ReportFormat format,
                                               const std::filesystem::path& out_dir);

// JSON experiment-spec file support (schema documented in the README).
ExperimentSpec parse_spec_json(const std::string& json_text);
std::string spec_to_json(const ExperimentSpec& spec);

std::string case_label(ExperimentCase c);
std::size_t ground_truth_k(ExperimentCase c);

} // namespace ffcm

#endif // FFCM_EXPERIMENT_HPP
