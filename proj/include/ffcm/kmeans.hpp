#ifndef FFCM_KMEANS_HPP
#define FFCM_KMEANS_HPP

#include <cstdint>
#include <vector>

#include "ffcm/matrix.hpp"
#include "ffcm/rng.hpp"

namespace ffcm {

struct KmeansConfig {
    double epsilon = 1e-4;   // on the assignment-change criterion ||A_prev - A_cur||^2
    int max_iter = 300;
    int n_init = 10;         // k-means++ restarts, best objective wins
    std::uint64_t rng_seed = 0;
};

struct KmeansResult {
    Matrix centers;                         // K x d
    std::vector<int> labels;                // length N
    double objective = 0.0;                 // sum of squared distances to assigned centers
    std::vector<double> objective_history;  // objective after each iteration of the winning run
    int iterations = 0;
};

// Nearest-center assignment; ties broken by lowest cluster index.
std::vector<int> kmeans_assign(const Matrix& data, const Matrix& centers);

// Per-cluster means. An empty cluster is reseeded to the point farthest
// from its own cluster's center.
Matrix kmeans_center_update(const Matrix& data, const std::vector<int>& labels, std::size_t k);

// Standard D^2 (k-means++) seeding; returns k rows drawn from data.
Matrix kmeanspp_init(const Matrix& data, std::size_t k, Rng& rng);

double kmeans_objective(const Matrix& data, const std::vector<int>& labels, const Matrix& centers);

KmeansResult kmeans_fit(const Matrix& data, std::size_t k, const KmeansConfig& config = {});

} // namespace ffcm

#endif // FFCM_KMEANS_HPP
