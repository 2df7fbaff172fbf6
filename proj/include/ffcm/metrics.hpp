#ifndef FFCM_METRICS_HPP
#define FFCM_METRICS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ffcm/matrix.hpp"

namespace ffcm {

// Distance variant for the SSE-style indices. The reference tables this
// toolkit reproduces were computed from plain euclidean distances, so
// MeanDistance is the default; SquaredDistance is the textbook variant.
enum class SseVariant { MeanDistance, SquaredDistance };

// argmax per membership row, lowest index on ties
std::vector<int> hard_assign(const Matrix& membership);

// Within-cluster index: sum over points of the distance to the assigned
// center, normalized by N*d. Smaller is better.
double wsse(const Matrix& data, const std::vector<int>& labels, const Matrix& centers,
            SseVariant variant = SseVariant::MeanDistance);

// Outside-cluster index: sum over points of the distances to the K-1
// centers the point is not assigned to, normalized by N*d. Bigger is better.
double osse(const Matrix& data, const std::vector<int>& labels, const Matrix& centers,
            SseVariant variant = SseVariant::MeanDistance);

// Sum of distances between matched centers under the minimum-cost
// correspondence, so the metric measures geometry, not indexing.
double knowledge_gap(const Matrix& learned, const Matrix& truth);

// Dimension-normalized gap, gap / sqrt(d).
double ngap(double gap, std::size_t dim);

struct MetricsReport {
    double wsse = 0.0;
    double osse = 0.0;
    std::optional<double> gap;
    std::optional<double> ngap;
    std::size_t n_points = 0;
    std::size_t dim = 0;
    std::size_t k = 0;

    static std::string csv_header();
    std::string csv_row() const;
    std::string to_json() const;
};

} // namespace ffcm

#endif // FFCM_METRICS_HPP
