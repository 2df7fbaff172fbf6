#include "ffcm/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ffcm/matching.hpp"

namespace ffcm {

std::vector<int> hard_assign(const Matrix& membership) {
    std::vector<int> labels(membership.rows(), 0);
    for (std::size_t i = 0; i < membership.rows(); ++i) {
        double best = membership(i, 0);
        for (std::size_t j = 1; j < membership.cols(); ++j) {
            if (membership(i, j) > best) { // strict: ties keep the lowest index
                best = membership(i, j);
                labels[i] = static_cast<int>(j);
            }
        }
    }
    return labels;
}

namespace {

double sse_sum(const Matrix& data, const std::vector<int>& labels, const Matrix& centers,
               SseVariant variant, bool within) {
    if (data.cols() != centers.cols() || labels.size() != data.rows())
        throw std::invalid_argument("wsse/osse: shape mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t j = 0; j < centers.rows(); ++j) {
            if ((labels[i] == static_cast<int>(j)) != within) continue;
            const double d2 = squared_distance(data.row(i), centers.row(j), data.cols());
            total += variant == SseVariant::SquaredDistance ? d2 : std::sqrt(d2);
        }
    }
    return total / (static_cast<double>(data.rows()) * static_cast<double>(data.cols()));
}

} // namespace

double wsse(const Matrix& data, const std::vector<int>& labels, const Matrix& centers,
            SseVariant variant) {
    return sse_sum(data, labels, centers, variant, true);
}

double osse(const Matrix& data, const std::vector<int>& labels, const Matrix& centers,
            SseVariant variant) {
    return sse_sum(data, labels, centers, variant, false);
}

double knowledge_gap(const Matrix& learned, const Matrix& truth) {
    if (learned.rows() != truth.rows())
        throw std::invalid_argument("knowledge_gap: cluster count mismatch");
    if (learned.cols() != truth.cols())
        throw std::invalid_argument("knowledge_gap: dimension mismatch");
    const Matrix cost = center_distance_matrix(learned, truth);
    const std::vector<int> assign = min_cost_assignment(cost);
    double gap = 0.0;
    for (std::size_t i = 0; i < learned.rows(); ++i) gap += cost(i, assign[i]);
    return gap;
}

double ngap(double gap, std::size_t dim) {
    if (dim < 1) throw std::invalid_argument("ngap: dim must be >= 1");
    return gap / std::sqrt(static_cast<double>(dim));
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

std::string MetricsReport::csv_header() {
    return "wsse,osse,gap,ngap,n_points,dim,k";
}

std::string MetricsReport::csv_row() const {
    std::string row = fmt(wsse) + "," + fmt(osse) + ",";
    row += gap ? fmt(*gap) : "";
    row += ",";
    row += ngap ? fmt(*ngap) : "";
    row += "," + std::to_string(n_points) + "," + std::to_string(dim) + "," + std::to_string(k);
    return row;
}

std::string MetricsReport::to_json() const {
    std::string out = "{\"wsse\":" + fmt(wsse) + ",\"osse\":" + fmt(osse);
    if (gap) out += ",\"gap\":" + fmt(*gap);
    if (ngap) out += ",\"ngap\":" + fmt(*ngap);
    out += ",\"n_points\":" + std::to_string(n_points) + ",\"dim\":" + std::to_string(dim) +
           ",\"k\":" + std::to_string(k) + "}";
    return out;
}

} // namespace ffcm
