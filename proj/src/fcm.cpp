#include "ffcm/fcm.hpp"

#include <cmath>
#include <limits>

#include "ffcm/rng.hpp"

namespace ffcm {

double membership_pow(double u, double m) {
    if (m == 2.0) return u * u;
    if (m == 1.0) return u;
    return std::pow(u, m);
}

namespace {

// w^(-e) for w >= 1 with fast paths for the exponents the default
// configurations produce (e = 2/(m-1) or 1/(m-1), m = 2)
inline double inv_ratio_pow(double ratio, double e) {
    if (e == 1.0) return 1.0 / ratio;
    if (e == 2.0) return 1.0 / (ratio * ratio);
    return std::pow(ratio, -e);
}

} // namespace

Matrix fcm_membership_update(const Matrix& data, const Matrix& centers, const FcmConfig& config) {
    if (data.cols() != centers.cols())
        throw std::invalid_argument("fcm_membership_update: dimension mismatch");
    if (config.m <= 1.0)
        throw std::invalid_argument("fcm_membership_update: m must be > 1");
    const std::size_t n = data.rows(), k = centers.rows(), d = data.cols();
    const double e = (config.membership_formula == MembershipFormula::PaperLiteral)
                         ? 2.0 / (config.m - 1.0)
                         : 1.0 / (config.m - 1.0);
    Matrix u(n, k);
    std::vector<double> d2(k);
    for (std::size_t i = 0; i < n; ++i) {
        const double* x = data.row(i);
        double d2_min = std::numeric_limits<double>::infinity();
        std::size_t coincident = 0;
        for (std::size_t j = 0; j < k; ++j) {
            d2[j] = squared_distance(x, centers.row(j), d);
            if (d2[j] == 0.0) ++coincident;
            d2_min = std::min(d2_min, d2[j]);
        }
        if (coincident > 0) {
            // point sits on q >= 1 centers: membership 1/q on those
            const double share = 1.0 / static_cast<double>(coincident);
            for (std::size_t j = 0; j < k; ++j) u(i, j) = (d2[j] == 0.0) ? share : 0.0;
            continue;
        }
        // normalize by the smallest distance so every ratio is >= 1 and
        // the powers stay in (0, 1]
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double w = inv_ratio_pow(d2[j] / d2_min, e);
            u(i, j) = w;
            sum += w;
        }
        for (std::size_t j = 0; j < k; ++j) u(i, j) /= sum;
    }
    return u;
}

Matrix fcm_center_update(const Matrix& data, const Matrix& membership, double m) {
    if (membership.rows() != data.rows())
        throw std::invalid_argument("fcm_center_update: shape mismatch");
    if (m <= 1.0)
        throw std::invalid_argument("fcm_center_update: m must be > 1");
    const std::size_t n = data.rows(), k = membership.cols(), d = data.cols();
    Matrix centers(k, d, 0.0);
    std::vector<double> weight(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* x = data.row(i);
        for (std::size_t j = 0; j < k; ++j) {
            const double w = membership_pow(membership(i, j), m);
            weight[j] += w;
            double* c = centers.row(j);
            for (std::size_t l = 0; l < d; ++l) c[l] += w * x[l];
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (weight[j] <= 0.0)
            throw DegenerateClusterError("fcm_center_update: cluster " + std::to_string(j) +
                                         " has zero total membership weight");
        double* c = centers.row(j);
        for (std::size_t l = 0; l < d; ++l) c[l] /= weight[j];
    }
    return centers;
}

double fcm_objective(const Matrix& data, const Matrix& membership, const Matrix& centers, double m) {
    if (membership.rows() != data.rows() || membership.cols() != centers.rows() ||
        data.cols() != centers.cols())
        throw std::invalid_argument("fcm_objective: shape mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i)
        for (std::size_t j = 0; j < centers.rows(); ++j)
            total += membership_pow(membership(i, j), m) *
                     squared_distance(data.row(i), centers.row(j), data.cols());
    return total;
}

FcmResult fcm_fit(const Matrix& data, std::size_t k, const FcmConfig& config) {
    if (data.rows() < k)
        throw std::invalid_argument("fcm_fit: fewer points than clusters");
    const std::size_t n = data.rows();
    Rng rng(config.rng_seed);
    // random initial membership: rows of normalized uniforms
    Matrix u(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            u(i, j) = rng.uniform();
            sum += u(i, j);
        }
        if (sum <= 0.0) {
            for (std::size_t j = 0; j < k; ++j) u(i, j) = 1.0 / static_cast<double>(k);
            continue;
        }
        for (std::size_t j = 0; j < k; ++j) u(i, j) /= sum;
    }
    FcmResult result;
    for (int it = 0; it < config.max_iter; ++it) {
        result.centers = fcm_center_update(data, u, config.m);
        Matrix next = fcm_membership_update(data, result.centers, config);
        result.objective_history.push_back(
            fcm_objective(data, next, result.centers, config.m));
        result.iterations = it + 1;
        double delta2 = 0.0; // Frobenius norm of the membership change
        for (std::size_t idx = 0; idx < next.size(); ++idx) {
            const double diff = next.data()[idx] - u.data()[idx];
            delta2 += diff * diff;
        }
        u = std::move(next);
        if (std::sqrt(delta2) <= config.epsilon) break;
    }
    result.membership = std::move(u);
    return result;
}

} // namespace ffcm
