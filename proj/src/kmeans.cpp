#include "ffcm/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ffcm {

std::vector<int> kmeans_assign(const Matrix& data, const Matrix& centers) {
    if (data.cols() != centers.cols())
        throw std::invalid_argument("kmeans_assign: dimension mismatch");
    const std::size_t n = data.rows(), k = centers.rows(), d = data.cols();
    std::vector<int> labels(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const double dist = squared_distance(data.row(i), centers.row(j), d);
            if (dist < best) { // strict: ties keep the lowest index
                best = dist;
                arg = static_cast<int>(j);
            }
        }
        labels[i] = arg;
    }
    return labels;
}

Matrix kmeans_center_update(const Matrix& data, const std::vector<int>& labels, std::size_t k) {
    const std::size_t n = data.rows(), d = data.cols();
    if (labels.size() != n)
        throw std::invalid_argument("kmeans_center_update: label count mismatch");
    Matrix centers(k, d, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const int lab = labels[i];
        if (lab < 0 || static_cast<std::size_t>(lab) >= k)
            throw std::invalid_argument("kmeans_center_update: label out of range");
        ++counts[lab];
        const double* x = data.row(i);
        double* c = centers.row(lab);
        for (std::size_t j = 0; j < d; ++j) c[j] += x[j];
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (counts[j] == 0) continue;
        double* c = centers.row(j);
        const double inv_count = static_cast<double>(counts[j]);
        for (std::size_t l = 0; l < d; ++l) c[l] /= inv_count;
    }
    // reseed empty clusters to the point farthest from its own center
    std::vector<char> used(n, 0);
    for (std::size_t j = 0; j < k; ++j) {
        if (counts[j] != 0) continue;
        double far_dist = -1.0;
        std::size_t far_idx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            const double dist = squared_distance(data.row(i), centers.row(labels[i]), d);
            if (dist > far_dist) {
                far_dist = dist;
                far_idx = i;
            }
        }
        used[far_idx] = 1;
        for (std::size_t l = 0; l < d; ++l) centers(j, l) = data(far_idx, l);
    }
    return centers;
}

Matrix kmeanspp_init(const Matrix& data, std::size_t k, Rng& rng) {
    const std::size_t n = data.rows(), d = data.cols();
    if (n < k)
        throw std::invalid_argument("kmeanspp_init: fewer points than clusters");
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    std::vector<char> taken(n, 0);
    chosen.push_back(rng.index(n));
    taken[chosen.back()] = 1;
    std::vector<double> min_d2(n);
    for (std::size_t i = 0; i < n; ++i)
        min_d2[i] = squared_distance(data.row(i), data.row(chosen.back()), d);
    while (chosen.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += min_d2[i];
        std::size_t next = n;
        if (total > 0.0) {
            // D^2 sampling: P(i) proportional to min squared distance
            const double r = rng.uniform() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += min_d2[i];
                if (r < acc) {
                    next = i;
                    break;
                }
            }
            if (next == n) next = n - 1; // numeric edge of the prefix walk
        }
        if (next == n || taken[next]) {
            // all remaining mass at distance zero (duplicates); take the
            // lowest untaken index for determinism
            next = 0;
            while (next < n && taken[next]) ++next;
        }
        taken[next] = 1;
        chosen.push_back(next);
        for (std::size_t i = 0; i < n; ++i)
            min_d2[i] = std::min(min_d2[i], squared_distance(data.row(i), data.row(next), d));
    }
    Matrix centers(k, d);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l = 0; l < d; ++l) centers(j, l) = data(chosen[j], l);
    return centers;
}

double kmeans_objective(const Matrix& data, const std::vector<int>& labels, const Matrix& centers) {
    if (data.cols() != centers.cols() || labels.size() != data.rows())
        throw std::invalid_argument("kmeans_objective: shape mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i)
        total += squared_distance(data.row(i), centers.row(labels[i]), data.cols());
    return total;
}

KmeansResult kmeans_fit(const Matrix& data, std::size_t k, const KmeansConfig& config) {
    if (data.rows() < k)
        throw std::invalid_argument("kmeans_fit: fewer points than clusters");
    Rng rng(config.rng_seed);
    KmeansResult best;
    bool have_best = false;
    for (int run = 0; run < config.n_init; ++run) {
        KmeansResult cur;
        cur.centers = kmeanspp_init(data, k, rng);
        cur.labels = kmeans_assign(data, cur.centers);
        for (int it = 0; it < config.max_iter; ++it) {
            cur.centers = kmeans_center_update(data, cur.labels, k);
            std::vector<int> next = kmeans_assign(data, cur.centers);
            cur.objective_history.push_back(kmeans_objective(data, next, cur.centers));
            cur.iterations = it + 1;
            // ||A_prev - A_cur||^2 counts 2 per changed label
            std::size_t changed = 0;
            for (std::size_t i = 0; i < next.size(); ++i)
                changed += next[i] != cur.labels[i];
            cur.labels = std::move(next);
            if (2.0 * static_cast<double>(changed) < config.epsilon) break;
        }
        cur.objective = kmeans_objective(data, cur.labels, cur.centers);
        if (!have_best || cur.objective < best.objective) {
            best = std::move(cur);
            have_best = true;
        }
    }
    return best;
}

} // namespace ffcm
