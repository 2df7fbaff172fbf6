#include "ffcm/federation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "ffcm/matching.hpp"

namespace ffcm {

namespace {

void check_clients(const std::vector<ClientState>& clients) {
    if (clients.empty())
        throw std::invalid_argument("federation: empty client list");
    const std::size_t d = clients.front().data.cols();
    for (const auto& c : clients) {
        if (c.data.rows() == 0)
            throw std::invalid_argument("federation: client has no data");
        if (c.data.cols() != d)
            throw std::invalid_argument("federation: client dimensions differ");
    }
}

} // namespace

Matrix server_init_centers(const std::vector<ClientState>& clients, std::size_t k,
                           InitStrategy strategy, Rng& rng) {
    check_clients(clients);
    if (k < 1) throw std::invalid_argument("server_init_centers: k must be >= 1");
    const std::size_t d = clients.front().data.cols();
    if (strategy == InitStrategy::BoundingBoxUniform) {
        // clients only disclose per-dimension min/max of their shard
        std::vector<double> lo(d, std::numeric_limits<double>::infinity());
        std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
        for (const auto& c : clients) {
            for (std::size_t i = 0; i < c.data.rows(); ++i) {
                const double* x = c.data.row(i);
                for (std::size_t j = 0; j < d; ++j) {
                    lo[j] = std::min(lo[j], x[j]);
                    hi[j] = std::max(hi[j], x[j]);
                }
            }
        }
        Matrix centers(k, d);
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t j = 0; j < d; ++j) centers(c, j) = rng.uniform(lo[j], hi[j]);
        return centers;
    }
    // ClientSample: k uniform points per client, then D^2 sampling over the pool
    Matrix pool(clients.size() * k, d);
    std::size_t row = 0;
    for (const auto& c : clients) {
        for (std::size_t s = 0; s < k; ++s, ++row) {
            const std::size_t idx = rng.index(c.data.rows());
            for (std::size_t j = 0; j < d; ++j) pool(row, j) = c.data(idx, j);
        }
    }
    return kmeanspp_init(pool, k, rng);
}

ClientUpdate client_local_update(const ClientState& client, const Matrix& global_centers,
                                 const FedConfig& config) {
    if (client.data.cols() != global_centers.cols())
        throw std::invalid_argument("client_local_update: dimension mismatch");
    Matrix centers = global_centers;
    Matrix membership;
    for (int epoch = 0; epoch < config.local_epochs; ++epoch) {
        Matrix next = fcm_membership_update(client.data, centers, config.fcm);
        centers = fcm_center_update(client.data, next, config.fcm.m);
        if (epoch > 0) {
            double delta2 = 0.0;
            for (std::size_t idx = 0; idx < next.size(); ++idx) {
                const double diff = next.data()[idx] - membership.data()[idx];
                delta2 += diff * diff;
            }
            membership = std::move(next);
            if (std::sqrt(delta2) <= config.fcm.epsilon) break;
        } else {
            membership = std::move(next);
        }
    }
    ClientUpdate update;
    update.client_id = client.client_id;
    update.local_centers = std::move(centers);
    update.weights.assign(global_centers.rows(), 0.0);
    for (std::size_t i = 0; i < membership.rows(); ++i)
        for (std::size_t j = 0; j < membership.cols(); ++j)
            update.weights[j] += membership_pow(membership(i, j), config.fcm.m);
    return update;
}

Matrix server_avg1(const std::vector<ClientUpdate>& updates, const Matrix* previous) {
    if (updates.empty())
        throw std::invalid_argument("server_avg1: no updates");
    const std::size_t k = updates.front().local_centers.rows();
    const std::size_t d = updates.front().local_centers.cols();
    for (const auto& up : updates) {
        if (up.local_centers.rows() != k || up.local_centers.cols() != d ||
            up.weights.size() != k)
            throw std::invalid_argument("server_avg1: update shapes differ");
    }
    Matrix centers(k, d, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double total = 0.0;
        for (const auto& up : updates) {
            total += up.weights[j];
            for (std::size_t l = 0; l < d; ++l)
                centers(j, l) += up.weights[j] * up.local_centers(j, l);
        }
        if (total > 0.0) {
            for (std::size_t l = 0; l < d; ++l) centers(j, l) /= total;
        } else if (previous != nullptr) {
            for (std::size_t l = 0; l < d; ++l) centers(j, l) = (*previous)(j, l);
        } else {
            throw DegenerateClusterError("server_avg1: zero total weight for cluster " +
                                         std::to_string(j));
        }
    }
    return centers;
}

Matrix server_avg2(const std::vector<ClientUpdate>& updates, std::size_t k,
                   const KmeansConfig& inner_kmeans, const Matrix* warm_start) {
    if (updates.empty())
        throw std::invalid_argument("server_avg2: no updates");
    const std::size_t d = updates.front().local_centers.cols();
    std::size_t pooled = 0;
    for (const auto& up : updates) pooled += up.local_centers.rows();
    if (pooled < k)
        throw std::invalid_argument("server_avg2: fewer pooled centers than clusters");
    Matrix pool(pooled, d);
    std::size_t row = 0;
    for (const auto& up : updates)
        for (std::size_t i = 0; i < up.local_centers.rows(); ++i, ++row)
            for (std::size_t j = 0; j < d; ++j) pool(row, j) = up.local_centers(i, j);
    if (warm_start != nullptr) {
        // single Lloyd run seeded from the previous global centers
        Matrix centers = *warm_start;
        std::vector<int> labels = kmeans_assign(pool, centers);
        for (int it = 0; it < inner_kmeans.max_iter; ++it) {
            centers = kmeans_center_update(pool, labels, k);
            std::vector<int> next = kmeans_assign(pool, centers);
            if (next == labels) break;
            labels = std::move(next);
        }
        return centers;
    }
    return kmeans_fit(pool, k, inner_kmeans).centers;
}

bool server_round_converged(const Matrix& prev, const Matrix& next, double round_epsilon) {
    if (prev.rows() != next.rows() || prev.cols() != next.cols())
        throw std::invalid_argument("server_round_converged: shape mismatch");
    double drift = 0.0;
    for (std::size_t j = 0; j < prev.rows(); ++j)
        drift += std::sqrt(squared_distance(prev.row(j), next.row(j), prev.cols()));
    return drift <= round_epsilon;
}

namespace {

double center_drift(const Matrix& prev, const Matrix& next) {
    double drift = 0.0;
    for (std::size_t j = 0; j < prev.rows(); ++j)
        drift += std::sqrt(squared_distance(prev.row(j), next.row(j), prev.cols()));
    return drift;
}

void write_trace(std::ostream& os, int round, double drift, const Matrix& centers) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", drift);
    os << round << ' ' << buf;
    for (double v : centers.data()) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << ' ' << buf;
    }
    os << '\n';
}

} // namespace

FedResult run_federated(const std::vector<ClientState>& clients, const FedConfig& config,
                        Rng& rng, std::ostream* trace) {
    check_clients(clients);
    Matrix centers = server_init_centers(clients, config.k, config.init_strategy, rng);
    FedResult result;
    for (int round = 0; round < config.max_rounds; ++round) {
        std::vector<ClientUpdate> updates;
        updates.reserve(clients.size());
        for (const auto& client : clients)
            updates.push_back(client_local_update(client, centers, config));
        Matrix next;
        if (config.avg_method == AvgMethod::Avg1) {
            next = server_avg1(updates, &centers);
        } else {
            KmeansConfig inner = config.inner_kmeans;
            inner.rng_seed = rng.raw(); // fresh deterministic seed per round
            next = server_avg2(updates, config.k, inner,
                               config.inner_warm_start ? &centers : nullptr);
            // inner k-means output order is arbitrary; align with the
            // previous round for the drift criterion
            next = match_centers(centers, next);
        }
        const double drift = center_drift(centers, next);
        result.center_drift_history.push_back(drift);
        result.rounds_used = round + 1;
        centers = std::move(next);
        if (trace != nullptr) write_trace(*trace, round, drift, centers);
        if (drift <= config.round_epsilon) break;
    }
    result.global_centers = std::move(centers);
    return result;
}

} // namespace ffcm
