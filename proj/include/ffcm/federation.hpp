#ifndef FFCM_FEDERATION_HPP
#define FFCM_FEDERATION_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ffcm/fcm.hpp"
#include "ffcm/kmeans.hpp"
#include "ffcm/matrix.hpp"
#include "ffcm/rng.hpp"

namespace ffcm {

struct ClientState {
    int client_id = 0;
    Matrix data; // private local shard, never leaves the client
};

// Per-round client message: local centers plus per-cluster support
// weights W_j = sum_i u_ij^m. Raw points are never transmitted.
struct ClientUpdate {
    int client_id = 0;
    Matrix local_centers;         // K x d
    std::vector<double> weights;  // length K, nonnegative
};

enum class AvgMethod { Avg1, Avg2 };

// BoundingBoxUniform: clients report per-dimension min/max only; the
// server samples centers uniformly in the union box. ClientSample leaks
// k raw points per client (documented concession) and D^2-samples from
// the pooled candidates.
enum class InitStrategy { BoundingBoxUniform, ClientSample };

struct FedConfig {
    std::size_t k = 2;
    FcmConfig fcm;
    AvgMethod avg_method = AvgMethod::Avg1;
    int local_epochs = 1;      // membership+center passes per round
    int max_rounds = 50;
    double round_epsilon = 1e-4;
    InitStrategy init_strategy = InitStrategy::BoundingBoxUniform;
    KmeansConfig inner_kmeans; // only used by Avg2
    bool inner_warm_start = false; // seed the inner k-means from the previous global centers
};

struct FedResult {
    Matrix global_centers;
    int rounds_used = 0;
    std::vector<double> center_drift_history; // one entry per executed round
};

Matrix server_init_centers(const std::vector<ClientState>& clients, std::size_t k,
                           InitStrategy strategy, Rng& rng);

// local_epochs x (membership from current centers, then center update),
// starting from the broadcast global centers; stops early once the
// membership change drops below config.fcm.epsilon. Weights come from
// the final membership matrix. Local index j stays aligned with global
// index j (no re-permutation).
ClientUpdate client_local_update(const ClientState& client, const Matrix& global_centers,
                                 const FedConfig& config);

// Weight-proportional mean of local centers. A cluster whose total
// weight is zero keeps the previous round's center when `previous` is
// given, otherwise this is an error.
Matrix server_avg1(const std::vector<ClientUpdate>& updates, const Matrix* previous = nullptr);

// k-means over the P*K pooled local centers, weights ignored. Output
// rows come in inner k-means order; callers re-match to the previous
// round's centers for drift measurement.
Matrix server_avg2(const std::vector<ClientUpdate>& updates, std::size_t k,
                   const KmeansConfig& inner_kmeans, const Matrix* warm_start = nullptr);

// sum_k ||prev_k - next_k|| <= round_epsilon
bool server_round_converged(const Matrix& prev, const Matrix& next, double round_epsilon);

// Full protocol: init, then broadcast / local update / aggregate /
// convergence check until the centers stabilize or max_rounds is hit.
// When `trace` is given, one line per round is written:
//   round drift c00 c01 ... (centers row-major, %.17g)
FedResult run_federated(const std::vector<ClientState>& clients, const FedConfig& config,
                        Rng& rng, std::ostream* trace = nullptr);

} // namespace ffcm

#endif // FFCM_FEDERATION_HPP
