#ifndef FFCM_DATAGEN_HPP
#define FFCM_DATAGEN_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "ffcm/federation.hpp"
#include "ffcm/matrix.hpp"

namespace ffcm {

struct MixtureComponent {
    std::vector<double> mean;
    double sigma = 1.0; // isotropic
    std::size_t count = 0;
};

struct MixtureSpec {
    std::vector<MixtureComponent> components;
    std::uint64_t rng_seed = 0;
};

struct FederatedDataset {
    std::vector<ClientState> clients;
    Matrix ground_truth_centers; // always the specification means, never sample means
};

// Isotropic gaussian samples per component, concatenated in spec order.
Matrix gen_gaussian_shard(const MixtureSpec& spec);

enum class Case1Variant { Equal, Unequal };

// Three 2-D gaussians at (-2,-2), (0,0), (2,2), sigma 0.5. Equal: three
// clients with 333 points per component. Unequal: client 3 instead holds
// 500 points each from the first two components only.
FederatedDataset build_case1(Case1Variant variant, std::uint64_t rng_seed);

// Hidden-cluster set: gaussians at (5,0), (5,10), (10,10), sigma 1.1;
// two clients of 1000 points with component counts (900,50,50) and
// (50,900,50).
FederatedDataset build_case2(std::uint64_t rng_seed);

// Locally absent clusters: four gaussians at the corners of a 10x10
// square, sigma 1.0; client l draws from corners (l, l+1), two equal
// local clusters per client.
FederatedDataset build_case3(const std::array<std::size_t, 3>& points_per_client,
                             std::uint64_t rng_seed);

// G2 benchmark family: 1024 points per gaussian at (500,...) and
// (600,...). Parameters outside the published family (d in {2,4,...,1024},
// sigma in {10,...,100}) generate fine but emit a warning.
std::pair<Matrix, Matrix> gen_g2(std::size_t dim, double sigma, std::uint64_t rng_seed);

// Random permutation split into near-equal shards (sizes differ by <= 1).
std::vector<Matrix> partition_uniform(const Matrix& data, std::size_t n_clients,
                                      std::uint64_t rng_seed);

// Whitespace-separated text, one point per line. save/load round-trips
// exactly (full decimal precision).
Matrix load_dataset(const std::filesystem::path& path);
void save_dataset(const Matrix& data, const std::filesystem::path& path);

} // namespace ffcm

#endif // FFCM_DATAGEN_HPP
