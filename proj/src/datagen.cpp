#include "ffcm/datagen.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "ffcm/rng.hpp"

namespace ffcm {

Matrix gen_gaussian_shard(const MixtureSpec& spec) {
    if (spec.components.empty())
        throw std::invalid_argument("gen_gaussian_shard: no components");
    const std::size_t d = spec.components.front().mean.size();
    std::size_t total = 0;
    for (const auto& c : spec.components) {
        if (c.mean.size() != d)
            throw std::invalid_argument("gen_gaussian_shard: component dimensions differ");
        if (c.sigma <= 0.0)
            throw std::invalid_argument("gen_gaussian_shard: sigma must be > 0");
        if (c.count < 1)
            throw std::invalid_argument("gen_gaussian_shard: component count must be >= 1");
        total += c.count;
    }
    Rng rng(spec.rng_seed);
    Matrix out(total, d);
    std::size_t row = 0;
    for (const auto& c : spec.components) {
        for (std::size_t i = 0; i < c.count; ++i, ++row) {
            for (std::size_t j = 0; j < d; ++j)
                out(row, j) = c.mean[j] + c.sigma * rng.normal();
        }
    }
    return out;
}

namespace {

MixtureComponent comp(std::vector<double> mean, double sigma, std::size_t count) {
    return MixtureComponent{std::move(mean), sigma, count};
}

Matrix means_matrix(const std::vector<std::vector<double>>& mus) {
    return Matrix::from_rows(mus);
}

} // namespace

FederatedDataset build_case1(Case1Variant variant, std::uint64_t rng_seed) {
    const std::vector<std::vector<double>> mus{{-2, -2}, {0, 0}, {2, 2}};
    const double sigma = 0.5;
    FederatedDataset out;
    for (int l = 0; l < 3; ++l) {
        MixtureSpec spec;
        spec.rng_seed = mix_seed(rng_seed, static_cast<std::uint64_t>(l));
        if (variant == Case1Variant::Unequal && l == 2) {
            spec.components = {comp(mus[0], sigma, 500), comp(mus[1], sigma, 500)};
        } else {
            spec.components = {comp(mus[0], sigma, 333), comp(mus[1], sigma, 333),
                               comp(mus[2], sigma, 333)};
        }
        out.clients.push_back({l, gen_gaussian_shard(spec)});
    }
    out.ground_truth_centers = means_matrix(mus);
    return out;
}

FederatedDataset build_case2(std::uint64_t rng_seed) {
    const std::vector<std::vector<double>> mus{{5, 0}, {5, 10}, {10, 10}};
    const double sigma = 1.1;
    FederatedDataset out;
    const std::size_t counts[2][3] = {{900, 50, 50}, {50, 900, 50}};
    for (int l = 0; l < 2; ++l) {
        MixtureSpec spec;
        spec.rng_seed = mix_seed(rng_seed, static_cast<std::uint64_t>(l));
        for (int j = 0; j < 3; ++j) spec.components.push_back(comp(mus[j], sigma, counts[l][j]));
        out.clients.push_back({l, gen_gaussian_shard(spec)});
    }
    out.ground_truth_centers = means_matrix(mus);
    return out;
}

FederatedDataset build_case3(const std::array<std::size_t, 3>& points_per_client,
                             std::uint64_t rng_seed) {
    const std::vector<std::vector<double>> mus{{0, 0}, {0, 10}, {10, 10}, {10, 0}};
    const double sigma = 1.0;
    FederatedDataset out;
    for (int l = 0; l < 3; ++l) {
        const std::size_t n = points_per_client[l];
        if (n == 0 || n % 2 != 0)
            throw std::invalid_argument(
                "build_case3: points per client must be even and positive (two equal local clusters)");
        MixtureSpec spec;
        spec.rng_seed = mix_seed(rng_seed, static_cast<std::uint64_t>(l));
        spec.components = {comp(mus[l], sigma, n / 2), comp(mus[l + 1], sigma, n / 2)};
        out.clients.push_back({l, gen_gaussian_shard(spec)});
    }
    out.ground_truth_centers = means_matrix(mus);
    return out;
}

std::pair<Matrix, Matrix> gen_g2(std::size_t dim, double sigma, std::uint64_t rng_seed) {
    bool in_family = dim >= 2 && dim <= 1024 && (dim & (dim - 1)) == 0;
    const double ratio = sigma / 10.0;
    in_family = in_family && sigma >= 10.0 && sigma <= 100.0 && ratio == std::floor(ratio);
    if (!in_family)
        std::cerr << "warning: gen_g2 parameters (d=" << dim << ", sigma=" << sigma
                  << ") are outside the published G2 family\n";
    MixtureSpec spec;
    spec.rng_seed = rng_seed;
    spec.components = {comp(std::vector<double>(dim, 500.0), sigma, 1024),
                       comp(std::vector<double>(dim, 600.0), sigma, 1024)};
    Matrix truth(2, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        truth(0, j) = 500.0;
        truth(1, j) = 600.0;
    }
    return {gen_gaussian_shard(spec), std::move(truth)};
}

std::vector<Matrix> partition_uniform(const Matrix& data, std::size_t n_clients,
                                      std::uint64_t rng_seed) {
    const std::size_t n = data.rows();
    if (n_clients == 0 || n < n_clients)
        throw std::invalid_argument("partition_uniform: fewer points than clients");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Rng rng(rng_seed);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
    std::vector<Matrix> shards;
    shards.reserve(n_clients);
    const std::size_t base = n / n_clients, extra = n % n_clients;
    std::size_t pos = 0;
    for (std::size_t c = 0; c < n_clients; ++c) {
        const std::size_t size = base + (c < extra ? 1 : 0);
        Matrix shard(size, data.cols());
        for (std::size_t i = 0; i < size; ++i, ++pos)
            for (std::size_t j = 0; j < data.cols(); ++j) shard(i, j) = data(perm[pos], j);
        shards.push_back(std::move(shard));
    }
    return shards;
}

Matrix load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_dataset: cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<double> row;
        const char* p = line.c_str();
        while (*p) {
            while (*p && std::isspace(static_cast<unsigned char>(*p))) ++p;
            if (!*p) break;
            char* end = nullptr;
            const double v = std::strtod(p, &end);
            if (end == p || (*end && !std::isspace(static_cast<unsigned char>(*end))))
                throw std::runtime_error("load_dataset: " + path.string() + ":" +
                                         std::to_string(line_no) + ": non-numeric token");
            row.push_back(v);
            p = end;
        }
        if (row.empty()) continue; // blank line
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("load_dataset: " + path.string() + ":" +
                                     std::to_string(line_no) + ": expected " +
                                     std::to_string(rows.front().size()) + " columns, got " +
                                     std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw std::runtime_error("load_dataset: " + path.string() + ": empty file");
    return Matrix::from_rows(rows);
}

void save_dataset(const Matrix& data, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("save_dataset: cannot open " + path.string());
    char buf[40];
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t j = 0; j < data.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", data(i, j));
            out << buf << (j + 1 < data.cols() ? " " : "");
        }
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("save_dataset: write failed for " + path.string());
}

} // namespace ffcm
