#include "ffcm/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ffcm {
namespace detail {

std::vector<int> assignment_exhaustive(const Matrix& cost) {
    const std::size_t n = cost.rows();
    std::vector<int> perm(n), best(n);
    std::iota(perm.begin(), perm.end(), 0);
    best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) c += cost(i, perm[i]);
        if (c < best_cost) {
            best_cost = c;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Hungarian algorithm with potentials, O(n^3).
std::vector<int> assignment_hungarian(const Matrix& cost) {
    const int n = static_cast<int>(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> result(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] != 0) result[p[j] - 1] = j - 1;
    return result;
}

} // namespace detail

std::vector<int> min_cost_assignment(const Matrix& cost) {
    if (cost.rows() != cost.cols())
        throw std::invalid_argument("min_cost_assignment: cost matrix must be square");
    if (cost.rows() == 0) return {};
    return cost.rows() <= 8 ? detail::assignment_exhaustive(cost)
                            : detail::assignment_hungarian(cost);
}

Matrix center_distance_matrix(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("center_distance_matrix: dimension mismatch");
    Matrix cost(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j)
            cost(i, j) = std::sqrt(squared_distance(a.row(i), b.row(j), a.cols()));
    return cost;
}

Matrix match_centers(const Matrix& reference, const Matrix& candidate) {
    if (reference.rows() != candidate.rows() || reference.cols() != candidate.cols())
        throw std::invalid_argument("match_centers: shape mismatch");
    const std::vector<int> assign = min_cost_assignment(center_distance_matrix(reference, candidate));
    Matrix out(candidate.rows(), candidate.cols());
    for (std::size_t i = 0; i < candidate.rows(); ++i)
        for (std::size_t j = 0; j < candidate.cols(); ++j)
            out(i, j) = candidate(assign[i], j);
    return out;
}

} // namespace ffcm
