#ifndef FFCM_MATCHING_HPP
#define FFCM_MATCHING_HPP

#include <vector>

#include "ffcm/matrix.hpp"

namespace ffcm {

// Minimum-cost perfect matching on a square cost matrix. Returns the
// column assigned to each row. Exhaustive enumeration for n <= 8,
// Hungarian algorithm beyond.
std::vector<int> min_cost_assignment(const Matrix& cost);

namespace detail {
std::vector<int> assignment_exhaustive(const Matrix& cost);
std::vector<int> assignment_hungarian(const Matrix& cost);
}

// Pairwise euclidean distances between two K x d center lists.
Matrix center_distance_matrix(const Matrix& a, const Matrix& b);

// Reorders candidate rows by minimum-cost matching against reference,
// so that row j of the result corresponds to reference row j.
Matrix match_centers(const Matrix& reference, const Matrix& candidate);

} // namespace ffcm

#endif // FFCM_MATCHING_HPP
