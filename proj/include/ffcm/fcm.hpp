#ifndef FFCM_FCM_HPP
#define FFCM_FCM_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ffcm/matrix.hpp"

namespace ffcm {

// Membership update variants. PaperLiteral applies the exponent 2/(m-1)
// to squared-distance ratios; Bezdek is the classical formulation with
// exponent 1/(m-1) on the same ratios. The two coincide only as m -> 1.
enum class MembershipFormula { PaperLiteral, Bezdek };

struct FcmConfig {
    double m = 2.0;          // fuzziness exponent, > 1
    double epsilon = 1e-4;   // Frobenius norm of the membership change
    int max_iter = 300;
    MembershipFormula membership_formula = MembershipFormula::PaperLiteral;
    std::uint64_t rng_seed = 0;
};

struct FcmResult {
    Matrix centers;                         // K x d
    Matrix membership;                      // N x K, rows sum to 1
    std::vector<double> objective_history;  // J_m after each iteration
    int iterations = 0;
};

class DegenerateClusterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Membership matrix for fixed centers. A point coinciding with q >= 1
// centers gets membership 1/q on those centers and 0 elsewhere.
Matrix fcm_membership_update(const Matrix& data, const Matrix& centers, const FcmConfig& config);

// Weighted mean centers, c_j = sum_i u_ij^m x_i / sum_i u_ij^m.
// Throws DegenerateClusterError when a cluster has zero total weight.
Matrix fcm_center_update(const Matrix& data, const Matrix& membership, double m);

// J_m(U, c) = sum_ij u_ij^m ||x_i - c_j||^2
double fcm_objective(const Matrix& data, const Matrix& membership, const Matrix& centers, double m);

// Alternates center and membership updates from a random initial
// membership matrix (rows of normalized uniforms) until the membership
// change drops below epsilon or max_iter is hit.
FcmResult fcm_fit(const Matrix& data, std::size_t k, const FcmConfig& config = {});

// u^m with fast paths for the common exponents.
double membership_pow(double u, double m);

} // namespace ffcm

#endif // FFCM_FCM_HPP
