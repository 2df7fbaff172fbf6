#include "ffcm/matrix.hpp"

#include <cmath>
#include <string>

namespace ffcm {

void check_finite(const Matrix& m, const char* what) {
    for (double v : m.data()) {
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite value");
    }
}

} // namespace ffcm
