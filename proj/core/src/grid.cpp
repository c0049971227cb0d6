#include "tamedns/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace tns {

TorusGrid::TorusGrid(int n_modes) : n_(n_modes) {
    if (n_ < 4 || n_ % 2 != 0)
        throw std::invalid_argument("TorusGrid: n_modes must be even and >= 4");
    mask_.resize(size());
    ksq_.resize(size());
    for (int idx = 0; idx < size(); ++idx) {
        auto k = wavevector(idx);
        ksq_[idx] = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        // two-thirds rule: keep |k_i| < n/3 on every axis
        bool keep = true;
        for (int a = 0; a < 3; ++a)
            if (3 * std::abs(k[a]) >= n_) keep = false;
        mask_[idx] = keep ? 1 : 0;
    }
}

}  // namespace tns
