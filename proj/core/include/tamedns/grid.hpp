#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace tns {

/// Spectral grid on the periodic box [0,2pi)^3.
///
/// Coefficients are stored in FFT order: slot i along an axis carries the
/// wavenumber i for i < n/2 and i - n otherwise, so k ranges over
/// [-n/2, n/2).  The dealias mask implements the two-thirds rule.
class TorusGrid {
public:
    explicit TorusGrid(int n_modes);

    int n() const { return n_; }
    int size() const { return n_ * n_ * n_; }

    /// Physical volume of the box, used as the quadrature weight in all norms.
    static constexpr double volume = 248.05021344239853;  // (2*pi)^3

    int index(int kx, int ky, int kz) const {
        return (slot(kz) * n_ + slot(ky)) * n_ + slot(kx);
    }
    std::array<int, 3> wavevector(int idx) const {
        return {freq(idx % n_), freq((idx / n_) % n_), freq(idx / (n_ * n_))};
    }
    double k_sq(int idx) const { return ksq_[idx]; }

    bool dealiased(int idx) const { return mask_[idx] != 0; }
    const std::vector<std::uint8_t>& dealias_mask() const { return mask_; }

    bool operator==(const TorusGrid& o) const { return n_ == o.n_; }

private:
    int slot(int k) const { return k >= 0 ? k : k + n_; }
    int freq(int slot) const { return slot < n_ / 2 ? slot : slot - n_; }

    int n_;
    std::vector<std::uint8_t> mask_;
    std::vector<double> ksq_;
};

}  // namespace tns
