#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tamedns/grid.hpp"

namespace tns {

using cplx = std::complex<double>;

/// Vector field on T^3 held as Fourier coefficients, three components per
/// wavevector.  Fields produced by the operators in this library are
/// divergence-free and Hermitian-symmetric (real in physical space).
class SpectralField {
public:
    explicit SpectralField(const TorusGrid& grid)
        : grid_(&grid), c_(3 * grid.size()) {}

    const TorusGrid& grid() const { return *grid_; }
    int size() const { return grid_->size(); }

    cplx& at(int axis, int idx) { return c_[axis * grid_->size() + idx]; }
    const cplx& at(int axis, int idx) const { return c_[axis * grid_->size() + idx]; }

    std::vector<cplx>& data() { return c_; }
    const std::vector<cplx>& data() const { return c_; }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

    bool finite() const;
    /// max_k |k . u_k|, the spectral divergence residual.
    double divergence_linf() const;
    /// Zero out every coefficient outside the two-thirds mask.
    void dealias();
    /// Enforce u_{-k} = conj(u_k); used when assembling fields by hand.
    void hermitize();

private:
    const TorusGrid* grid_;
    std::vector<cplx> c_;
};

/// Samples of a real vector field on the n^3 collocation grid.
struct PhysicalField {
    int n = 0;
    std::vector<double> v[3];  // each n^3, x fastest
};

/// Remove the longitudinal part of every mode: u_k -= k (k.u_k)/|k|^2.
/// The k = 0 (mean) mode is untouched.  Throws on non-finite input.
SpectralField leray_project(const SpectralField& f);

/// sum_k (1+|k|^2)^m |u_k|^2 * volume, m in {0,1,2}.
double sobolev_norm_sq(const SpectralField& f, int m);

/// Re sum_k (1+|k|^2)^m u_k . conj(v_k) * volume, m in {0,1}.
double inner_product(const SpectralField& u, const SpectralField& v, int m);

/// L^4 and sup norms evaluated by collocation-grid quadrature.
double l4_norm(const SpectralField& f);
double linf_norm(const SpectralField& f);
/// || |u| |grad u| ||_{H0}^2, the mixed dissipation density of the energy bounds.
double mixed_grad_norm_sq(const SpectralField& f);

/// Deterministic random divergence-free test field: Gaussian coefficients with
/// an exponentially decaying spectrum, masked, hermitized, projected and
/// normalised to ||u||_{H0} = amplitude.  Mean mode is zero.
SpectralField random_div_free_field(const TorusGrid& grid, std::uint64_t seed,
                                    double amplitude = 1.0, double decay = 0.7);

/// Binary snapshot format: magic, n_modes, convention tag, vol_factor,
/// packed little-endian complex coefficients.
void write_snapshot(std::ostream& os, const SpectralField& f);
SpectralField read_snapshot(std::istream& is, const TorusGrid& grid);

}  // namespace tns
