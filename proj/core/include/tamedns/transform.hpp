#pragma once

#include <vector>

#include "tamedns/field.hpp"

namespace tns {

/// Synthesis: u(x_j) = sum_k u_k exp(i k.x_j) on the n^3 collocation grid.
/// Requires Hermitian-symmetric input for a real result; the imaginary
/// residue is discarded.
PhysicalField to_physical(const SpectralField& f);

/// Single-component synthesis (axis selects which coefficient slice).
std::vector<double> to_physical_component(const SpectralField& f, int axis);

/// Analysis: u_k = (1/n^3) sum_j u(x_j) exp(-i k.x_j).  Inverse of
/// to_physical up to roundoff.
SpectralField to_spectral(const PhysicalField& p, const TorusGrid& grid);

}  // namespace tns
