#pragma once

#include <vector>

#include "tamedns/field.hpp"
#include "tamedns/taming.hpp"
#include "tamedns/transport_noise.hpp"

namespace tns {

/// Stokes operator: coefficient-wise -|k|^2 u_k.
SpectralField stokes(const SpectralField& u);

/// Projected convective term Pi (u.grad) u, pseudo-spectral with two-thirds
/// dealiasing of both input and output.
SpectralField convection(const SpectralField& u);

/// Pi Psi_N(|u|^2) u evaluated pointwise on the collocation grid.
SpectralField taming_term(const SpectralField& u, const TamingProfile& profile);

/// eta1 * stokes(u) - eta2 * (convection(u) + taming_term(u)) + Pi forcing.
SpectralField tamed_drift(const SpectralField& u, const TamingProfile& profile,
                          double eta1, double eta2, const SpectralField& forcing);

/// Hilbert-Schmidt columns Pi (K_j(t,.) . grad) u, one per noise field.
std::vector<SpectralField> transport_noise_apply(const TransportNoiseSpec& spec,
                                                 double t, const SpectralField& u);

}  // namespace tns
