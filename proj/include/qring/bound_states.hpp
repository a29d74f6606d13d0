#pragma once

#include <vector>

#include "qring/types.hpp"

namespace qring {

/// 6x4 matching matrix for states vanishing on both leads, acting on the
/// arm amplitudes (phi2, psi2, phi3, psi3). Rows 1-3 carry node I and
/// e^{2ik xi_I}, rows 4-6 node II and e^{2ik xi_II}. Each row is scaled by
/// sin(theta_i/2) so Neumann channels (theta_i = 0) stay finite; the scaling
/// leaves rank and null space unchanged.
struct MatchingMatrix {
    Matrix64c entries;
    double k = 0.0;
};

MatchingMatrix matching_matrix(const RingSystem& ring, double k);

/// Count of singular values above rel_tol * sigma_max; the zero matrix has
/// rank 0. rel_tol must lie in (0,1).
int numerical_rank(const MatchingMatrix& m, double rel_tol = 1e-10);

/// sigma_min / sigma_max of the matching matrix; 0 for the zero matrix.
double deficiency_ratio(const RingSystem& ring, double k);

struct LocalizedKPoint {
    double k = 0.0;
    int rank = 4;
    double sigma_ratio = 0.0;
};

/// Scan sigma_min/sigma_max on a uniform k-grid, refine every interior local
/// minimum by golden-section to width 1e-12 * (k_max - k_min), and keep the
/// minima whose refined ratio drops below 1e-6, classified by numerical_rank.
std::vector<LocalizedKPoint> find_localized_k(const RingSystem& ring, double k_min,
                                              double k_max, int grid_points);

/// Same scan machinery applied to |R(k)|: wavenumbers of perfect
/// transmission, kept when the refined |R| is below 1e-8.
std::vector<double> find_perfect_transmission_k(const RingSystem& ring, double k_min,
                                                double k_max, int grid_points);

/// Normalized localized state of a symmetric ring at k = n*pi/d.
LocalizedState localized_wavefunction(const RingSystem& ring, int n);

/// Plane-wave amplitudes (phi2, psi2, phi3, psi3) of a localized state,
/// recovered from its sine/cosine coefficients.
Eigen::Vector4cd plane_wave_amplitudes(const LocalizedState& st);

/// Composite Simpson quadrature of |phi2|^2 + |phi3|^2 over the arms with
/// the given number of panels per arm (must be even).
double arm_norm_quadrature(const LocalizedState& st, int panels = 2048);

}  // namespace qring
