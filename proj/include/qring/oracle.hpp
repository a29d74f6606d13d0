#pragma once

#include "qring/types.hpp"

namespace qring {

/// The eight plane-wave amplitudes of a ring scattering solution.
struct AmplitudeVector {
    Complex phi1{}, psi1{}, phi2{}, psi2{}, phi3{}, psi3{}, phi4{}, psi4{};
    double condition_estimate = 0.0;
    bool near_singular = false;

    /// k(|phi1|^2 - |psi1|^2) - k(|phi4|^2 - |psi4|^2), scaled by k.
    double current_defect(double k) const {
        return std::abs(k * ((std::norm(phi1) - std::norm(psi1)) -
                             (std::norm(phi4) - std::norm(psi4))));
    }
};

enum class Incoming { from_x1, from_x4 };

/// Direct 6x6 solve of the junction-matching equations for the full ring,
/// bypassing every closed form: three rows of
/// (U - I)Psi + i L0 (U + I)Psi' = 0 at node I and the flux-conjugated rows
/// at node II. Fixes (phi1, psi4) = (1, 0) or (0, 1).
AmplitudeVector solve_ring_direct(const RingSystem& ring, double k, const FluxPhase& f,
                                  Incoming incoming);

/// Direct 3x3 solve of one node's junction condition for a unit incoming
/// amplitude on slot `incoming_slot` (0..2, node axis ordering); returns the
/// three outgoing amplitudes, i.e. one column of the node S-matrix.
Vector3c solve_junction_direct(const NodeParams& p, double k, NodeKind kind,
                               int incoming_slot);

/// Scaling-and-squaring series exponential, truncation error below tol.
Matrix3c expm_series(const Matrix3c& a, double tol = 1e-14);

}  // namespace qring
