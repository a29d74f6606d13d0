#pragma once

#include "qring/junction.hpp"
#include "qring/types.hpp"

namespace qring {

/// diag(e^{i theta_B/2}, e^{-i theta_B/2}, 1): gauge phases picked up by the
/// arm wavefunctions at node II for the symmetric-arm gauge.
Matrix3c flux_phase_matrix(const FluxPhase& f);

/// Node II scattering with flux: the mixing matrix is premultiplied by the
/// phase matrix (equivalently alpha -> alpha + theta_B/2).
NodeScattering flux_node_scattering(const NodeParams& p, const FluxPhase& f, double k);

/// Ring response of a symmetric ring threaded by flux, via assembly of S_I
/// with the flux-modified node II.
RingResponse flux_ring_response(const RingSystem& ring, double k, const FluxPhase& f);

/// Assembly-path response next to the literal closed forms, in both the
/// quarter-angle flux factor written with theta_B/4 (form A) and the
/// half-angle variant theta_B/2 (form B) for the transmission amplitude.
struct FluxFormulaAudit {
    RingResponse assembly;
    Complex R_closed{};
    Complex T_closed_quarter{};
    Complex T_closed_half{};
    double dev_R = 0.0;
    double dev_T_quarter = 0.0;
    double dev_T_half = 0.0;
};

FluxFormulaAudit flux_closed_form_audit(const RingSystem& ring, double k,
                                        const FluxPhase& f);

/// Literal special-parameter closed forms (the flux-controlled switch
/// junction: theta = (pi, pi, 0), beta = delta = b = pi/4, rest 0).
RingResponse flux_switch_response(double k, double d, double xi_I, const FluxPhase& f);

/// The switch junction parameters at the given position.
NodeParams switch_node_params(double L0, double xi);

}  // namespace qring
