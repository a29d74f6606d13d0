#pragma once

#include "qring/junction.hpp"
#include "qring/types.hpp"

namespace qring {

/// Blocks of a node scattering matrix split into the two ring-arm slots and
/// the external-lead slot.
struct NodeBlocks {
    Matrix2c arm;            // (x2,x3) -> (x2,x3)
    Vector2c from_lead;      // lead -> arms
    Eigen::RowVector2cd to_lead;  // arms -> lead
    Complex lead;            // lead -> lead
};

NodeBlocks split_blocks(const NodeScattering& ns);

/// 2x2 ring S-matrix mapping (phi1, psi4) -> (psi1, phi4) from the two node
/// matrices at a common k. Internal loops are inverted directly; throws
/// singular_assembly_error when |det(I2 - s s~)| < 1e-12 (decoupled or
/// resonant-extremal configuration).
Matrix2c ring_smatrix(const NodeScattering& sI, const NodeScattering& sII);

/// Closed-form response of a symmetric ring in terms of the lead reflection
/// amplitude s11:
///   R = s11 (1 - e^{2ikd}) / (1 - e^{2ikd} |s11|^2),
///   T = e^{2ikd} (1 - |s11|^2) / (1 - e^{2ikd} |s11|^2).
/// Regular at resonance e^{2ikd} = 1; throws extremal_case_error when
/// |s11| >= 1 - 1e-12.
RingResponse symmetric_ring_response(Complex s11, double k, double d);

/// Ring response for unit incoming amplitude on the x1 lead. Symmetric rings
/// are evaluated through the closed form (the generic assembly is singular at
/// every resonance e^{2ikd} = 1); asymmetric rings through ring_smatrix.
RingResponse ring_response(const RingSystem& ring, double k);

}  // namespace qring
