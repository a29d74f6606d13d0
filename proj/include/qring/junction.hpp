#pragma once

#include <utility>
#include <vector>

#include "qring/types.hpp"

namespace qring {

/// Scattering matrix of one Y-junction at wavenumber k.
/// Axis ordering of rows/cols: (x2, x3, x1) for node I, (x2, x3, x4) for
/// node II; the third slot is the external lead.
struct NodeScattering {
    Matrix3c matrix;
    double k = 0.0;
    NodeKind kind = NodeKind::I;
};

/// Per-channel reflection coefficient in the junction eigenbasis.
/// Node I:  (i k L0 cos(t/2) + sin(t/2)) / (i k L0 cos(t/2) - sin(t/2)),
/// node II: its reciprocal. The half-angle substitution keeps theta = 0
/// (Neumann channel) finite; the result has unit modulus.
Complex channel_reflection(double k, double theta, double L0, NodeKind kind);

/// S_I = e^{+2ik xi} V S0_I V^dagger,  S_II = e^{-2ik xi} V S0_II V^dagger.
NodeScattering scattering_matrix(const NodeParams& p, double k, NodeKind kind);

/// Entry s_{to,from} by physical axis labels (node I: 1,2,3; node II: 2,3,4).
Complex component(const NodeScattering& ns, int to_axis, int from_axis);

/// All nine entries with their physical labels, row-major over (to, from).
std::vector<std::pair<std::string, Complex>> labeled_components(const NodeScattering& ns);

}  // namespace qring
