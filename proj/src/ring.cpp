#include "qring/ring.hpp"

#include <sstream>

#include "qring/gellmann.hpp"

namespace qring {

RingSystem::RingSystem(NodeParams nI, NodeParams nII)
    : node_I(std::move(nI)), node_II(std::move(nII)) {
    validate(node_I);
    validate(node_II);
    if (!(d() > 0.0))
        throw std::invalid_argument("RingSystem: requires xi_I > xi_II");
}

namespace {

// Phase-canonicalize column j of both matrices against the same reference
// row (the largest entry of a's column), then compare entrywise.
bool columns_match(const Matrix3c& a, const Matrix3c& b, double tol) {
    for (int j = 0; j < 3; ++j) {
        int ref = 0;
        a.col(j).cwiseAbs().maxCoeff(&ref);
        const Complex za = a(ref, j);
        const Complex zb = b(ref, j);
        if (std::abs(zb) < 1e-6) return false;
        const Vector3c ca = a.col(j) * (std::conj(za) / std::abs(za));
        const Vector3c cb = b.col(j) * (std::conj(zb) / std::abs(zb));
        if ((ca - cb).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

}  // namespace

bool RingSystem::symmetric() const {
    const double tol = 1e-12;
    // L_(i) = L0 cot(theta_i/2) equality in cross-multiplied form.
    const double scale = std::max({1.0, node_I.L0, node_II.L0});
    for (int i = 0; i < 3; ++i) {
        const double lhs = node_I.L0 * std::cos(node_I.theta[i] / 2.0) *
                           std::sin(node_II.theta[i] / 2.0);
        const double rhs = node_II.L0 * std::cos(node_II.theta[i] / 2.0) *
                           std::sin(node_I.theta[i] / 2.0);
        if (std::abs(lhs - rhs) > tol * scale) return false;
    }
    return columns_match(mixing_matrix(node_I), mixing_matrix(node_II), tol);
}

NodeBlocks split_blocks(const NodeScattering& ns) {
    NodeBlocks b;
    b.arm = ns.matrix.topLeftCorner<2, 2>();
    b.from_lead = ns.matrix.topRightCorner<2, 1>();
    b.to_lead = ns.matrix.bottomLeftCorner<1, 2>();
    b.lead = ns.matrix(2, 2);
    return b;
}

Matrix2c ring_smatrix(const NodeScattering& sI, const NodeScattering& sII) {
    if (std::abs(sI.k - sII.k) > 1e-12 * std::max(1.0, sI.k))
        throw std::invalid_argument("ring_smatrix: node matrices at different k");
    const NodeBlocks nI = split_blocks(sI);
    const NodeBlocks nII = split_blocks(sII);
    const Matrix2c i2 = Matrix2c::Identity();
    const Matrix2c loop_I = i2 - nII.arm * nI.arm;   // I - s~ s
    const Matrix2c loop_II = i2 - nI.arm * nII.arm;  // I - s s~
    const double det = std::abs(loop_II.determinant());
    if (det < 1e-12) {
        std::ostringstream msg;
        msg << "ring_smatrix: internal loop singular, |det(I - s s~)| = " << det
            << " at k = " << sI.k
            << " (arms decouple: resonant or extremal configuration)";
        throw singular_assembly_error(msg.str());
    }
    Matrix2c sr;
    sr(0, 0) = nI.lead + (nI.to_lead * loop_I.inverse() * nII.arm * nI.from_lead).value();
    sr(0, 1) = (nI.to_lead * loop_I.inverse() * nII.from_lead).value();
    sr(1, 0) = (nII.to_lead * loop_II.inverse() * nI.from_lead).value();
    sr(1, 1) =
        nII.lead + (nII.to_lead * loop_II.inverse() * nI.arm * nII.from_lead).value();
    return sr;
}

RingResponse symmetric_ring_response(Complex s11, double k, double d) {
    if (!(d > 0.0)) throw std::invalid_argument("symmetric_ring_response: d must be positive");
    const double mag = std::abs(s11);
    if (mag >= 1.0 - 1e-12) {
        std::ostringstream msg;
        msg << "symmetric_ring_response: extremal case |s11| = " << mag;
        throw extremal_case_error(msg.str());
    }
    const Complex e2 = std::polar(1.0, 2.0 * k * d);
    const Complex den = 1.0 - e2 * (mag * mag);
    RingResponse out;
    out.R = s11 * (1.0 - e2) / den;
    out.T = e2 * (1.0 - mag * mag) / den;
    out.k = k;
    out.flux_phase = 0.0;
    return out;
}

RingResponse ring_response(const RingSystem& ring, double k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::domain_error("ring_response: k must be positive");
    if (ring.symmetric()) {
        const NodeScattering sI = scattering_matrix(ring.node_I, k, NodeKind::I);
        return symmetric_ring_response(sI.matrix(2, 2), k, ring.d());
    }
    const NodeScattering sI = scattering_matrix(ring.node_I, k, NodeKind::I);
    const NodeScattering sII = scattering_matrix(ring.node_II, k, NodeKind::II);
    const Matrix2c sr = ring_smatrix(sI, sII);
    RingResponse out;
    out.R = sr(0, 0);
    out.T = sr(1, 0);
    out.k = k;
    out.flux_phase = 0.0;
    return out;
}

}  // namespace qring
