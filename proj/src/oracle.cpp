#include "qring/oracle.hpp"

#include <Eigen/LU>

#include "qring/gellmann.hpp"

namespace qring {

namespace {

Matrix3c gauge_phase_matrix(double theta_B) {
    Matrix3c p = Matrix3c::Identity();
    p(0, 0) = std::polar(1.0, theta_B / 2.0);
    p(1, 1) = std::polar(1.0, -theta_B / 2.0);
    return p;
}

// (U - I) -/+ k L0 (U + I): coefficients of the e^{+ikxi} (incoming-sign)
// and e^{-ikxi} parts after substituting plane waves into the junction
// condition.
void junction_coeffs(const Matrix3c& u, double k, double L0, Matrix3c& coeff_plus,
                     Matrix3c& coeff_minus) {
    const Matrix3c um = u - Matrix3c::Identity();
    const Matrix3c up = u + Matrix3c::Identity();
    coeff_plus = um - k * L0 * up;
    coeff_minus = um + k * L0 * up;
}

}  // namespace

AmplitudeVector solve_ring_direct(const RingSystem& ring, double k, const FluxPhase& f,
                                  Incoming incoming) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::domain_error("solve_ring_direct: k must be positive");
    const Matrix3c uI = junction_unitary(ring.node_I);
    const Matrix3c p = gauge_phase_matrix(f.theta_B);
    const Matrix3c uII = p * junction_unitary(ring.node_II) * p.adjoint();

    Matrix3c aI, bI, aII, bII;
    junction_coeffs(uI, k, ring.node_I.L0, aI, bI);
    junction_coeffs(uII, k, ring.node_II.L0, aII, bII);

    const Complex eI = std::polar(1.0, k * ring.node_I.xi);
    const Complex eII = std::polar(1.0, k * ring.node_II.xi);
    const Complex phi1 = incoming == Incoming::from_x1 ? 1.0 : 0.0;
    const Complex psi4 = incoming == Incoming::from_x1 ? 0.0 : 1.0;

    // Unknowns x = (psi1, phi2, psi2, phi3, psi3, phi4).
    Matrix6c m = Matrix6c::Zero();
    Vector6c rhs = Vector6c::Zero();
    for (int r = 0; r < 3; ++r) {
        // node I slots (x2, x3, x1)
        m(r, 0) = bI(r, 2) / eI;
        m(r, 1) = aI(r, 0) * eI;
        m(r, 2) = bI(r, 0) / eI;
        m(r, 3) = aI(r, 1) * eI;
        m(r, 4) = bI(r, 1) / eI;
        rhs(r) = -aI(r, 2) * eI * phi1;
        // node II slots (x2, x3, x4)
        m(3 + r, 1) = aII(r, 0) * eII;
        m(3 + r, 2) = bII(r, 0) / eII;
        m(3 + r, 3) = aII(r, 1) * eII;
        m(3 + r, 4) = bII(r, 1) / eII;
        m(3 + r, 5) = aII(r, 2) * eII;
        rhs(3 + r) = -bII(r, 2) / eII * psi4;
    }

    Eigen::PartialPivLU<Matrix6c> lu(m);
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs().eval();
    const double pmax = pivots.maxCoeff();
    const double pmin = pivots.minCoeff();
    if (pmin == 0.0)
        throw singular_assembly_error("solve_ring_direct: singular matching system");
    const Vector6c x = lu.solve(rhs);

    AmplitudeVector out;
    out.phi1 = phi1;
    out.psi1 = x(0);
    out.phi2 = x(1);
    out.psi2 = x(2);
    out.phi3 = x(3);
    out.psi3 = x(4);
    out.phi4 = x(5);
    out.psi4 = psi4;
    out.condition_estimate = pmax / pmin;
    out.near_singular = out.condition_estimate > 1e12;
    return out;
}

Vector3c solve_junction_direct(const NodeParams& p, double k, NodeKind kind,
                               int incoming_slot) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::domain_error("solve_junction_direct: k must be positive");
    if (incoming_slot < 0 || incoming_slot > 2)
        throw std::invalid_argument("solve_junction_direct: slot must be 0..2");
    const Matrix3c u = junction_unitary(p);
    Matrix3c a, b;
    junction_coeffs(u, k, p.L0, a, b);
    const Vector3c e_in = Vector3c::Unit(incoming_slot);
    if (kind == NodeKind::I) {
        // a e^{ikxi} phi + b e^{-ikxi} psi = 0  ->  psi = -e^{2ikxi} b^{-1} a phi
        Eigen::PartialPivLU<Matrix3c> lu(b);
        if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() == 0.0)
            throw singular_assembly_error("solve_junction_direct: singular system");
        return -std::polar(1.0, 2.0 * k * p.xi) * lu.solve(a * e_in).eval();
    }
    Eigen::PartialPivLU<Matrix3c> lu(a);
    if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() == 0.0)
        throw singular_assembly_error("solve_junction_direct: singular system");
    return -std::polar(1.0, -2.0 * k * p.xi) * lu.solve(b * e_in).eval();
}

Matrix3c expm_series(const Matrix3c& a, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("expm_series: tol must be positive");
    const double norm = a.cwiseAbs().maxCoeff();
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const Matrix3c as = a * scale;
    Matrix3c term = Matrix3c::Identity();
    Matrix3c sum = Matrix3c::Identity();
    for (int n = 1; n < 64; ++n) {
        term = (term * as) / static_cast<double>(n);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < tol * 0.25) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

}  // namespace qring
