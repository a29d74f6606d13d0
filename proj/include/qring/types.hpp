#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qring {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix3c = Eigen::Matrix3cd;
using Vector2c = Eigen::Vector2cd;
using Vector3c = Eigen::Vector3cd;
using Matrix64c = Eigen::Matrix<Complex, 6, 4>;
using Matrix6c = Eigen::Matrix<Complex, 6, 6>;
using Vector6c = Eigen::Matrix<Complex, 6, 1>;

inline constexpr double kUnitaryTol = 1e-12;

/// Raised when the two-port assembly hits a (near-)singular internal loop,
/// i.e. the ring arms decouple at a resonant or extremal configuration.
class singular_assembly_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a scattering amplitude sits on the unit circle and the
/// generic formulas degenerate.
class extremal_case_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when the localized-state coefficients collapse (degenerate state).
class degenerate_state_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration-file / flag parsing failure.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One Y-junction: three eigenphases, six mixing angles, gauge length and
/// node position. Angles are radians and are not range-reduced.
struct NodeParams {
    std::array<double, 3> theta{0.0, 0.0, 0.0};
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double a = 0.0;
    double b = 0.0;
    double L0 = 1.0;   // gauge length, > 0
    double xi = 0.0;   // node position
};

void validate(const NodeParams& p);

/// Dimensionless Aharonov-Bohm phase threading the ring.
struct FluxPhase {
    double theta_B = 0.0;
};

enum class NodeKind { I, II };

/// Two Y-junctions joined by two arms of equal length d = xi_I - xi_II > 0.
struct RingSystem {
    NodeParams node_I;
    NodeParams node_II;

    RingSystem(NodeParams nI, NodeParams nII);

    double d() const { return node_I.xi - node_II.xi; }

    /// True when both junctions carry the same physical parameters:
    /// mixing-matrix columns equal up to per-column phases and the derived
    /// channel lengths L0*cot(theta_i/2) equal (compared in the
    /// cross-multiplied form, finite at theta_i = 0).
    bool symmetric() const;
};

/// Reflection/transmission amplitudes of the whole ring at one wavenumber.
struct RingResponse {
    Complex R{};
    Complex T{};
    double k = 0.0;
    double flux_phase = 0.0;

    double prob_R() const { return std::norm(R); }
    double prob_T() const { return std::norm(T); }
    double unitarity_residual() const {
        return std::abs(prob_R() + prob_T() - 1.0);
    }
};

/// Normalized state confined to the ring arms, phi(x) on [xi_II, xi_I].
struct LocalizedState {
    double k = 0.0;          // n*pi/d
    int n = 0;
    Complex C2{}, D2{}, C3{}, D3{};
    double N = 0.0;          // normalization, > 0
    double xi_I = 0.0;
    double xi_II = 0.0;

    Complex phi2(double x) const {
        return (C2 * std::sin(k * (x - xi_II)) + D2 * std::cos(k * (x - xi_II))) / N;
    }
    Complex phi3(double x) const {
        return (C3 * std::sin(k * (x - xi_II)) + D3 * std::cos(k * (x - xi_II))) / N;
    }
};

inline double max_abs(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
    return m.cwiseAbs().maxCoeff();
}

inline double unitarity_defect(const Matrix3c& m) {
    return max_abs(m * m.adjoint() - Matrix3c::Identity());
}

}  // namespace qring
