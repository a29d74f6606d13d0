#include "qring/gellmann.hpp"

namespace qring {

namespace {
const Complex kI{0.0, 1.0};
}

void validate(const NodeParams& p) {
    if (!(p.L0 > 0.0) || !std::isfinite(p.L0))
        throw std::invalid_argument("NodeParams: L0 must be positive and finite");
    const double angles[] = {p.theta[0], p.theta[1], p.theta[2], p.alpha,
                             p.beta,     p.gamma,    p.delta,    p.a,
                             p.b,        p.xi};
    for (double v : angles)
        if (!std::isfinite(v))
            throw std::invalid_argument("NodeParams: all angles and xi must be finite");
}

Matrix3c gell_mann(int index) {
    Matrix3c m = Matrix3c::Zero();
    switch (index) {
        case 2:
            m(0, 1) = -kI;
            m(1, 0) = kI;
            break;
        case 3:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        case 5:
            m(0, 2) = -kI;
            m(2, 0) = kI;
            break;
        default:
            throw std::invalid_argument("gell_mann: index must be 2, 3 or 5");
    }
    return m;
}

Matrix3c exp_i_lambda(int index, double angle) {
    if (!std::isfinite(angle))
        throw std::invalid_argument("exp_i_lambda: angle must be finite");
    Matrix3c m = Matrix3c::Identity();
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    switch (index) {
        case 2:
            m(0, 0) = c;
            m(0, 1) = s;
            m(1, 0) = -s;
            m(1, 1) = c;
            break;
        case 3:
            m(0, 0) = std::polar(1.0, angle);
            m(1, 1) = std::polar(1.0, -angle);
            break;
        case 5:
            m(0, 0) = c;
            m(0, 2) = s;
            m(2, 0) = -s;
            m(2, 2) = c;
            break;
        default:
            throw std::invalid_argument("exp_i_lambda: index must be 2, 3 or 5");
    }
    return m;
}

Matrix3c mixing_matrix(const NodeParams& p) {
    validate(p);
    return exp_i_lambda(3, p.alpha) * exp_i_lambda(2, p.beta) *
           exp_i_lambda(3, p.gamma) * exp_i_lambda(5, p.delta) *
           exp_i_lambda(3, p.a) * exp_i_lambda(2, p.b);
}

Matrix3c eigenphase_matrix(const NodeParams& p) {
    validate(p);
    Matrix3c d = Matrix3c::Zero();
    for (int i = 0; i < 3; ++i) d(i, i) = std::polar(1.0, p.theta[i]);
    return d;
}

Matrix3c junction_unitary(const NodeParams& p) {
    const Matrix3c v = mixing_matrix(p);
    return v * eigenphase_matrix(p) * v.adjoint();
}

}  // namespace qring
