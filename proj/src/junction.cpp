#include "qring/junction.hpp"

#include "qring/gellmann.hpp"

namespace qring {

Complex channel_reflection(double k, double theta, double L0, NodeKind kind) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::domain_error("channel_reflection: k must be positive");
    if (!(L0 > 0.0) || !std::isfinite(L0))
        throw std::domain_error("channel_reflection: L0 must be positive");
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex num{s, k * L0 * c};
    const Complex den{-s, k * L0 * c};
    return kind == NodeKind::I ? num / den : den / num;
}

NodeScattering scattering_matrix(const NodeParams& p, double k, NodeKind kind) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::domain_error("scattering_matrix: k must be positive");
    const Matrix3c v = mixing_matrix(p);
    Matrix3c s0 = Matrix3c::Zero();
    for (int i = 0; i < 3; ++i)
        s0(i, i) = channel_reflection(k, p.theta[i], p.L0, kind);
    const double sign = kind == NodeKind::I ? 2.0 : -2.0;
    const Complex phase = std::polar(1.0, sign * k * p.xi);
    return NodeScattering{phase * (v * s0 * v.adjoint()), k, kind};
}

namespace {

int slot_of_axis(NodeKind kind, int axis) {
    if (kind == NodeKind::I) {
        switch (axis) {
            case 2: return 0;
            case 3: return 1;
            case 1: return 2;
        }
        throw std::invalid_argument("component: node I axes are 1, 2, 3");
    }
    switch (axis) {
        case 2: return 0;
        case 3: return 1;
        case 4: return 2;
    }
    throw std::invalid_argument("component: node II axes are 2, 3, 4");
}

}  // namespace

Complex component(const NodeScattering& ns, int to_axis, int from_axis) {
    return ns.matrix(slot_of_axis(ns.kind, to_axis), slot_of_axis(ns.kind, from_axis));
}

std::vector<std::pair<std::string, Complex>> labeled_components(const NodeScattering& ns) {
    const char* prefix = ns.kind == NodeKind::I ? "s" : "t";
    const int axes_I[3] = {2, 3, 1};
    const int axes_II[3] = {2, 3, 4};
    const int* axes = ns.kind == NodeKind::I ? axes_I : axes_II;
    std::vector<std::pair<std::string, Complex>> out;
    out.reserve(9);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out.emplace_back(prefix + std::to_string(axes[r]) + std::to_string(axes[c]),
                             ns.matrix(r, c));
    return out;
}

}  // namespace qring
