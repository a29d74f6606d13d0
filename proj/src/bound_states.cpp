#include "qring/bound_states.hpp"

#include <algorithm>
#include <functional>

#include <Eigen/SVD>

#include "qring/gellmann.hpp"
#include "qring/ring.hpp"

namespace qring {

namespace {

// sin(t/2) + i k L0 cos(t/2): the sin(t/2)-scaled 1 + i k L_(i).
Complex stabilized_kappa(double k, double theta, double L0) {
    return Complex{std::sin(theta / 2.0), k * L0 * std::cos(theta / 2.0)};
}

void fill_node_rows(Matrix64c& m, int row0, const NodeParams& p, double k) {
    const Matrix3c v = mixing_matrix(p);
    const Complex e2 = std::polar(1.0, 2.0 * k * p.xi);
    for (int i = 0; i < 3; ++i) {
        const Complex kap = stabilized_kappa(k, p.theta[i], p.L0);
        const Complex c2 = std::conj(v(0, i));  // x2 slot
        const Complex c3 = std::conj(v(1, i));  // x3 slot
        m(row0 + i, 0) = c2 * kap * e2;
        m(row0 + i, 1) = c2 * std::conj(kap);
        m(row0 + i, 2) = c3 * kap * e2;
        m(row0 + i, 3) = c3 * std::conj(kap);
    }
}

}  // namespace

MatchingMatrix matching_matrix(const RingSystem& ring, double k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::domain_error("matching_matrix: k must be positive");
    MatchingMatrix m;
    m.k = k;
    fill_node_rows(m.entries, 0, ring.node_I, k);
    fill_node_rows(m.entries, 3, ring.node_II, k);
    return m;
}

int numerical_rank(const MatchingMatrix& m, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw std::invalid_argument("numerical_rank: rel_tol must be in (0,1)");
    Eigen::JacobiSVD<Matrix64c> svd(m.entries);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * sv(0)) ++rank;
    return rank;
}

double deficiency_ratio(const RingSystem& ring, double k) {
    Eigen::JacobiSVD<Matrix64c> svd(matching_matrix(ring, k).entries);
    const auto& sv = svd.singularValues();
    return sv(0) == 0.0 ? 0.0 : sv(sv.size() - 1) / sv(0);
}

namespace {

double golden_minimize(const std::function<double(double)>& f, double a, double b,
                       double width) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - g * (b - a);
    double x2 = a + g * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > width) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

// Refine interior grid minima of f, keep refined values below `keep_below`.
std::vector<double> scan_minima(const std::function<double(double)>& f, double k_min,
                                double k_max, int grid_points, double keep_below) {
    if (!(k_min > 0.0) || !(k_max > k_min))
        throw std::invalid_argument("scan: requires 0 < k_min < k_max");
    if (grid_points < 2)
        throw std::invalid_argument("scan: grid_points must be >= 2");
    const double step = (k_max - k_min) / (grid_points - 1);
    std::vector<double> vals(grid_points);
    for (int i = 0; i < grid_points; ++i) vals[i] = f(k_min + i * step);
    const double width = 1e-12 * (k_max - k_min);
    std::vector<double> hits;
    for (int i = 1; i + 1 < grid_points; ++i) {
        if (!(vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1])) continue;
        const double k_star = golden_minimize(f, k_min + (i - 1) * step,
                                              k_min + (i + 1) * step, width);
        if (f(k_star) < keep_below) {
            if (hits.empty() || k_star - hits.back() > 4.0 * width)
                hits.push_back(k_star);
        }
    }
    return hits;
}

}  // namespace

std::vector<LocalizedKPoint> find_localized_k(const RingSystem& ring, double k_min,
                                              double k_max, int grid_points) {
    auto ratio = [&](double k) { return deficiency_ratio(ring, k); };
    std::vector<LocalizedKPoint> out;
    for (double k : scan_minima(ratio, k_min, k_max, grid_points, 1e-6)) {
        LocalizedKPoint pt;
        pt.k = k;
        pt.rank = numerical_rank(matching_matrix(ring, k));
        pt.sigma_ratio = ratio(k);
        out.push_back(pt);
    }
    return out;
}

std::vector<double> find_perfect_transmission_k(const RingSystem& ring, double k_min,
                                                double k_max, int grid_points) {
    auto refl = [&](double k) {
        try {
            return std::abs(ring_response(ring, k).R);
        } catch (const singular_assembly_error&) {
            return 1.0;  // decoupled point: never a perfect-transmission hit
        }
    };
    return scan_minima(refl, k_min, k_max, grid_points, 1e-8);
}

LocalizedState localized_wavefunction(const RingSystem& ring, int n) {
    if (!ring.symmetric())
        throw std::invalid_argument("localized_wavefunction: ring is not symmetric");
    if (n < 1) throw std::invalid_argument("localized_wavefunction: n must be >= 1");
    const double d = ring.d();
    const double k = n * M_PI / d;
    const NodeParams& p = ring.node_I;
    const Matrix3c v = mixing_matrix(p);

    // Coefficient sums with the common rescale prod_j sin(theta_j/2) applied,
    // so Neumann channels contribute finitely:
    //   kL_j * prod sin -> k L0 cos(t_j/2) prod_{r != j} sin(t_r/2)
    //   k^2 L_r L_s * prod sin -> (k L0)^2 cos cos sin(t_j/2)
    std::array<double, 3> sn, cs;
    for (int i = 0; i < 3; ++i) {
        sn[i] = std::sin(p.theta[i] / 2.0);
        cs[i] = std::cos(p.theta[i] / 2.0);
    }
    const double kl = k * p.L0;
    std::array<double, 3> w_lin, w_quad;
    for (int j = 0; j < 3; ++j) {
        const int r = (j + 1) % 3, s = (j + 2) % 3;
        w_lin[j] = kl * cs[j] * sn[r] * sn[s];
        w_quad[j] = kl * kl * cs[r] * cs[s] * sn[j];
    }

    LocalizedState st;
    st.k = k;
    st.n = n;
    st.xi_I = ring.node_I.xi;
    st.xi_II = ring.node_II.xi;
    for (int j = 0; j < 3; ++j) {
        const Complex q2 = std::conj(v(1, j)) * v(2, j);   // arm-2 pairing
        const Complex q3 = -std::conj(v(0, j)) * v(2, j);  // arm-3 pairing
        st.C2 += q2 * w_lin[j];
        st.D2 += q2 * w_quad[j];
        st.C3 += q3 * w_lin[j];
        st.D3 += q3 * w_quad[j];
    }
    const double sumsq = std::norm(st.C2) + std::norm(st.D2) + std::norm(st.C3) +
                         std::norm(st.D3);
    const double scale = std::max(1.0, kl * kl);
    if (std::sqrt(sumsq) < 1e-12 * scale)
        throw degenerate_state_error(
            "localized_wavefunction: vanishing normalization (degenerate state)");
    st.N = std::sqrt(0.5 * d * sumsq);
    return st;
}

Eigen::Vector4cd plane_wave_amplitudes(const LocalizedState& st) {
    const Complex e = std::polar(1.0, st.k * st.xi_II);
    Eigen::Vector4cd amps;
    const Complex i{0.0, 1.0};
    amps(0) = (st.D2 - i * st.C2) / (2.0 * st.N) / e;  // phi2
    amps(1) = (st.D2 + i * st.C2) / (2.0 * st.N) * e;  // psi2
    amps(2) = (st.D3 - i * st.C3) / (2.0 * st.N) / e;  // phi3
    amps(3) = (st.D3 + i * st.C3) / (2.0 * st.N) * e;  // psi3
    return amps;
}

double arm_norm_quadrature(const LocalizedState& st, int panels) {
    if (panels < 2 || panels % 2 != 0)
        throw std::invalid_argument("arm_norm_quadrature: panels must be even and >= 2");
    const double h = (st.xi_I - st.xi_II) / panels;
    auto density = [&](double x) {
        return std::norm(st.phi2(x)) + std::norm(st.phi3(x));
    };
    double acc = density(st.xi_II) + density(st.xi_I);
    for (int i = 1; i < panels; ++i)
        acc += density(st.xi_II + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace qring
