#include "wpl/extension.hpp"
#include "wpl/fft.hpp"
#include "wpl/threads.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace wpl {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_guard(const FrequencyProfile& f, double x_abs, double t_abs) {
    // spacing form of the guard: h (|x| + 2|t|) <= pi/2; on [-1, 1] this is
    // the familiar M >= 4 (Rx + 2 Rt) / pi
    const double need = nyquist_guard_min_samples(x_abs, t_abs);
    const double have = 2.0 / f.spacing() + 1.0;  // sample count of a [-1, 1] grid at this spacing
    if (have < need)
        throw std::invalid_argument("extension: Nyquist guard violated (need spacing <= " +
                                    std::to_string(3.14159265358979323846 / (2.0 * (x_abs + 2.0 * t_abs))) +
                                    ", have " + std::to_string(f.spacing()) + ")");
}

} // namespace

Complex evaluate_extension(const FrequencyProfile& f, double x, double t) {
    require_guard(f, std::abs(x), std::abs(t));
    Complex acc(0.0, 0.0);
    const Eigen::Index m = f.size();
    for (Eigen::Index j = 0; j < m; ++j) {
        const double w = f.omega(j);
        acc += f.weight(j) * f.samples[j] * unit_phase(w * w * t + w * x);
    }
    return acc;
}

void for_each_time_slice(const FrequencyProfile& f, const SpaceTimeGrid& grid,
                         const std::function<void(Eigen::Index, const Eigen::VectorXcd&)>& visit) {
    require_guard(f, grid.x_half, grid.t_half);
    const Eigen::Index m = f.size();
    const Eigen::Index nx = grid.nx;
    const double h = f.spacing();
    const double x0 = -grid.x_half;
    // Ef(x_k, t) = sum_j w_j f_j e^{i w_j^2 t} e^{i (w0 + j h)(x0 + k dx)}
    //            = e^{i w0 x_k} * CZT(alpha = h x0, phi = h dx)
    ChirpZPlan plan(static_cast<std::size_t>(m), static_cast<std::size_t>(nx), h * grid.dx());
    const double alpha = h * x0;
    std::vector<Complex> a(static_cast<std::size_t>(m));
    Eigen::VectorXcd col(nx);
    for (Eigen::Index jt = 0; jt < grid.nt; ++jt) {
        const double t = grid.t(jt);
        for (Eigen::Index j = 0; j < m; ++j) {
            const double w = f.omega(j);
            a[static_cast<std::size_t>(j)] = f.weight(j) * f.samples[j] * unit_phase(w * w * t);
        }
        plan.run(a.data(), alpha, col.data());
        const double w0 = f.omega_min;
        for (Eigen::Index k = 0; k < nx; ++k) col[k] *= unit_phase(w0 * grid.x(k));
        visit(jt, col);
    }
}

SpaceTimeField evaluate_field(const FrequencyProfile& f, const SpaceTimeGrid& grid,
                              Eigen::Index points_cap, unsigned threads) {
    if (grid.nx * grid.nt > points_cap)
        throw std::invalid_argument("evaluate_field: grid exceeds the point cap");
    SpaceTimeField out;
    out.grid = grid;
    out.values.resize(grid.nx, grid.nt);
    if (threads <= 1) {
        for_each_time_slice(f, grid, [&](Eigen::Index jt, const Eigen::VectorXcd& col) {
            out.values.col(jt) = col;
        });
        return out;
    }
    // slices are independent; split the t-range across workers
    require_guard(f, grid.x_half, grid.t_half);
    const Eigen::Index m = f.size();
    const double h = f.spacing();
    ChirpZPlan plan(static_cast<std::size_t>(m), static_cast<std::size_t>(grid.nx), h * grid.dx());
    const double alpha = h * (-grid.x_half);
    parallel_for(static_cast<std::size_t>(grid.nt), [&](std::size_t jt_s) {
        const Eigen::Index jt = static_cast<Eigen::Index>(jt_s);
        const double t = grid.t(jt);
        std::vector<Complex> a(static_cast<std::size_t>(m));
        for (Eigen::Index j = 0; j < m; ++j) {
            const double w = f.omega(j);
            a[static_cast<std::size_t>(j)] = f.weight(j) * f.samples[j] * unit_phase(w * w * t);
        }
        Eigen::VectorXcd col(grid.nx);
        plan.run(a.data(), alpha, col.data());
        for (Eigen::Index k = 0; k < grid.nx; ++k) col[k] *= unit_phase(f.omega_min * grid.x(k));
        out.values.col(jt) = col;
    }, threads);
    return out;
}

// ---------------------------------------------------------------------------
// eta window

namespace {

// C-infinity bump mollifier profile on [0, 1): exp(-1/(1 - u^2)).
double bump(double u) {
    const double s = 1.0 - u * u;
    return s > 1e-12 ? std::exp(-1.0 / s) : 0.0;
}

struct EtaTables {
    // eta-hat radial profile rho(r) on [0.98, 1.0] (1 below, 0 above)
    std::vector<double> rho;
    double rho_lo = 0.98, rho_hi = 1.001, rho_step = 0.0;
    // eta radial profile on [0, s_max]
    std::vector<double> eta;
    double s_max = 44.0, eta_step = 0.0;
};

EtaTables build_eta_tables() {
    EtaTables tb;
    const double plateau = 0.995, moll = 0.005;

    // mollified indicator: rho(r) = int_{B_moll} m(|u|) 1(|r e1 - u| <= plateau) du
    const int ns = 240;
    double mnorm = 0.0;
    for (int i = 0; i < ns; ++i) {
        const double s = (i + 0.5) * moll / ns;
        mnorm += bump(s / moll) * s * (moll / ns);
    }
    mnorm *= 2.0 * kPi;

    const int nr = 260;
    tb.rho_step = (tb.rho_hi - tb.rho_lo) / nr;
    tb.rho.resize(nr + 1);
    for (int k = 0; k <= nr; ++k) {
        const double r = tb.rho_lo + k * tb.rho_step;
        double acc = 0.0;
        for (int i = 0; i < ns; ++i) {
            const double s = (i + 0.5) * moll / ns;
            const double m = bump(s / moll) * s * (moll / ns);
            // fraction of the circle |r e1 - s e(phi)| <= plateau
            const double c = (r * r + s * s - plateau * plateau) / (2.0 * r * s);
            double frac;
            if (c <= -1.0) frac = 1.0;
            else if (c >= 1.0) frac = 0.0;
            else frac = std::acos(c) / kPi;
            acc += m * frac;
        }
        tb.rho[k] = 2.0 * kPi * acc / mnorm;
    }

    // eta(s) = (2 pi)^{-1} int_0^1 rho(r) r J0(s r) dr  (2-D radial inverse transform)
    const int nq = 1600;
    std::vector<double> rq(nq), wq(nq);
    for (int i = 0; i < nq; ++i) {
        rq[i] = (i + 0.5) / nq;
        double r = rq[i];
        double rho_r;
        if (r <= tb.rho_lo) rho_r = 1.0;
        else if (r >= tb.rho_hi) rho_r = 0.0;
        else {
            const double u = (r - tb.rho_lo) / tb.rho_step;
            const int k = std::min<int>(static_cast<int>(u), nr - 1);
            rho_r = tb.rho[k] + (u - k) * (tb.rho[k + 1] - tb.rho[k]);
        }
        wq[i] = rho_r * r / nq;
    }
    const int neta = 22000;
    tb.eta_step = tb.s_max / neta;
    tb.eta.resize(neta + 1);
    for (int k = 0; k <= neta; ++k) {
        const double s = k * tb.eta_step;
        double acc = 0.0;
        for (int i = 0; i < nq; ++i) acc += wq[i] * std::cyl_bessel_j(0.0, s * rq[i]);
        tb.eta[k] = acc / (2.0 * kPi);
    }
    return tb;
}

const EtaTables& eta_tables() {
    static const EtaTables tb = build_eta_tables();
    return tb;
}

} // namespace

double eta_hat_radial(double r) {
    const EtaTables& tb = eta_tables();
    if (r <= tb.rho_lo) return 1.0;
    if (r >= tb.rho_hi) return 0.0;
    const double u = (r - tb.rho_lo) / tb.rho_step;
    const int k = std::min<int>(static_cast<int>(u), static_cast<int>(tb.rho.size()) - 2);
    return tb.rho[k] + (u - k) * (tb.rho[k + 1] - tb.rho[k]);
}

double eta_radial(double s) {
    const EtaTables& tb = eta_tables();
    s = std::abs(s);
    if (s >= tb.s_max) return 0.0;
    const double u = s / tb.eta_step;
    const int k = std::min<int>(static_cast<int>(u), static_cast<int>(tb.eta.size()) - 2);
    return tb.eta[k] + (u - k) * (tb.eta[k + 1] - tb.eta[k]);
}

double EtaWindow::value(double x, double t) const {
    return eta_radial(std::hypot(x / R, t / R));
}

EtaWindow make_eta(double R, const SpaceTimeGrid& grid) {
    if (!(R > 0.0)) throw std::invalid_argument("make_eta: R must be positive");
    if (grid.x_half < 2.0 * R || grid.t_half < 2.0 * R)
        throw std::invalid_argument("make_eta: grid must cover B_{2R}");
    EtaWindow w;
    w.R = R;
    w.field.grid = grid;
    w.field.values.resize(grid.nx, grid.nt);
    w.center_value = eta_radial(0.0);
    double c0 = w.center_value, c4 = 0.0;
    for (Eigen::Index jt = 0; jt < grid.nt; ++jt) {
        const double t = grid.t(jt);
        for (Eigen::Index ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x(ix);
            const double val = eta_radial(std::hypot(x / R, t / R));
            w.field.values(ix, jt) = val;
            const double taxi = (std::abs(x) + std::abs(t)) / R;
            if (x * x + t * t <= R * R) c0 = std::min(c0, val);
            const double wgt = std::abs(val) * std::pow(1.0 + taxi, 4.0);
            c4 = std::max(c4, wgt);
        }
    }
    w.c0 = c0;
    w.C4 = c4;
    if (!(w.c0 > 0.0)) throw std::runtime_error("make_eta: window not positive on B_R");
    return w;
}

} // namespace wpl
