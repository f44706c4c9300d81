#include "wavedecay/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wavedecay {

namespace {

constexpr double kInv2Pi = 0.15915494309189535;  // 1/(2 pi)

struct SourceCells {
    std::vector<double> x1, x2, w;  // node coordinates and u1 values
    double dx = 0.0;
};

SourceCells collect_sources(const ScalarField& u1)
{
    SourceCells s;
    const Grid2D& g = u1.grid;
    s.dx = g.dx;
    for (int ix = 0; ix < g.n; ++ix) {
        const double x1 = g.coord(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double v = u1.v[g.index(ix, iy)];
            if (v != 0.0) {
                s.x1.push_back(x1);
                s.x2.push_back(g.coord(iy));
                s.w.push_back(v);
            }
        }
    }
    return s;
}

struct HGrad {
    double h, g1, g2;
};

// Kernel quadrature at one evaluation point. Cells within 3dx (sup norm) of
// the point are sub-sampled 4x4; the containing cell uses the closed-form
// log integral with a zero principal-value gradient.
HGrad eval_point(const SourceCells& s, double p1, double p2)
{
    const double dx = s.dx;
    const double cell = dx * dx;
    const double half = 0.5 * dx * (1.0 + 1e-12);
    const double near = 3.0 * dx * (1.0 + 1e-12);
    const double self_integral = log_cell_integral(0.5 * dx);
    double h = 0.0, g1 = 0.0, g2 = 0.0;
    const std::size_t m = s.w.size();
    for (std::size_t c = 0; c < m; ++c) {
        const double d1 = p1 - s.x1[c];
        const double d2 = p2 - s.x2[c];
        const double a1 = std::abs(d1), a2 = std::abs(d2);
        const double w = s.w[c];
        if (a1 <= half && a2 <= half) {
            h += w * self_integral;
        } else if (a1 <= near && a2 <= near) {
            for (int i = 0; i < 4; ++i) {
                const double e1 = d1 - (-0.375 + 0.25 * i) * dx;
                for (int j = 0; j < 4; ++j) {
                    const double e2 = d2 - (-0.375 + 0.25 * j) * dx;
                    const double r2 = e1 * e1 + e2 * e2;
                    const double wq = w * cell / 16.0;
                    h += wq * 0.5 * std::log(r2);
                    g1 += wq * e1 / r2;
                    g2 += wq * e2 / r2;
                }
            }
        } else {
            const double r2 = d1 * d1 + d2 * d2;
            const double wq = w * cell;
            h += wq * 0.5 * std::log(r2);
            g1 += wq * d1 / r2;
            g2 += wq * d2 / r2;
        }
    }
    return {-kInv2Pi * h, -kInv2Pi * g1, -kInv2Pi * g2};
}

// 8-point Gauss-Legendre on [-1, 1]
constexpr double kGlx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                            -0.1834346424956498, 0.1834346424956498, 0.5255324099163290,
                            0.7966664774136267, 0.9602898564975363};
constexpr double kGlw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

// integral over one log-radius panel of r^2 * mean-squared gradient
double panel_integral(const SourceCells& s, double lr_a, double lr_b, int n_theta)
{
    double acc = 0.0;
    const double mid = 0.5 * (lr_a + lr_b), hw = 0.5 * (lr_b - lr_a);
    for (int q = 0; q < 8; ++q) {
        const double r = std::exp(mid + hw * kGlx[q]);
        double ring = 0.0;
        for (int k = 0; k < n_theta; ++k) {
            const double th = 2.0 * std::numbers::pi * k / n_theta;
            const HGrad v = eval_point(s, r * std::cos(th), r * std::sin(th));
            ring += v.g1 * v.g1 + v.g2 * v.g2;
        }
        ring *= 2.0 * std::numbers::pi / n_theta;
        acc += kGlw[q] * hw * r * r * ring;
    }
    return acc;
}

double linf_norm_field(const ScalarField& f) { return max_abs(f); }

} // namespace

double PotentialField::grad_norm(std::size_t i) const
{
    return std::hypot(grad[i][0], grad[i][1]);
}

double log_cell_integral(double a)
{
    return 2.0 * a * a * (std::log(2.0 * a * a) + 0.5 * std::numbers::pi - 3.0);
}

PotentialValues evaluate_potential(const ScalarField& u1, std::span<const Point> eval_points)
{
    if (eval_points.empty())
        throw std::invalid_argument("potential: empty evaluation point set");
    const SourceCells s = collect_sources(u1);
    PotentialValues out;
    out.h.resize(eval_points.size());
    out.grad.resize(eval_points.size());
    const long np = static_cast<long>(eval_points.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < np; ++i) {
        const HGrad v = eval_point(s, eval_points[i][0], eval_points[i][1]);
        out.h[i] = v.h;
        out.grad[i] = {v.g1, v.g2};
    }
    return out;
}

PotentialField newtonian_potential(const ScalarField& u1, std::span<const Point> eval_points, double L)
{
    if (eval_points.empty())
        throw std::invalid_argument("potential: empty evaluation point set");
    if (!(L > 0.0))
        throw std::invalid_argument("potential: support radius must be positive");

    const SourceCells s = collect_sources(u1);

    PotentialField pf;
    pf.L = L;
    pf.points.assign(eval_points.begin(), eval_points.end());
    PotentialValues values = evaluate_potential(u1, eval_points);
    pf.h = std::move(values.h);
    pf.grad = std::move(values.grad);

    // gradient energy over the disc of radius 2L on a node-aligned grid
    const double dx = u1.grid.dx;
    const int m = static_cast<int>(std::ceil(2.0 * L / dx)) + 2;
    const Grid2D eg = make_grid(2 * m + 1, dx);
    ScalarField gsq = make_field(eg);
    std::vector<double> row_max(eg.n, 0.0);
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < eg.n; ++ix) {
        const double x1 = eg.coord(ix);
        double mx = 0.0;
        for (int iy = 0; iy < eg.n; ++iy) {
            const double x2 = eg.coord(iy);
            const HGrad v = eval_point(s, x1, x2);
            const double q = v.g1 * v.g1 + v.g2 * v.g2;
            gsq.v[eg.index(ix, iy)] = q;
            if (std::hypot(x1, x2) <= 2.0 * L)
                mx = std::max(mx, q);
        }
        row_max[ix] = mx;
    }
    pf.I_h = integrate(gsq, Region::disc(2.0 * L));
    pf.sup_grad_2L = std::sqrt(*std::max_element(row_max.begin(), row_max.end()));
    return pf;
}

double annulus_grad_sq(const ScalarField& u1, double r_in, double r_out)
{
    if (r_out <= r_in)
        return 0.0;
    if (!(r_in > 0.0))
        throw std::invalid_argument("potential: annulus must start at positive radius");
    const SourceCells s = collect_sources(u1);
    const double la = std::log(r_in), lb = std::log(r_out);
    const int panels = std::max(1, static_cast<int>(std::ceil(8.0 * (lb - la))));
    std::vector<double> part(panels);
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < panels; ++p) {
        const double a = la + (lb - la) * p / panels;
        const double b = la + (lb - la) * (p + 1) / panels;
        part[p] = panel_integral(s, a, b, 64);
    }
    double acc = 0.0;
    for (double v : part)
        acc += v;
    return acc;
}

RadialGradStore::RadialGradStore(const ScalarField& u1, double L, double r_max)
{
    base_ = 2.0 * L;
    const SourceCells s = collect_sources(u1);
    const double la = std::log(base_);
    const double lb = std::log(std::max(r_max, base_ * 1.001));
    const double h = 0.02;
    const int n = static_cast<int>(std::ceil((lb - la) / h)) + 1;
    log_r_.resize(n + 1);
    std::vector<double> G(n + 1);
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j <= n; ++j) {
        const double lr = la + (lb - la) * j / n;
        const double r = std::exp(lr);
        double ring = 0.0;
        for (int k = 0; k < 64; ++k) {
            const double th = 2.0 * std::numbers::pi * k / 64;
            const HGrad v = eval_point(s, r * std::cos(th), r * std::sin(th));
            ring += v.g1 * v.g1 + v.g2 * v.g2;
        }
        ring *= 2.0 * std::numbers::pi / 64;
        G[j] = r * r * ring;  // d/d(log r) of the annulus integral
    }
    for (int j = 0; j <= n; ++j)
        log_r_[j] = la + (lb - la) * j / n;
    F_.resize(n + 1);
    F_[0] = 0.0;
    for (int j = 1; j <= n; ++j)
        F_[j] = F_[j - 1] + 0.5 * (G[j - 1] + G[j]) * (log_r_[j] - log_r_[j - 1]);
}

double RadialGradStore::cumulative(double rho) const
{
    if (rho <= base_ || F_.empty())
        return 0.0;
    const double lr = std::log(rho);
    if (lr >= log_r_.back())
        return F_.back();
    const auto it = std::upper_bound(log_r_.begin(), log_r_.end(), lr);
    const std::size_t j = it - log_r_.begin();
    const double t = (lr - log_r_[j - 1]) / (log_r_[j] - log_r_[j - 1]);
    return F_[j - 1] + t * (F_[j] - F_[j - 1]);
}

std::vector<Point> farfield_sample_points(double L)
{
    std::vector<Point> pts;
    const int nr = 81, nth = 32;
    pts.reserve(static_cast<std::size_t>(nr) * nth);
    for (int i = 0; i < nr; ++i) {
        const double r = 2.0 * L + 8.0 * L * i / (nr - 1.0);
        for (int k = 0; k < nth; ++k) {
            const double th = 2.0 * std::numbers::pi * (k + 0.25) / nth;
            pts.push_back({r * std::cos(th), r * std::sin(th)});
        }
    }
    return pts;
}

AuditEntry certify_farfield_gradient(const PotentialField& pf, const ScalarField& u1, double L)
{
    double lhs = 0.0;
    for (std::size_t i = 0; i < pf.points.size(); ++i) {
        const double r = std::hypot(pf.points[i][0], pf.points[i][1]);
        if (r >= 2.0 * L)
            lhs = std::max(lhs, r * pf.grad_norm(i));
    }
    const double rhs = norm_l1(u1) / std::numbers::pi;
    return AuditEntry::bound("potential-farfield-gradient", "r*|grad h| <= |u1|_1/pi beyond 2L",
                             lhs, rhs, 1e-6);
}

AuditEntry certify_annulus_log_growth(const ScalarField& u1, double I_h, double L, double k1,
                                      std::span<const double> times)
{
    const double n1 = norm_l1(u1);
    double worst_margin = 1e300;
    AuditEntry worst = AuditEntry::bound("potential-annulus-log-growth",
                                         "grad-h energy in B(2L+k1 t) <= I_h + (2/pi)|u1|_1^2 log(2L+k1 t)",
                                         0.0, I_h + (2.0 / std::numbers::pi) * n1 * n1 * std::log(2.0 * L),
                                         0.0, 1e-6);
    for (double t : times) {
        const double rho = 2.0 * L + k1 * t;
        const double lhs = I_h + annulus_grad_sq(u1, 2.0 * L, rho);
        const double rhs = I_h + (2.0 / std::numbers::pi) * n1 * n1 * std::log(rho);
        AuditEntry e = AuditEntry::bound(worst.name, worst.anchor, lhs, rhs, 0.0, 1e-6);
        if (e.margin < worst_margin) {
            worst_margin = e.margin;
            worst = e;
        }
    }
    return worst;
}

AuditEntry certify_gradient_sup(const PotentialField& pf, const ScalarField& u1, double L)
{
    const double ninf = linf_norm_field(u1);
    const AuditEntry grad_entry = AuditEntry::bound("potential-gradient-sup",
                                                    "|grad h| <= 4L|u1|_inf on B(2L); I_h <= 64 pi L^4 |u1|_inf^2",
                                                    pf.sup_grad_2L, 4.0 * L * ninf, 1e-6);
    const AuditEntry energy_entry = AuditEntry::bound(grad_entry.name, grad_entry.anchor, pf.I_h,
                                                      64.0 * std::numbers::pi * std::pow(L, 4) * ninf * ninf,
                                                      1e-6);
    AuditEntry binding = (energy_entry.margin < grad_entry.margin) ? energy_entry : grad_entry;
    binding.pass = grad_entry.pass && energy_entry.pass;
    return binding;
}

} // namespace wavedecay
