#include "wavedecay/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wavedecay {

double bump(double s)
{
    const double a = std::abs(s);
    if (a >= 1.0)
        return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - a * a));
}

double bump_derivative(double s)
{
    const double a = std::abs(s);
    if (a >= 1.0)
        return 0.0;
    const double q = 1.0 - a * a;
    return bump(s) * (-2.0 * s / (q * q));
}

namespace {

struct DenseScan {
    double min_value, max_value, max_abs_slope;
};

DenseScan scan_profile(const RadialCoefficient& p, double r_hi, int samples = 200001)
{
    DenseScan s{p.value(0.0), p.value(0.0), std::abs(p.slope(0.0))};
    for (int i = 1; i < samples; ++i) {
        const double r = r_hi * i / (samples - 1.0);
        const double v = p.value(r);
        s.min_value = std::min(s.min_value, v);
        s.max_value = std::max(s.max_value, v);
        s.max_abs_slope = std::max(s.max_abs_slope, std::abs(p.slope(r)));
    }
    return s;
}

// smoothstep and its antiderivative
inline double sstep(double t) { return t * t * (3.0 - 2.0 * t); }
inline double sstep_int(double t) { return t * t * t - 0.5 * t * t * t * t; }

// Bridge for the capped power-law profile on [a, b] = [r0/2, r0], expressed
// through the log-derivative ratio m(r) = r K'(r)/K(r) = gamma0 * p(tau),
// tau = ln(r/a)/ln(b/a). p rises from p0 to a plateau pmax and falls to 0,
// with smoothstep ramps of width w; pmax is solved so that K(b) matches the
// far-field constant exactly.
struct RatioBridge {
    double a, b, ga, gamma0, lnba, p0, pmax, w;

    double p(double tau) const
    {
        if (tau <= w)
            return p0 + (pmax - p0) * sstep(tau / w);
        if (tau >= 1.0 - w)
            return pmax * (1.0 - sstep((tau - (1.0 - w)) / w));
        return pmax;
    }
    double P(double tau) const
    {
        if (tau <= w)
            return p0 * tau + (pmax - p0) * w * sstep_int(tau / w);
        const double Pw = 0.5 * w * (p0 + pmax);
        if (tau <= 1.0 - w)
            return Pw + pmax * (tau - w);
        const double s = tau - (1.0 - w);
        return Pw + pmax * (1.0 - 2.0 * w) + pmax * (s - w * sstep_int(s / w));
    }
    double value(double r) const
    {
        const double tau = std::log(r / a) / lnba;
        return ga * std::exp(gamma0 * lnba * P(tau));
    }
    double slope(double r) const
    {
        const double tau = std::log(r / a) / lnba;
        return value(r) * gamma0 * p(tau) / r;
    }
};

} // namespace

RadialCoefficient constant_profile(double k0)
{
    if (!(k0 > 0.0))
        throw std::invalid_argument("coefficient: constant value must be positive");
    RadialCoefficient p;
    p.family = "constant";
    p.value = [k0](double) { return k0; };
    p.slope = [](double) { return 0.0; };
    p.k_m = k0;
    p.k0 = k0;
    p.k1 = std::sqrt(k0);
    p.r0 = 1.0;
    p.lip_grad_sup = 0.0;
    p.gamma0 = 0.0;
    p.eta0 = 0.0;
    return p;
}

RadialCoefficient power_growth_profile(double gamma0, double r0)
{
    if (!(gamma0 >= 0.0 && gamma0 < 1.0))
        throw std::invalid_argument("coefficient: growth exponent must lie in [0, 1)");
    if (!(r0 > 0.0))
        throw std::invalid_argument("coefficient: far-field radius must be positive");

    RadialCoefficient p;
    p.family = "power-growth";
    p.r0 = r0;
    p.gamma0 = gamma0;
    const double gb = std::pow(1.0 + r0 * r0, 0.5 * gamma0);

    if (gamma0 == 0.0) {
        p.value = [](double) { return 1.0; };
        p.slope = [](double) { return 0.0; };
        p.k_m = p.k0 = p.k1 = 1.0;
        p.lip_grad_sup = 0.0;
        return p;
    }

    const double a = 0.5 * r0, b = r0;
    const double ga = std::pow(1.0 + a * a, 0.5 * gamma0);
    const double dga = gamma0 * a * std::pow(1.0 + a * a, 0.5 * gamma0 - 1.0);

    auto inner_value = [gamma0](double r) { return std::pow(1.0 + r * r, 0.5 * gamma0); };
    auto inner_slope = [gamma0](double r) { return gamma0 * r * std::pow(1.0 + r * r, 0.5 * gamma0 - 1.0); };

    // plain monotone cubic Hermite value bridge
    const double h = b - a;
    auto herm_value = [=](double r) {
        const double t = (r - a) / h;
        return (2 * t * t * t - 3 * t * t + 1) * ga + (t * t * t - 2 * t * t + t) * h * dga +
               (-2 * t * t * t + 3 * t * t) * gb;
    };
    auto herm_slope = [=](double r) {
        const double t = (r - a) / h;
        return ((6 * t * t - 6 * t) * ga + (3 * t * t - 4 * t + 1) * h * dga + (-6 * t * t + 6 * t) * gb) / h;
    };

    // gate: the bridge must keep r K'(r) <= gamma0 K(r) on a dense radial scan
    auto gate_ok = [&](auto&& val, auto&& slo, double& worst_r, double& worst_excess) {
        worst_excess = -1.0;
        const int n = 40001;
        for (int i = 1; i < n - 1; ++i) {
            const double r = a + (b - a) * i / (n - 1.0);
            const double excess = r * slo(r) - gamma0 * val(r);
            if (excess > worst_excess) {
                worst_excess = excess;
                worst_r = r;
            }
        }
        return worst_excess <= 1e-12;
    };

    double worst_r = 0.0, worst_excess = 0.0;
    std::function<double(double)> bridge_value, bridge_slope;
    if (gate_ok(herm_value, herm_slope, worst_r, worst_excess)) {
        bridge_value = herm_value;
        bridge_slope = herm_slope;
    } else {
        // the Hermite bridge overshoots the ratio bound for wide plateaus;
        // switch to the ratio-space bridge with a capped plateau
        RatioBridge rb;
        rb.a = a;
        rb.b = b;
        rb.ga = ga;
        rb.gamma0 = gamma0;
        rb.lnba = std::log(b / a);
        rb.p0 = a * a / (1.0 + a * a);
        const double target = std::log((1.0 + b * b) / (1.0 + a * a)) / (2.0 * rb.lnba);
        bool found = false;
        for (double w = 0.35; w >= 0.0199; w -= 0.005) {
            const double pmax = (target - 0.5 * w * rb.p0) / (1.0 - w);
            if (pmax >= 0.0 && pmax <= 0.96) {
                rb.w = w;
                rb.pmax = pmax;
                found = true;
                break;
            }
        }
        if (!found || !gate_ok([&](double r) { return rb.value(r); }, [&](double r) { return rb.slope(r); },
                               worst_r, worst_excess)) {
            std::ostringstream os;
            os << "coefficient: bridge violates the ratio bound at r = " << worst_r
               << " (excess " << worst_excess << ")";
            throw std::runtime_error(os.str());
        }
        bridge_value = [rb](double r) { return rb.value(r); };
        bridge_slope = [rb](double r) { return rb.slope(r); };
    }

    p.value = [=](double r) {
        if (r <= a)
            return inner_value(r);
        if (r >= b)
            return gb;
        return bridge_value(r);
    };
    p.slope = [=](double r) {
        if (r <= a)
            return inner_slope(r);
        if (r >= b)
            return 0.0;
        return bridge_slope(r);
    };
    p.k_m = 1.0;
    p.k0 = gb;
    p.k1 = std::sqrt(gb);
    p.lip_grad_sup = scan_profile(p, r0).max_abs_slope;
    return p;
}

RadialCoefficient radial_decreasing_profile(double k_peak, double k0, double r0)
{
    if (!(k0 > 0.0))
        throw std::invalid_argument("coefficient: far-field value must be positive");
    if (k_peak < k0)
        throw std::invalid_argument("coefficient: peak below far-field value would break radial monotonicity");
    if (!(r0 > 0.0))
        throw std::invalid_argument("coefficient: far-field radius must be positive");
    RadialCoefficient p;
    p.family = "radial-decreasing";
    p.r0 = r0;
    p.value = [=](double r) { return r >= r0 ? k0 : k0 + (k_peak - k0) * bump(r / r0); };
    p.slope = [=](double r) { return r >= r0 ? 0.0 : (k_peak - k0) * bump_derivative(r / r0) / r0; };
    p.k_m = k0;
    p.k0 = k0;
    p.k1 = std::sqrt(k_peak);
    p.lip_grad_sup = scan_profile(p, r0).max_abs_slope;
    p.gamma0 = 0.0;
    return p;
}

RadialCoefficient ripple_profile(double k0, double amplitude, double r0)
{
    if (!(k0 > 0.0))
        throw std::invalid_argument("coefficient: base value must be positive");
    if (!(r0 > 0.0))
        throw std::invalid_argument("coefficient: far-field radius must be positive");
    RadialCoefficient p;
    p.family = "ripple";
    p.r0 = r0;
    p.value = [=](double r) { return r >= r0 ? k0 : k0 + amplitude * bump(r / r0) * std::cos(2.0 * r); };
    p.slope = [=](double r) {
        if (r >= r0)
            return 0.0;
        return amplitude * (bump_derivative(r / r0) / r0 * std::cos(2.0 * r) - 2.0 * bump(r / r0) * std::sin(2.0 * r));
    };
    const DenseScan s = scan_profile(p, r0);
    if (!(std::min(s.min_value, k0) > 0.0)) {
        std::ostringstream os;
        os << "coefficient: ripple amplitude drives the modulus nonpositive (min " << s.min_value << ")";
        throw std::invalid_argument(os.str());
    }
    p.k_m = std::min(s.min_value, k0);
    p.k0 = k0;
    p.k1 = std::sqrt(std::max(s.max_value, k0));
    p.lip_grad_sup = s.max_abs_slope;
    const double eta0 = r0 * p.lip_grad_sup / p.k_m;
    if (eta0 >= 1.0) {
        std::ostringstream os;
        os << "coefficient: contraction parameter " << eta0 << " >= 1";
        throw std::invalid_argument(os.str());
    }
    p.eta0 = eta0;
    return p;
}

RadialCoefficient profile_by_family(const std::string& family, double k0, double gamma0,
                                    double k_peak, double amplitude, double r0)
{
    if (family == "constant")
        return constant_profile(k0);
    if (family == "power-growth")
        return power_growth_profile(gamma0, r0);
    if (family == "radial-decreasing")
        return radial_decreasing_profile(k_peak, k0, r0);
    if (family == "ripple")
        return ripple_profile(k0, amplitude, r0);
    throw std::invalid_argument("coefficient: unknown family '" + family + "'");
}

CoefficientField sample_on_grid(const RadialCoefficient& profile, const Grid2D& grid)
{
    CoefficientField K;
    K.profile = profile;
    K.samples = make_field(grid);
    double grid_min = profile.k0, grid_max = profile.k0;
    for (int ix = 0; ix < grid.n; ++ix) {
        const double x1 = grid.coord(ix);
        for (int iy = 0; iy < grid.n; ++iy) {
            const double r = std::hypot(x1, grid.coord(iy));
            // node-exact far-field constant
            const double v = (r >= profile.r0) ? profile.k0 : profile.value(r);
            K.samples.v[grid.index(ix, iy)] = v;
            grid_min = std::min(grid_min, v);
            grid_max = std::max(grid_max, v);
        }
    }
    // dense radial scans can straddle the true extremes; reconcile with the
    // sampled field so the advertised constants bound every node
    K.profile.k_m = std::min(K.profile.k_m, grid_min);
    K.profile.k1 = std::max(K.profile.k1, std::sqrt(grid_max));
    if (K.profile.eta0)
        K.profile.eta0 = K.profile.r0 * K.profile.lip_grad_sup / K.profile.k_m;
    return K;
}

CoefficientField make_constant(double k0, const Grid2D& grid)
{
    return sample_on_grid(constant_profile(k0), grid);
}

CoefficientField make_power_growth(double gamma0, double r0, const Grid2D& grid)
{
    if (r0 < 4.0 * grid.dx)
        throw std::invalid_argument("coefficient: far-field radius must be at least 4 grid spacings");
    CoefficientField K = sample_on_grid(power_growth_profile(gamma0, r0), grid);
    const ConditionReport rep = validate_conditions(K);
    if (!rep.ratio_bound.pass) {
        std::ostringstream os;
        os << "coefficient: sampled field violates the ratio bound (worst node excess "
           << rep.ratio_bound.worst << ", measured ratio " << rep.measured_gamma0 << ")";
        throw std::runtime_error(os.str());
    }
    return K;
}

CoefficientField make_radial_decreasing(double k_peak, double k0, double r0, const Grid2D& grid)
{
    return sample_on_grid(radial_decreasing_profile(k_peak, k0, r0), grid);
}

CoefficientField make_ripple(double k0, double amplitude, double r0, const Grid2D& grid)
{
    return sample_on_grid(ripple_profile(k0, amplitude, r0), grid);
}

ConditionReport validate_conditions(const CoefficientField& K)
{
    const Grid2D& g = K.samples.grid;
    const RadialCoefficient& p = K.profile;
    const Gradient grad = gradient(K.samples);

    ConditionReport rep;
    double min_sample = K.samples.v[0];
    double max_xdot = -1e300;
    double max_ratio = -1e300;
    double max_lip = 0.0;
    double worst_farfield = 0.0;
    for (int ix = 0; ix < g.n; ++ix) {
        const double x1 = g.coord(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const long c = g.index(ix, iy);
            const double x2 = g.coord(iy);
            const double v = K.samples.v[c];
            min_sample = std::min(min_sample, v);
            const double g1 = grad.d1.v[c], g2 = grad.d2.v[c];
            const double xdot = x1 * g1 + x2 * g2;
            max_xdot = std::max(max_xdot, xdot);
            max_ratio = std::max(max_ratio, xdot / v);
            max_lip = std::max(max_lip, std::hypot(g1, g2));
            if (std::hypot(x1, x2) > p.r0)
                worst_farfield = std::max(worst_farfield, std::abs(v - p.k0));
        }
    }

    rep.measured_gamma0 = max_ratio;
    rep.measured_lip = max_lip;

    rep.ellipticity.worst = p.k_m - min_sample;
    rep.ellipticity.pass = rep.ellipticity.worst <= 0.0;

    rep.radial_monotone.worst = max_xdot;
    rep.radial_monotone.pass = max_xdot <= 1e-8;

    rep.farfield_constant.worst = worst_farfield;
    rep.farfield_constant.pass = worst_farfield == 0.0;

    if (p.gamma0) {
        rep.ratio_bound.worst = max_ratio - *p.gamma0;
        rep.ratio_bound.pass = max_ratio <= *p.gamma0 + 1e-8;
    } else {
        rep.ratio_bound.worst = max_ratio - 1.0;
        rep.ratio_bound.pass = max_ratio < 1.0;
    }

    rep.gradient_bound.worst = max_lip - p.lip_grad_sup;
    rep.gradient_bound.pass = max_lip <= p.lip_grad_sup + 1e-6;

    return rep;
}

} // namespace wavedecay
