#include "wavedecay/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace wavedecay {

namespace {

ScalarField half_step_average(const WaveState& s)
{
    ScalarField u = make_field(s.u_curr.grid);
    const long sz = u.grid.size();
    for (long i = 0; i < sz; ++i)
        u.v[i] = 0.5 * (s.u_curr.v[i] + s.u_prev.v[i]);
    return u;
}

// Half of the node's share of the face-form gradient energy: each of the four
// faces carries (1/2) K_face (du/dx)^2, split evenly between its endpoints.
// This is the quadratic form conserved by the flux-form leapfrog scheme;
// values outside the grid are zero and K clamps, matching div_k_grad.
inline double face_gradient_energy(const ScalarField& K, const double* u, int ix, int iy, int n,
                                   double invdx2)
{
    const long c = static_cast<long>(ix) * n + iy;
    const double kc = K.v[c];
    const double uc = u[c];
    double acc = 0.0;
    {
        const double d = (ix > 0) ? u[c - n] - uc : -uc;
        acc += ((ix > 0) ? 0.5 * (kc + K.v[c - n]) : kc) * d * d;
    }
    {
        const double d = (ix < n - 1) ? u[c + n] - uc : -uc;
        acc += ((ix < n - 1) ? 0.5 * (kc + K.v[c + n]) : kc) * d * d;
    }
    {
        const double d = (iy > 0) ? u[c - 1] - uc : -uc;
        acc += ((iy > 0) ? 0.5 * (kc + K.v[c - 1]) : kc) * d * d;
    }
    {
        const double d = (iy < n - 1) ? u[c + 1] - uc : -uc;
        acc += ((iy < n - 1) ? 0.5 * (kc + K.v[c + 1]) : kc) * d * d;
    }
    return 0.25 * acc * invdx2;
}

EnergyDensity density_from(const ScalarField& u, const ScalarField& ut, const CoefficientField& K)
{
    const Grid2D& g = u.grid;
    const int n = g.n;
    const double invdx2 = 1.0 / (g.dx * g.dx);
    EnergyDensity d{make_field(g), 0.0};
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const long c = g.index(ix, iy);
            d.e.v[c] = 0.5 * ut.v[c] * ut.v[c] +
                       face_gradient_energy(K.samples, u.v.data(), ix, iy, n, invdx2);
        }
    d.total = integrate(d.e, Region::full());
    return d;
}

} // namespace

EnergyDensity energy(const WaveState& state, const CoefficientField& K, double dt)
{
    return density_from(half_step_average(state), velocity(state, dt), K);
}

EnergyDensity initial_energy(const InitialData& data, const CoefficientField& K)
{
    return density_from(data.u0, data.u1, K);
}

double local_energy(const EnergyDensity& density, const CoefficientField& K, double R)
{
    if (!(R > K.r0()))
        throw std::invalid_argument("diagnostics: localized-energy radius must exceed r0");
    return integrate(density.e, Region::disc(R));
}

double compute_j0(const InitialData& data)
{
    const Grid2D& g = data.u0.grid;
    const Gradient grad = gradient(data.u0);
    const int n = g.n;
    const double cell = g.dx * g.dx;
    const double sum = reduce_rows(n, [&](int ix) {
        const double x1 = g.coord(ix);
        double s = 0.0;
        for (int iy = 0; iy < n; ++iy) {
            const long c = g.index(ix, iy);
            const double xg = x1 * grad.d1.v[c] + g.coord(iy) * grad.d2.v[c];
            s += data.u1.v[c] * (0.5 * data.u0.v[c] + xg);
        }
        return s;
    });
    return cell * sum;
}

double weighted_initial_mass(const InitialData& data, const CoefficientField& K)
{
    const EnergyDensity e0 = initial_energy(data, K);
    const Grid2D& g = data.u0.grid;
    const int n = g.n;
    const double cell = g.dx * g.dx;
    return cell * reduce_rows(n, [&](int ix) {
        const double x1 = g.coord(ix);
        double s = 0.0;
        for (int iy = 0; iy < n; ++iy)
            s += (1.0 + std::hypot(x1, g.coord(iy))) * e0.e.v[g.index(ix, iy)];
        return s;
    });
}

Sampler::Sampler(const CoefficientField& K, const InitialData& data, double R)
    : K_(K), data_(data)
{
    const Grid2D& g = K.samples.grid;
    if (!(data.u0.grid == g))
        throw std::invalid_argument("diagnostics: data and coefficient grids differ");
    if (!(R > K.r0()))
        throw std::invalid_argument("diagnostics: localized-energy radius must exceed r0");

    const Gradient gk = gradient(K.samples);
    kdot_ = make_field(g);
    for (int ix = 0; ix < g.n; ++ix) {
        const double x1 = g.coord(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const long c = g.index(ix, iy);
            kdot_.v[c] = x1 * gk.d1.v[c] + g.coord(iy) * gk.d2.v[c];
        }
    }
    frac_R_ = region_fractions(g, Region::disc(R));
    frac_r0_ = region_fractions(g, Region::disc(K.r0()));
    v_ = make_field(g);
    u_half_prev_ = data.u0;
    wp_ = WeightParams{K.k0(), K.r0()};

    series_.R = R;
    series_.dx = g.dx;
    series_.L = data.L;
    series_.norm_u0_l2 = data.norm_u0_l2;
    series_.norm_u1_l2 = data.norm_u1_l2;
    series_.norm_u1_l1 = data.norm_u1_l1;
    series_.norm_u1_linf = data.norm_u1_linf;
    series_.moment = data.moment;
    series_.k_m = K.k_m();
    series_.k0 = K.k0();
    series_.k1 = K.k1();
    series_.r0 = K.r0();
    series_.gamma0 = K.profile.gamma0;
    series_.eta0 = K.profile.eta0;
    series_.family = K.profile.family;
    series_.j0 = compute_j0(data);

    // t = 0 pass from the data: ub = u0, ut = u1
    const PassResult p0 = field_pass(data.u0.v.data(), data.u1.v.data(), 1.0, 0.0, 0.0, 1.0, 0.0,
                                     false, 0.0);
    series_.e0 = p0.e_total;
    series_.e_loc0 = p0.e_loc;
    series_.w0 = p0.wmass;
    g_prev_ = p0.kterm;
    e_loc_prev_ = p0.e_loc;
}

Sampler::PassResult Sampler::field_pass(const double* P, const double* Q, double ca, double cb,
                                        double da, double db, double t_rec, bool update_v,
                                        double dt_samp)
{
    const Grid2D& g = K_.samples.grid;
    const int n = g.n;
    const double inv2dx = 1.0 / (2.0 * g.dx);
    const double invdx2 = 1.0 / (g.dx * g.dx);
    const double cell = g.dx * g.dx;
    const double s_front = std::sqrt(wp_.k0) * t_rec;

    struct Row {
        double et, eR, eE, l2, wx, kt, c1, c2, wm, mx;
    };
    std::vector<Row> rows(n);

    const double* Kp = K_.samples.v.data();
    auto ub = [&](long c) { return ca * P[c] + cb * Q[c]; };

#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        const double x1 = g.coord(ix);
        Row r{0, 0, 0, 0, 0, 0, 0, 0, 0, 0};

        // one node with full boundary handling
        auto general_node = [&](int iy) {
            const long c = g.index(ix, iy);
            const double x2 = g.coord(iy);
            const double u = ub(c);
            const double ut = da * P[c] + db * Q[c];

            double g1, g2;
            if (ix == 0)
                g1 = (-3.0 * u + 4.0 * ub(c + n) - ub(c + 2L * n)) * inv2dx;
            else if (ix == n - 1)
                g1 = (3.0 * u - 4.0 * ub(c - n) + ub(c - 2L * n)) * inv2dx;
            else
                g1 = (ub(c + n) - ub(c - n)) * inv2dx;
            if (iy == 0)
                g2 = (-3.0 * u + 4.0 * ub(c + 1) - ub(c + 2)) * inv2dx;
            else if (iy == n - 1)
                g2 = (3.0 * u - 4.0 * ub(c - 1) + ub(c - 2)) * inv2dx;
            else
                g2 = (ub(c + 1) - ub(c - 1)) * inv2dx;
            const double gsq = g1 * g1 + g2 * g2;

            const double kc = Kp[c];
            double pot = 0.0;
            {
                const double d = (ix > 0) ? ub(c - n) - u : -u;
                pot += ((ix > 0) ? 0.5 * (kc + Kp[c - n]) : kc) * d * d;
            }
            {
                const double d = (ix < n - 1) ? ub(c + n) - u : -u;
                pot += ((ix < n - 1) ? 0.5 * (kc + Kp[c + n]) : kc) * d * d;
            }
            {
                const double d = (iy > 0) ? ub(c - 1) - u : -u;
                pot += ((iy > 0) ? 0.5 * (kc + Kp[c - 1]) : kc) * d * d;
            }
            {
                const double d = (iy < n - 1) ? ub(c + 1) - u : -u;
                pot += ((iy < n - 1) ? 0.5 * (kc + Kp[c + 1]) : kc) * d * d;
            }
            const double e = 0.5 * ut * ut + 0.25 * pot * invdx2;
            const double rad = std::sqrt(x1 * x1 + x2 * x2);
            const double psi_v =
                (rad >= s_front) ? (1.0 + rad - s_front) : 1.0 / (1.0 + s_front - rad);

            r.et += e;
            r.eR += e * frac_R_[c];
            r.eE += e * (1.0 - frac_R_[c]);
            r.l2 += u * u;
            r.wx += psi_v * e * (1.0 - frac_r0_[c]);
            r.kt += kdot_.v[c] * gsq;
            r.c1 += ut * u;
            r.c2 += ut * (x1 * g1 + x2 * g2);
            r.wm += (1.0 + rad) * e;
            r.mx = std::max(r.mx, std::abs(u));

            if (update_v) {
                v_.v[c] += 0.5 * dt_samp * (u_half_prev_.v[c] + u);
                u_half_prev_.v[c] = u;
            }
        };

        if (ix == 0 || ix == n - 1) {
            for (int iy = 0; iy < n; ++iy)
                general_node(iy);
        } else {
            general_node(0);
            const long c0 = g.index(ix, 0);
            const double* Pr = P + c0;
            const double* Qr = Q + c0;
            const double* kr = Kp + c0;
            const double x1sq = x1 * x1;
            for (int iy = 1; iy < n - 1; ++iy) {
                const double x2 = g.coord(iy);
                const double u = ca * Pr[iy] + cb * Qr[iy];
                const double ut = da * Pr[iy] + db * Qr[iy];
                const double uW = ca * Pr[iy - n] + cb * Qr[iy - n];
                const double uE = ca * Pr[iy + n] + cb * Qr[iy + n];
                const double uS = ca * Pr[iy - 1] + cb * Qr[iy - 1];
                const double uN = ca * Pr[iy + 1] + cb * Qr[iy + 1];
                const double g1 = (uE - uW) * inv2dx;
                const double g2 = (uN - uS) * inv2dx;
                const double gsq = g1 * g1 + g2 * g2;
                const double kc = kr[iy];
                const double pot = 0.5 * ((kc + kr[iy - n]) * (uW - u) * (uW - u) +
                                          (kc + kr[iy + n]) * (uE - u) * (uE - u) +
                                          (kc + kr[iy - 1]) * (uS - u) * (uS - u) +
                                          (kc + kr[iy + 1]) * (uN - u) * (uN - u));
                const double e = 0.5 * ut * ut + 0.25 * pot * invdx2;
                const double rad = std::sqrt(x1sq + x2 * x2);
                const double psi_v =
                    (rad >= s_front) ? (1.0 + rad - s_front) : 1.0 / (1.0 + s_front - rad);
                const long c = c0 + iy;
                r.et += e;
                r.eR += e * frac_R_[c];
                r.eE += e * (1.0 - frac_R_[c]);
                r.l2 += u * u;
                r.wx += psi_v * e * (1.0 - frac_r0_[c]);
                r.kt += kdot_.v[c] * gsq;
                r.c1 += ut * u;
                r.c2 += ut * (x1 * g1 + x2 * g2);
                r.wm += (1.0 + rad) * e;
                r.mx = std::max(r.mx, std::abs(u));
                if (update_v) {
                    v_.v[c] += 0.5 * dt_samp * (u_half_prev_.v[c] + u);
                    u_half_prev_.v[c] = u;
                }
            }
            general_node(n - 1);
        }
        rows[ix] = r;
    }

    PassResult out;
    for (const Row& r : rows) {
        out.e_total += r.et;
        out.e_loc += r.eR;
        out.e_ext += r.eE;
        out.l2sq += r.l2;
        out.wext += r.wx;
        out.kterm += r.kt;
        out.cross1 += r.c1;
        out.cross2 += r.c2;
        out.wmass += r.wm;
        out.max_abs_u = std::max(out.max_abs_u, r.mx);
    }
    out.e_total *= cell;
    out.e_loc *= cell;
    out.e_ext *= cell;
    out.l2sq *= cell;
    out.wext *= cell;
    out.kterm *= cell;
    out.cross1 *= cell;
    out.cross2 *= cell;
    out.wmass *= cell;
    return out;
}

double Sampler::support_radius(const double* P, const double* Q, double ca, double cb,
                               double threshold) const
{
    const Grid2D& g = K_.samples.grid;
    const int n = g.n;
    std::vector<double> row_rad(n, 0.0);
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        const double x1 = g.coord(ix);
        double rr = 0.0;
        for (int iy = 0; iy < n; ++iy) {
            const long c = g.index(ix, iy);
            if (std::abs(ca * P[c] + cb * Q[c]) > threshold) {
                const double x2 = g.coord(iy);
                rr = std::max(rr, x1 * x1 + x2 * x2);
            }
        }
        rr = std::sqrt(rr);
        row_rad[ix] = rr;
    }
    return *std::max_element(row_rad.begin(), row_rad.end());
}

void Sampler::finish_sample(const PassResult& pass, double t_rec, double dt_samp, const double* P,
                            const double* Q, double ca, double cb)
{
    kint_acc_ += 0.5 * (g_prev_ + pass.kterm) * dt_samp;
    ieloc_acc_ += 0.5 * (e_loc_prev_ + pass.e_loc) * dt_samp;
    g_prev_ = pass.kterm;
    e_loc_prev_ = pass.e_loc;

    // second pass over the antiderivative: K-weighted gradient energy and the
    // velocity source term
    const Grid2D& g = K_.samples.grid;
    const int n = g.n;
    const double cell = g.dx * g.dx;
    std::vector<double> row_vg(n, 0.0), row_sv(n, 0.0);
    const double invdx2 = 1.0 / (g.dx * g.dx);
    const double* Kp = K_.samples.v.data();
    const double* vp = v_.v.data();
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        double vg = 0.0, sv = 0.0;
        auto general_node = [&](int iy) {
            const long c = g.index(ix, iy);
            const double kc = Kp[c];
            const double vc = vp[c];
            double pot = 0.0;
            {
                const double d = (ix > 0) ? vp[c - n] - vc : -vc;
                pot += ((ix > 0) ? 0.5 * (kc + Kp[c - n]) : kc) * d * d;
            }
            {
                const double d = (ix < n - 1) ? vp[c + n] - vc : -vc;
                pot += ((ix < n - 1) ? 0.5 * (kc + Kp[c + n]) : kc) * d * d;
            }
            {
                const double d = (iy > 0) ? vp[c - 1] - vc : -vc;
                pot += ((iy > 0) ? 0.5 * (kc + Kp[c - 1]) : kc) * d * d;
            }
            {
                const double d = (iy < n - 1) ? vp[c + 1] - vc : -vc;
                pot += ((iy < n - 1) ? 0.5 * (kc + Kp[c + 1]) : kc) * d * d;
            }
            vg += 0.5 * pot * invdx2;  // node share of ||sqrt(K) grad v||^2
            sv += data_.u1.v[c] * vc;
        };
        if (ix == 0 || ix == n - 1) {
            for (int iy = 0; iy < n; ++iy)
                general_node(iy);
        } else {
            general_node(0);
            const long c0 = g.index(ix, 0);
            const double* kr = Kp + c0;
            const double* vr = vp + c0;
            const double* u1r = data_.u1.v.data() + c0;
            for (int iy = 1; iy < n - 1; ++iy) {
                const double kc = kr[iy];
                const double vc = vr[iy];
                const double pot = 0.5 * ((kc + kr[iy - n]) * (vr[iy - n] - vc) * (vr[iy - n] - vc) +
                                          (kc + kr[iy + n]) * (vr[iy + n] - vc) * (vr[iy + n] - vc) +
                                          (kc + kr[iy - 1]) * (vr[iy - 1] - vc) * (vr[iy - 1] - vc) +
                                          (kc + kr[iy + 1]) * (vr[iy + 1] - vc) * (vr[iy + 1] - vc));
                vg += 0.5 * pot * invdx2;
                sv += u1r[iy] * vc;
            }
            general_node(n - 1);
        }
        row_vg[ix] = vg;
        row_sv[ix] = sv;
    }
    double vgrad = 0.0, vsrc = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        vgrad += row_vg[ix];
        vsrc += row_sv[ix];
    }
    vgrad *= cell;
    vsrc *= cell;

    SeriesPoint pt;
    pt.t = t_rec;
    pt.E_total = pass.e_total;
    pt.E_loc = pass.e_loc;
    pt.E_ext = pass.e_ext;
    pt.l2_norm = std::sqrt(pass.l2sq);
    pt.weighted_ext = pass.wext;
    pt.support_radius = support_radius(P, Q, ca, cb, 1e-12 * pass.max_abs_u);
    pt.K_integral = 0.5 * kint_acc_;
    pt.cross_ut_u = pass.cross1;
    pt.cross_ut_xgradu = pass.cross2;
    pt.int_e_loc = ieloc_acc_;
    pt.v_energy = 0.5 * pass.l2sq + 0.5 * vgrad;
    pt.v_source = vsrc;
    const double lhs = t_rec * pass.e_total + 0.5 * pass.cross1 + pass.cross2;
    const double rhs = series_.j0 + pt.K_integral;
    pt.morawetz_residual = (lhs - rhs) / std::max(1.0, std::abs(series_.j0) + t_rec * series_.e0);
    series_.points.push_back(pt);
}

void Sampler::on_sample(const WaveState& state, double dt)
{
    series_.dt = dt;
    const double t_rec = state.t - 0.5 * dt;
    const double dt_samp = t_rec - t_prev_;
    const double* P = state.u_curr.v.data();
    const double* Q = state.u_prev.v.data();
    const PassResult pass = field_pass(P, Q, 0.5, 0.5, 1.0 / dt, -1.0 / dt, t_rec, true, dt_samp);
    t_prev_ = t_rec;
    finish_sample(pass, t_rec, dt_samp, P, Q, 0.5, 0.5);
}

void Sampler::append_initial_record()
{
    const double* P = data_.u0.v.data();
    const double* Q = data_.u1.v.data();
    const PassResult pass = field_pass(P, Q, 1.0, 0.0, 0.0, 1.0, 0.0, false, 0.0);
    SeriesPoint pt;
    pt.t = 0.0;
    pt.E_total = pass.e_total;
    pt.E_loc = pass.e_loc;
    pt.E_ext = pass.e_ext;
    pt.l2_norm = std::sqrt(pass.l2sq);
    pt.weighted_ext = pass.wext;
    const double thr_u0 = 1e-12 * std::max(pass.max_abs_u, max_abs(data_.u1));
    pt.support_radius = std::max(support_radius(P, Q, 1.0, 0.0, thr_u0),
                                 support_radius(Q, P, 1.0, 0.0, thr_u0));
    pt.cross_ut_u = pass.cross1;
    pt.cross_ut_xgradu = pass.cross2;
    pt.v_energy = 0.5 * series_.norm_u0_l2 * series_.norm_u0_l2;
    pt.v_source = 0.0;
    pt.morawetz_residual = 0.0;
    series_.points.push_back(pt);
}

} // namespace wavedecay
