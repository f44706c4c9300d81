#include "wavedecay/field.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wavedecay {

Grid2D make_grid(int nodes_per_side, double spacing)
{
    if (nodes_per_side < 3 || nodes_per_side % 2 == 0)
        throw std::invalid_argument("grid: nodes_per_side must be odd and >= 3");
    if (!(spacing > 0.0))
        throw std::invalid_argument("grid: spacing must be positive");
    return Grid2D{nodes_per_side, spacing};
}

ScalarField make_field(const Grid2D& g, double fill)
{
    if (g.n < 3)
        throw std::invalid_argument("field: invalid grid");
    ScalarField f;
    f.grid = g;
    f.v.assign(g.size(), fill);
    return f;
}

ScalarField sample_field(const Grid2D& g, const std::function<double(double, double)>& fn)
{
    ScalarField f = make_field(g);
    for (int ix = 0; ix < g.n; ++ix) {
        const double x1 = g.coord(ix);
        for (int iy = 0; iy < g.n; ++iy)
            f.v[g.index(ix, iy)] = fn(x1, g.coord(iy));
    }
    return f;
}

namespace {

// One-dimensional derivative along a line of n samples with stride `str`.
inline double d1d(const double* p, int i, int n, long str, double inv2dx)
{
    if (i == 0)
        return (-3.0 * p[0] + 4.0 * p[str] - p[2 * str]) * inv2dx;
    if (i == n - 1)
        return (3.0 * p[static_cast<long>(i) * str] - 4.0 * p[(i - 1L) * str] + p[(i - 2L) * str]) * inv2dx;
    return (p[(i + 1L) * str] - p[(i - 1L) * str]) * inv2dx;
}

} // namespace

Gradient gradient(const ScalarField& f)
{
    const Grid2D& g = f.grid;
    if (g.n < 3)
        throw std::invalid_argument("gradient: grid must have at least 3 nodes per side");
    Gradient out{make_field(g), make_field(g)};
    const double inv2dx = 1.0 / (2.0 * g.dx);
    const int n = g.n;
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            out.d1.v[g.index(ix, iy)] = d1d(f.v.data() + iy, ix, n, n, inv2dx);
            out.d2.v[g.index(ix, iy)] = d1d(f.v.data() + static_cast<long>(ix) * n, iy, n, 1, inv2dx);
        }
    }
    return out;
}

ScalarField div_k_grad(const ScalarField& K, const ScalarField& u)
{
    const Grid2D& g = u.grid;
    if (!(K.grid == g))
        throw std::invalid_argument("div_k_grad: coefficient and field grids differ");
    ScalarField out = make_field(g);
    const int n = g.n;
    const double invdx2 = 1.0 / (g.dx * g.dx);
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            const long c = g.index(ix, iy);
            const double kc = K.v[c];
            const double uc = u.v[c];
            double acc = 0.0;
            // west, east, south, north; outside the grid u = 0 and K clamps
            if (ix > 0)
                acc += 0.5 * (kc + K.v[c - n]) * (u.v[c - n] - uc);
            else
                acc += kc * (0.0 - uc);
            if (ix < n - 1)
                acc += 0.5 * (kc + K.v[c + n]) * (u.v[c + n] - uc);
            else
                acc += kc * (0.0 - uc);
            if (iy > 0)
                acc += 0.5 * (kc + K.v[c - 1]) * (u.v[c - 1] - uc);
            else
                acc += kc * (0.0 - uc);
            if (iy < n - 1)
                acc += 0.5 * (kc + K.v[c + 1]) * (u.v[c + 1] - uc);
            else
                acc += kc * (0.0 - uc);
            out.v[c] = acc * invdx2;
        }
    }
    return out;
}

std::vector<double> region_fractions(const Grid2D& g, const Region& region)
{
    std::vector<double> frac(g.size(), 1.0);
    if (region.kind == Region::Kind::Full)
        return frac;

    double r1 = 0.0, r2 = 0.0;
    if (region.kind == Region::Kind::Disc) {
        r2 = region.r_outer;
        if (r2 < 0.0)
            throw std::invalid_argument("region: negative radius");
    } else {
        r1 = region.r_inner;
        r2 = region.r_outer;
        if (r1 < 0.0 || r2 < 0.0)
            throw std::invalid_argument("region: negative radius");
        if (r1 > r2)
            throw std::invalid_argument("region: annulus with r_inner > r_outer");
    }
    if (r2 > g.half_width())
        throw std::invalid_argument("region: radius exceeds grid half width");

    const int n = g.n;
    const double dx = g.dx;
    // 4x4 sub-cell midpoints, offsets in units of dx relative to the node
    double off[4];
    for (int k = 0; k < 4; ++k)
        off[k] = (-0.5 + (k + 0.5) / 4.0) * dx;

#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        const double x1 = g.coord(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double x2 = g.coord(iy);
            // skip the 16-point scan when the whole cell is trivially in or out
            const double r = std::sqrt(x1 * x1 + x2 * x2);
            const double cell_rad = 0.7071067811865476 * dx;
            double f;
            if (r + cell_rad < r2 && r - cell_rad >= r1) {
                f = 1.0;
            } else if (r - cell_rad >= r2 || r + cell_rad < r1) {
                f = 0.0;
            } else {
                int cnt = 0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        const double s1 = x1 + off[a], s2 = x2 + off[b];
                        const double rr = std::sqrt(s1 * s1 + s2 * s2);
                        if (rr >= r1 && rr < r2)
                            ++cnt;
                    }
                f = cnt / 16.0;
            }
            frac[g.index(ix, iy)] = f;
        }
    }
    return frac;
}

double integrate(const ScalarField& f, const std::vector<double>& fractions)
{
    const Grid2D& g = f.grid;
    if (static_cast<long>(fractions.size()) != g.size())
        throw std::invalid_argument("integrate: fraction table does not match grid");
    const int n = g.n;
    const double cell = g.dx * g.dx;
    return cell * reduce_rows(n, [&](int ix) {
        double s = 0.0;
        const long base = static_cast<long>(ix) * n;
        for (int iy = 0; iy < n; ++iy)
            s += f.v[base + iy] * fractions[base + iy];
        return s;
    });
}

double integrate(const ScalarField& f, const Region& region)
{
    if (region.kind == Region::Kind::Full) {
        const int n = f.grid.n;
        const double cell = f.grid.dx * f.grid.dx;
        return cell * reduce_rows(n, [&](int ix) {
            double s = 0.0;
            const long base = static_cast<long>(ix) * n;
            for (int iy = 0; iy < n; ++iy)
                s += f.v[base + iy];
            return s;
        });
    }
    return integrate(f, region_fractions(f.grid, region));
}

double max_abs(const ScalarField& f)
{
    double m = 0.0;
    for (double x : f.v)
        m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(const ScalarField& f)
{
    for (double x : f.v)
        if (!std::isfinite(x))
            return false;
    return true;
}

double norm_l1(const ScalarField& f)
{
    const int n = f.grid.n;
    const double cell = f.grid.dx * f.grid.dx;
    return cell * reduce_rows(n, [&](int ix) {
        double s = 0.0;
        const long base = static_cast<long>(ix) * n;
        for (int iy = 0; iy < n; ++iy)
            s += std::abs(f.v[base + iy]);
        return s;
    });
}

double norm_l2(const ScalarField& f)
{
    const int n = f.grid.n;
    const double cell = f.grid.dx * f.grid.dx;
    return std::sqrt(cell * reduce_rows(n, [&](int ix) {
        double s = 0.0;
        const long base = static_cast<long>(ix) * n;
        for (int iy = 0; iy < n; ++iy)
            s += f.v[base + iy] * f.v[base + iy];
        return s;
    }));
}

double reduce_rows(int rows, const std::function<double(int)>& row_sum)
{
    std::vector<double> partial(rows);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < rows; ++i)
        partial[i] = row_sum(i);
    double s = 0.0;
    for (int i = 0; i < rows; ++i)
        s += partial[i];
    return s;
}

} // namespace wavedecay
