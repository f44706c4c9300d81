#include "wavedecay/initial_data.hpp"

#include <cmath>

#include "wavedecay/coefficients.hpp"

namespace wavedecay {

ScalarField make_bump(double center1, double center2, double radius, double amplitude, const Grid2D& grid)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("bump: radius must be positive");
    ScalarField f = make_field(grid);
    for (int ix = 0; ix < grid.n; ++ix) {
        const double x1 = grid.coord(ix);
        for (int iy = 0; iy < grid.n; ++iy) {
            const double s = std::hypot(x1 - center1, grid.coord(iy) - center2) / radius;
            f.v[grid.index(ix, iy)] = amplitude * bump(s);
        }
    }
    return f;
}

double moment(const ScalarField& u1)
{
    return integrate(u1, Region::full());
}

namespace {

void check_support(const DataSpec& spec, double center_norm, double radius)
{
    if (center_norm + radius > spec.L * (1.0 + 1e-12))
        throw std::invalid_argument("data: bump support exceeds the support radius L");
}

} // namespace

InitialData make_dataset(const DataSpec& spec, const Grid2D& grid)
{
    if (!(spec.L > 0.0))
        throw std::invalid_argument("data: support radius L must be positive");
    if (grid.half_width() < spec.L)
        throw std::invalid_argument("data: grid half width smaller than the support radius");

    InitialData d;
    d.L = spec.L;
    d.u0 = make_field(grid);
    d.u1 = make_field(grid);

    if (spec.preset == "bump-velocity") {
        check_support(spec, 0.0, spec.L);
        d.u1 = make_bump(0.0, 0.0, spec.L, spec.amplitude, grid);
    } else if (spec.preset == "bump-displacement") {
        check_support(spec, 0.0, spec.L);
        d.u0 = make_bump(0.0, 0.0, spec.L, spec.amplitude, grid);
    } else if (spec.preset == "dipole-velocity") {
        const double c = 0.5 * spec.L, r = 0.5 * spec.L;
        check_support(spec, c, r);
        const ScalarField plus = make_bump(c, 0.0, r, spec.amplitude, grid);
        const ScalarField minus = make_bump(-c, 0.0, r, spec.amplitude, grid);
        for (long i = 0; i < grid.size(); ++i)
            d.u1.v[i] = plus.v[i] - minus.v[i];
    } else {
        throw std::invalid_argument("data: unknown preset '" + spec.preset + "'");
    }

    d.norm_u0_l2 = norm_l2(d.u0);
    d.norm_u1_l2 = norm_l2(d.u1);
    d.norm_u1_l1 = norm_l1(d.u1);
    d.norm_u1_linf = max_abs(d.u1);
    d.moment = moment(d.u1);
    return d;
}

} // namespace wavedecay
