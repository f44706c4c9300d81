#include <doctest.h>

#include <cmath>

#include "wavedecay/coefficients.hpp"

using namespace wavedecay;

namespace {

Grid2D grid_for(double half, double dx)
{
    const int m = static_cast<int>(std::lround(half / dx));
    return make_grid(2 * m + 1, dx);
}

} // namespace

TEST_CASE("constant coefficient satisfies every condition")
{
    const Grid2D g = grid_for(3.0, 0.1);
    const CoefficientField K = make_constant(1.0, g);
    CHECK(K.k1() == doctest::Approx(1.0));
    const ConditionReport rep = validate_conditions(K);
    CHECK(rep.all_pass());
    CHECK(rep.measured_gamma0 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.radial_monotone.pass);  // x.grad K = 0 <= 0

    CHECK(make_constant(4.0, g).k1() == doctest::Approx(2.0));
    CHECK_THROWS(make_constant(0.0, g));
    CHECK_THROWS(make_constant(-1.0, g));
}

TEST_CASE("capped power-law profile: values and gates")
{
    const Grid2D g = grid_for(5.0, 0.05);

    SUBCASE("zero exponent collapses to the free coefficient")
    {
        const CoefficientField K = make_power_growth(0.0, 2.0, g);
        CHECK(max_abs(K.samples) == doctest::Approx(1.0));
        for (double v : K.samples.v)
            CHECK(v == 1.0);
    }

    SUBCASE("far-field value matches the closed form")
    {
        const CoefficientField K = make_power_growth(0.5, 4.0, g);
        const int mid = (g.n - 1) / 2;
        CHECK(K.samples.at(mid, mid) == doctest::Approx(1.0));
        const double far = std::pow(17.0, 0.25);
        CHECK(far == doctest::Approx(2.0305).epsilon(1e-4));
        CHECK(K.samples.at(0, 0) == far);
        CHECK(K.k0() == doctest::Approx(far));
    }

    SUBCASE("ratio bound holds on the grid for both bridge regimes")
    {
        for (const double r0 : {2.0, 4.0}) {
            const CoefficientField K = make_power_growth(0.5, r0, g);
            const ConditionReport rep = validate_conditions(K);
            CHECK(rep.measured_gamma0 >= 0.0);
            CHECK(rep.measured_gamma0 <= 0.5 + 1e-8);
            CHECK(rep.ratio_bound.pass);
            CHECK(rep.farfield_constant.pass);
            CHECK_FALSE(rep.radial_monotone.pass);  // profile increases radially
        }
    }

    CHECK_THROWS(make_power_growth(1.0, 2.0, g));
    CHECK_THROWS(make_power_growth(-0.1, 2.0, g));
    CHECK_THROWS(make_power_growth(0.5, 0.1, g));  // r0 below 4 dx
}

TEST_CASE("radially decreasing bump coefficient")
{
    const Grid2D g = grid_for(4.0, 0.05);
    const CoefficientField K = make_radial_decreasing(2.0, 1.0, 3.0, g);
    const int mid = (g.n - 1) / 2;
    CHECK(K.samples.at(mid, mid) == doctest::Approx(2.0));
    // node at |x| = 3 on the axis
    const int i3 = mid + static_cast<int>(std::lround(3.0 / g.dx));
    CHECK(K.samples.at(i3, mid) == 1.0);
    CHECK(K.k1() == doctest::Approx(std::sqrt(2.0)));

    const ConditionReport rep = validate_conditions(K);
    CHECK(rep.all_pass());
    CHECK(rep.radial_monotone.worst <= 1e-10);
    CHECK(rep.measured_gamma0 <= 1e-10);

    SUBCASE("degenerate peak gives the constant field")
    {
        const CoefficientField C = make_radial_decreasing(1.0, 1.0, 3.0, g);
        for (double v : C.samples.v)
            CHECK(v == 1.0);
    }
    CHECK_THROWS(make_radial_decreasing(0.5, 1.0, 3.0, g));
}

TEST_CASE("ripple coefficient: contraction parameter and rejections")
{
    const Grid2D g = grid_for(3.0, 0.05);

    SUBCASE("zero amplitude is constant with eta0 = 0")
    {
        const CoefficientField K = make_ripple(1.0, 0.0, 2.0, g);
        CHECK(*K.profile.eta0 == 0.0);
        for (double v : K.samples.v)
            CHECK(v == 1.0);
    }

    SUBCASE("eta0 matches its definition")
    {
        // scale the amplitude so the gradient sup is 0.1
        const RadialCoefficient probe = ripple_profile(1.0, 1e-3, 2.0);
        const double amp = 1e-3 * 0.1 / probe.lip_grad_sup;
        const CoefficientField K = make_ripple(1.0, amp, 2.0, g);
        CHECK(K.profile.lip_grad_sup == doctest::Approx(0.1).epsilon(1e-6));
        CHECK(*K.profile.eta0 == doctest::Approx(2.0 * 0.1 / K.k_m()).epsilon(1e-9));
    }

    SUBCASE("grid gradient stays below the advertised sup")
    {
        const CoefficientField K = make_ripple(1.0, 0.1, 2.0, g);
        const ConditionReport rep = validate_conditions(K);
        CHECK(rep.measured_lip <= K.profile.lip_grad_sup + 1e-6);
        CHECK(rep.gradient_bound.pass);
        CHECK(rep.farfield_constant.pass);
        CHECK(rep.ellipticity.pass);
        // the wiggle is not radially monotone: exactly the hypothesis it drops
        CHECK_FALSE(rep.radial_monotone.pass);
    }

    CHECK_THROWS(make_ripple(1.0, -2.0, 2.0, g));  // nonpositive modulus
    CHECK_THROWS(make_ripple(1.0, 0.3, 2.0, g));   // contraction parameter >= 1
}

TEST_CASE("every builder is node-exact beyond the far-field radius")
{
    const Grid2D g = grid_for(5.0, 0.05);
    const CoefficientField fields[] = {
        make_constant(1.5, g),
        make_power_growth(0.25, 2.0, g),
        make_radial_decreasing(2.0, 1.0, 3.0, g),
        make_ripple(1.0, 0.1, 2.0, g),
    };
    for (const CoefficientField& K : fields) {
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                if (std::hypot(g.coord(ix), g.coord(iy)) > K.r0())
                    CHECK(K.samples.at(ix, iy) == K.k0());
        double mn = 1e300, mx = -1e300;
        for (double v : K.samples.v) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        CHECK(mn >= K.k_m());
        CHECK(K.k1() * K.k1() >= mx * (1.0 - 1e-15));
        CHECK(K.k0() >= K.k_m());
    }
}
