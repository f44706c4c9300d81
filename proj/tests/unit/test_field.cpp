#include <doctest.h>

#include <cmath>
#include <random>

#include "wavedecay/field.hpp"

using namespace wavedecay;

namespace {

Grid2D small_grid(double half, double dx)
{
    const int m = static_cast<int>(std::lround(half / dx));
    return make_grid(2 * m + 1, dx);
}

// reference 5-point Laplacian with zero extension outside the grid
ScalarField five_point_laplacian(const ScalarField& u)
{
    const Grid2D& g = u.grid;
    ScalarField out = make_field(g);
    const double invdx2 = 1.0 / (g.dx * g.dx);
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy) {
            const double uc = u.at(ix, iy);
            double s = -4.0 * uc;
            s += ix > 0 ? u.at(ix - 1, iy) : 0.0;
            s += ix < g.n - 1 ? u.at(ix + 1, iy) : 0.0;
            s += iy > 0 ? u.at(ix, iy - 1) : 0.0;
            s += iy < g.n - 1 ? u.at(ix, iy + 1) : 0.0;
            out.at(ix, iy) = s * invdx2;
        }
    return out;
}

double dot(const ScalarField& a, const ScalarField& b)
{
    double s = 0.0;
    for (long i = 0; i < a.grid.size(); ++i)
        s += a.v[i] * b.v[i];
    return s;
}

} // namespace

TEST_CASE("grid invariants")
{
    const Grid2D g = make_grid(41, 0.1);
    CHECK(g.half_width() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(g.coord(20) == 0.0);  // odd count puts the origin on a node
    CHECK_THROWS(make_grid(40, 0.1));
    CHECK_THROWS(make_grid(1, 0.1));
    CHECK_THROWS(make_grid(41, 0.0));
}

TEST_CASE("gradient exact for affine fields")
{
    const Grid2D g = small_grid(1.0, 0.1);
    const ScalarField f = sample_field(g, [](double x, double) { return x; });
    const Gradient gr = gradient(f);
    for (long i = 0; i < g.size(); ++i) {
        CHECK(gr.d1.v[i] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(std::abs(gr.d2.v[i]) < 1e-13);
    }
    const ScalarField c = sample_field(g, [](double, double) { return 3.5; });
    const Gradient gc = gradient(c);
    CHECK(max_abs(gc.d1) < 1e-13);
    CHECK(max_abs(gc.d2) < 1e-13);
}

TEST_CASE("gradient second-order convergence against the analytic gradient")
{
    double prev_err = 0.0;
    std::vector<double> errs;
    for (const double dx : {0.1, 0.05}) {
        const Grid2D g = small_grid(1.0, dx);
        const ScalarField f =
            sample_field(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
        const Gradient gr = gradient(f);
        double err = 0.0;
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy) {
                const double x = g.coord(ix), y = g.coord(iy);
                err = std::max(err, std::abs(gr.d1.at(ix, iy) - std::cos(x) * std::cos(y)));
                err = std::max(err, std::abs(gr.d2.at(ix, iy) + std::sin(x) * std::sin(y)));
            }
        errs.push_back(err);
        prev_err = err;
    }
    (void)prev_err;
    const double order = std::log2(errs[0] / errs[1]);
    CHECK(order >= 1.9);
}

TEST_CASE("flux divergence: constant K on quadratics and zero fields")
{
    const Grid2D g = small_grid(1.0, 0.1);
    const ScalarField K = sample_field(g, [](double, double) { return 1.0; });
    const ScalarField u = sample_field(g, [](double x, double y) { return x * x + y * y; });
    const ScalarField lap = div_k_grad(K, u);
    for (int ix = 1; ix < g.n - 1; ++ix)
        for (int iy = 1; iy < g.n - 1; ++iy)
            CHECK(lap.at(ix, iy) == doctest::Approx(4.0).epsilon(1e-11));

    const ScalarField zero = make_field(g);
    const ScalarField K2 = sample_field(g, [](double x, double y) { return 1.0 + 0.3 * x * x + y * y; });
    CHECK(max_abs(div_k_grad(K2, zero)) == 0.0);
}

TEST_CASE("flux divergence equals K times the 5-point Laplacian for constant K")
{
    const Grid2D g = small_grid(0.7, 0.1);
    const double k = 2.7;
    const ScalarField K = sample_field(g, [&](double, double) { return k; });
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ScalarField u = make_field(g);
    for (long i = 0; i < g.size(); ++i)
        u.v[i] = dist(rng);
    const ScalarField a = div_k_grad(K, u);
    const ScalarField b = five_point_laplacian(u);
    for (long i = 0; i < g.size(); ++i)
        CHECK(a.v[i] == doctest::Approx(k * b.v[i]).epsilon(1e-14));
}

TEST_CASE("flux divergence is symmetric on interior-supported fields")
{
    const Grid2D g = make_grid(7, 0.25);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.5, 2.0);
    ScalarField K = make_field(g);
    for (long i = 0; i < g.size(); ++i)
        K.v[i] = dist(rng);
    auto interior_random = [&](int seed) {
        std::mt19937_64 r2(seed);
        std::uniform_real_distribution<double> d2(-1.0, 1.0);
        ScalarField f = make_field(g);
        for (int ix = 1; ix < g.n - 1; ++ix)
            for (int iy = 1; iy < g.n - 1; ++iy)
                f.at(ix, iy) = d2(r2);
        return f;
    };
    const ScalarField u = interior_random(1);
    const ScalarField w = interior_random(2);
    const double a = dot(div_k_grad(K, u), w);
    const double b = dot(u, div_k_grad(K, w));
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("operators are linear in the field argument")
{
    const Grid2D g = make_grid(21, 0.1);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ScalarField f = make_field(g), h = make_field(g), K = make_field(g);
    for (long i = 0; i < g.size(); ++i) {
        f.v[i] = dist(rng);
        h.v[i] = dist(rng);
        K.v[i] = 1.5 + 0.5 * dist(rng);
    }
    const double a = 1.7, b = -0.6;
    ScalarField comb = make_field(g);
    for (long i = 0; i < g.size(); ++i)
        comb.v[i] = a * f.v[i] + b * h.v[i];

    const Gradient gc = gradient(comb), gf = gradient(f), gh = gradient(h);
    const ScalarField dc = div_k_grad(K, comb), df = div_k_grad(K, f), dh = div_k_grad(K, h);
    double scale = std::max(max_abs(gf.d1), max_abs(dh));
    for (long i = 0; i < g.size(); ++i) {
        CHECK(std::abs(gc.d1.v[i] - (a * gf.d1.v[i] + b * gh.d1.v[i])) <= 1e-12 * scale);
        CHECK(std::abs(dc.v[i] - (a * df.v[i] + b * dh.v[i])) <= 1e-12 * std::max(1.0, max_abs(dc)));
    }
}

TEST_CASE("quadrature: disc area, zero field, Gaussian")
{
    const Grid2D g = small_grid(3.0, 0.05);
    const ScalarField one = sample_field(g, [](double, double) { return 1.0; });
    const double area = integrate(one, Region::disc(2.0));
    CHECK(std::abs(area - M_PI * 4.0) / (M_PI * 4.0) < 0.005);

    const ScalarField zero = make_field(g);
    CHECK(integrate(zero, Region::full()) == 0.0);

    const Grid2D gg = small_grid(6.0, 0.05);
    const ScalarField gauss =
        sample_field(gg, [](double x, double y) { return std::exp(-(x * x + y * y)); });
    CHECK(std::abs(integrate(gauss, Region::full()) - M_PI) / M_PI < 1e-4);
}

TEST_CASE("quadrature: disjoint annuli tile their union")
{
    const Grid2D g = small_grid(3.0, 0.05);
    const ScalarField f =
        sample_field(g, [](double x, double y) { return 1.0 + x + 0.5 * y * y; });
    const double a = integrate(f, Region::annulus(0.5, 1.3));
    const double b = integrate(f, Region::annulus(1.3, 2.4));
    const double u = integrate(f, Region::annulus(0.5, 2.4));
    CHECK(a + b == doctest::Approx(u).epsilon(1e-12));
}

TEST_CASE("quadrature rejects bad regions")
{
    const Grid2D g = small_grid(1.0, 0.1);
    const ScalarField f = make_field(g);
    CHECK_THROWS(integrate(f, Region::disc(-1.0)));
    CHECK_THROWS(integrate(f, Region::disc(5.0)));
    CHECK_THROWS(integrate(f, Region::annulus(1.0, 0.5)));
}
