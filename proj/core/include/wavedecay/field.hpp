#ifndef WAVEDECAY_FIELD_HPP
#define WAVEDECAY_FIELD_HPP

#include <functional>
#include <stdexcept>
#include <vector>

namespace wavedecay {

/// Uniform Cartesian grid on the square [-X, X]^2. The node count per side is
/// odd so the origin is a node; X = (n-1)/2 * dx exactly.
struct Grid2D {
    int n = 0;         // nodes per side, odd, >= 3
    double dx = 0.0;   // isotropic spacing, > 0

    double half_width() const { return 0.5 * (n - 1) * dx; }
    long size() const { return static_cast<long>(n) * n; }
    double coord(int i) const { return (i - (n - 1) / 2) * dx; }
    long index(int ix, int iy) const { return static_cast<long>(ix) * n + iy; }
    bool operator==(const Grid2D&) const = default;
};

Grid2D make_grid(int nodes_per_side, double spacing);

/// Nodal scalar samples on a Grid2D, row-major in the first coordinate.
struct ScalarField {
    Grid2D grid;
    std::vector<double> v;

    double& at(int ix, int iy) { return v[grid.index(ix, iy)]; }
    double at(int ix, int iy) const { return v[grid.index(ix, iy)]; }
};

ScalarField make_field(const Grid2D& g, double fill = 0.0);
ScalarField sample_field(const Grid2D& g, const std::function<double(double, double)>& f);

struct Gradient {
    ScalarField d1, d2;
};

/// Second-order central differences in the interior, one-sided second-order
/// on the boundary ring. Exact for affine fields.
Gradient gradient(const ScalarField& f);

/// Conservative flux form of div(K grad u): per node, sum over the four faces
/// of the face coefficient (arithmetic mean of the adjacent nodal K) times the
/// difference across the face, divided by dx^2. Values outside the grid are
/// taken as zero; K is clamped at the boundary.
ScalarField div_k_grad(const ScalarField& K, const ScalarField& u);

struct Region {
    enum class Kind { Full, Disc, Annulus };
    Kind kind = Kind::Full;
    double r_inner = 0.0;
    double r_outer = 0.0;

    static Region full() { return {}; }
    static Region disc(double radius) { return {Kind::Disc, 0.0, radius}; }
    static Region annulus(double r_inner, double r_outer) { return {Kind::Annulus, r_inner, r_outer}; }
};

/// Fraction of each node's dx-by-dx cell inside the region, by 4x4
/// sub-sampling of the cell. Annuli are half-open in radius so that disjoint
/// annuli tile exactly.
std::vector<double> region_fractions(const Grid2D& g, const Region& region);

/// Cell-weighted quadrature: sum of value * dx^2 * cell fraction.
double integrate(const ScalarField& f, const Region& region);
double integrate(const ScalarField& f, const std::vector<double>& fractions);

double max_abs(const ScalarField& f);
bool all_finite(const ScalarField& f);
double norm_l1(const ScalarField& f);
double norm_l2(const ScalarField& f);

/// Deterministic parallel reduction: per-row partial sums combined in row
/// order, independent of thread count.
double reduce_rows(int rows, const std::function<double(int)>& row_sum);

} // namespace wavedecay

#endif
