#include "wavedecay/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace wavedecay {

LinFit ols(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("ols: need at least two matched samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinFit f;
    const double det = n * sxx - sx * sx;
    if (det == 0.0)
        throw std::invalid_argument("ols: degenerate abscissae");
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fit = f.intercept + f.slope * x[i];
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

namespace {

// rms residual of log E - shape(t) about its own mean; returns {rms, mean}
std::pair<double, double> fixed_shape_residual(const std::vector<double>& logt,
                                               const std::vector<double>& loge,
                                               const std::vector<double>& shape)
{
    double mean = 0.0;
    for (std::size_t i = 0; i < logt.size(); ++i)
        mean += loge[i] - shape[i];
    mean /= static_cast<double>(logt.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < logt.size(); ++i) {
        const double r = loge[i] - shape[i] - mean;
        ss += r * r;
    }
    return {std::sqrt(ss / static_cast<double>(logt.size())), mean};
}

} // namespace

DecayFit decay_fit_points(const std::vector<double>& t, const std::vector<double>& e, double t_a,
                          double t_b, double gamma)
{
    if (t.size() != e.size())
        throw std::invalid_argument("decay fit: mismatched series");
    if (!(t_a > 1.0) || !(t_b > t_a))
        throw std::invalid_argument("decay fit: window must satisfy 1 < t_a < t_b");

    std::vector<double> lt, le;
    int excluded = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_a || t[i] > t_b)
            continue;
        if (!(e[i] > 0.0)) {
            ++excluded;
            continue;
        }
        lt.push_back(std::log(t[i]));
        le.push_back(std::log(e[i]));
    }
    const int in_window = static_cast<int>(lt.size()) + excluded;
    if (in_window < 12)
        throw std::invalid_argument("decay fit: fewer than 12 samples in the window");
    if (excluded > 0.3 * in_window)
        throw std::invalid_argument("decay fit: more than 30 percent of window samples nonpositive");

    DecayFit out;
    out.gamma = gamma;
    out.used = static_cast<int>(lt.size());
    out.excluded = excluded;

    const LinFit free = ols(lt, le);
    out.slope = free.slope;
    out.intercept = free.intercept;
    out.r2 = free.r2;

    std::vector<double> s1(lt.size()), s2(lt.size()), s3(lt.size());
    for (std::size_t i = 0; i < lt.size(); ++i) {
        const double x = lt[i];
        s1[i] = -x;
        s2[i] = -x + 0.5 * std::log(x);
        s3[i] = (gamma - 1.0) * x + 0.5 * std::log(x);
    }
    const auto [r1, c1] = fixed_shape_residual(lt, le, s1);
    const auto [r2m, c2] = fixed_shape_residual(lt, le, s2);
    const auto [r3, c3] = fixed_shape_residual(lt, le, s3);
    (void)c1;
    (void)c3;
    out.rms_t1 = r1;
    out.rms_t1_sqrtlog = r2m;
    out.rms_gamma_sqrtlog = r3;
    out.prefactor = std::exp(c2);

    out.best_model = "t^-1";
    double best = r1;
    if (r2m < best) {
        best = r2m;
        out.best_model = "t^-1 sqrt(log t)";
    }
    if (r3 < best)
        out.best_model = "t^(gamma-1) sqrt(log t)";
    return out;
}

DecayFit decay_fit(const RunSeries& s, double t_a, double t_b, double gamma)
{
    std::vector<double> t, e;
    t.reserve(s.points.size());
    e.reserve(s.points.size());
    for (const SeriesPoint& p : s.points) {
        t.push_back(p.t);
        e.push_back(p.E_loc);
    }
    return decay_fit_points(t, e, t_a, t_b, gamma);
}

} // namespace wavedecay
