#pragma once

#include <cmath>
#include <cstddef>

namespace idealab {

// Adaptive Gauss-Kronrod (G7,K15) integration with bisection; the error
// estimate is |K15 - G7| and the tolerance budget is split across halves.
namespace gk_detail {

inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double a, double b, double& k15, double& g7) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double dx = h * xgk[j];
        const double fv = (j == 7) ? f(c) : f(c - dx) + f(c + dx);
        resk += wgk[j] * fv;
        if (j % 2 == 1) resg += wg[j / 2] * fv; // G7 nodes sit at the odd K15 indices
    }
    k15 = resk * h;
    g7 = resg * h;
}

template <class F>
double adaptive(const F& f, double a, double b, double abs_tol, int depth) {
    double k15, g7;
    gk15(f, a, b, k15, g7);
    const double err = std::abs(k15 - g7);
    if (err <= abs_tol || depth <= 0) return k15;
    const double c = 0.5 * (a + b);
    return adaptive(f, a, c, 0.5 * abs_tol, depth - 1) +
           adaptive(f, c, b, 0.5 * abs_tol, depth - 1);
}

} // namespace gk_detail

template <class F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol = 1e-10, int max_depth = 28) {
    if (a == b) return 0.0;
    return gk_detail::adaptive(f, a, b, abs_tol, max_depth);
}

} // namespace idealab
