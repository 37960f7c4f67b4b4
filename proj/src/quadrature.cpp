#include "spinreg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace spinreg::quad {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 15-point Kronrod abscissae (positive half) with the embedded 7-point
// Gauss rule on the odd-indexed nodes. Values from the QUADPACK dqk15 rule.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15_panel(const Fn& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double f_center = f(center);
    double kronrod = wgk[7] * f_center;
    double gauss = wg[3] * f_center;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * xgk[i];
        const double fsum = f(center - dx) + f(center + dx);
        kronrod += wgk[i] * fsum;
        if (i % 2 == 1) gauss += wg[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

// Iterated pairwise averaging of partial sums (Euler transformation apex).
double averaging_apex(std::vector<double> row) {
    while (row.size() > 1) {
        for (std::size_t i = 0; i + 1 < row.size(); ++i)
            row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
    }
    return row.empty() ? 0.0 : row[0];
}

}  // namespace

Outcome gk15(const Fn& f, double lo, double hi) {
    const Panel p = gk15_panel(f, lo, hi);
    return {p.value, p.error, true};
}

Outcome adaptive(const Fn& f, std::vector<double> breakpoints,
                 double abs_tol, double rel_tol, int max_splits) {
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                      breakpoints.end());
    if (breakpoints.size() < 2) return {0.0, 0.0, true};

    std::priority_queue<Panel> heap;
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] <= breakpoints[i]) continue;
        Panel p = gk15_panel(f, breakpoints[i], breakpoints[i + 1]);
        value += p.value;
        error += p.error;
        heap.push(p);
    }

    int splits = 0;
    while (error > std::max(abs_tol, rel_tol * std::abs(value)) &&
           splits < max_splits && !heap.empty()) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) continue;  // width exhausted
        Panel left = gk15_panel(f, worst.lo, mid);
        Panel right = gk15_panel(f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++splits;
    }
    const bool ok = error <= std::max(abs_tol, rel_tol * std::abs(value));
    return {value, error, ok};
}

Outcome alternating_tail(const Fn& f, double s, double phase, double x0,
                         double x_max, double abs_tol, int max_groups) {
    Outcome out;
    if (x_max <= x0 || !(s > 0.0)) return out;
    const double half_period = kPi / s;

    // First sign change strictly after x0.
    double k = std::ceil(x0 * s / kPi - phase);
    double z = (k + phase) * kPi / s;
    while (z <= x0) z += half_period;

    // Lead-in piece before the first sign change.
    {
        const double hi = std::min(z, x_max);
        const double q = 0.25 * (hi - x0);
        Outcome lead = adaptive(f, {x0, x0 + q, x0 + 2.0 * q, x0 + 3.0 * q, hi},
                                abs_tol * 0.1, 0.0, 512);
        out.value += lead.value;
        out.abs_error += lead.abs_error;
        if (hi >= x_max) return out;
    }

    std::vector<double> partial;  // sliding window of raw partial sums
    double series_sum = 0.0;
    double accel_prev = 0.0;
    bool have_prev = false;
    double group_abs = 0.0;
    int stable = 0;

    auto group_quad = [&](double lo, double hi) {
        const double q = 0.25 * (hi - lo);
        return adaptive(f, {lo, lo + q, lo + 2.0 * q, lo + 3.0 * q, hi},
                        abs_tol * 0.02, 1e-13, 512);
    };

    for (int g = 0; g < max_groups; ++g) {
        const double lo = z;
        const double hi = z + half_period;
        if (hi >= x_max) {
            // Range exhausted: finish with the exact remaining piece.
            Outcome last = group_quad(lo, x_max);
            out.value += series_sum + last.value;
            out.abs_error += last.abs_error;
            return out;
        }
        Outcome grp = group_quad(lo, hi);
        series_sum += grp.value;
        out.abs_error += grp.abs_error;
        group_abs = std::abs(grp.value);
        partial.push_back(series_sum);
        if (partial.size() > 48) partial.erase(partial.begin());

        // Alternating remainder bound: once groups are negligible the raw
        // partial sum is the better estimate (averaging would drag in stale
        // early sums with binomial weight).
        if (group_abs < 0.25 * abs_tol) {
            out.value += series_sum;
            out.abs_error += group_abs;
            out.converged = true;
            return out;
        }
        const double accel = averaging_apex(partial);
        if (have_prev) {
            const double delta = std::abs(accel - accel_prev);
            stable = (delta < 0.25 * abs_tol && partial.size() >= 6) ? stable + 1 : 0;
            if (stable >= 2) {
                out.value += accel;
                out.abs_error += std::max(delta, 1e-12 * group_abs);
                out.converged = true;
                return out;
            }
        }
        accel_prev = accel;
        have_prev = true;
        z = hi;
    }
    out.value += accel_prev;
    out.abs_error += group_abs;
    out.converged = false;
    return out;
}

}  // namespace spinreg::quad
