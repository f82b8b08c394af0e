// simplex.hpp — deterministic Nelder-Mead descent (fixed seed vertices, no RNG)
#pragma once

#include <algorithm>
#include <functional>
#include <vector>

namespace catspec {

struct SimplexOptions {
    int max_evaluations = 100000;
    double tol_spread = 1e-10;  // stop when max-min energy over vertices is below this
    double initial_step = 0.25;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                 const std::vector<double>& x0,
                                 const SimplexOptions& opts = {}) {
    const int n = static_cast<int>(x0.size());
    std::vector<std::vector<double>> verts(n + 1, x0);
    for (int i = 0; i < n; ++i) verts[i + 1][i] += opts.initial_step;
    std::vector<double> vals(n + 1);
    int evals = 0;
    for (int i = 0; i <= n; ++i) {
        vals[i] = f(verts[i]);
        ++evals;
    }
    auto order = [&] {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> v2(n + 1);
        std::vector<double> f2(n + 1);
        for (int i = 0; i <= n; ++i) {
            v2[i] = verts[idx[i]];
            f2[i] = vals[idx[i]];
        }
        verts = std::move(v2);
        vals = std::move(f2);
    };
    order();

    while (evals < opts.max_evaluations) {
        if (vals[n] - vals[0] < opts.tol_spread) {
            return {verts[0], vals[0], evals, true};
        }
        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) centroid[j] += verts[i][j] / n;
        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (int j = 0; j < n; ++j) p[j] = centroid[j] + t * (centroid[j] - verts[n][j]);
            return p;
        };
        auto xr = blend(1.0);
        const double fr = f(xr);
        ++evals;
        if (fr < vals[0]) {
            auto xe = blend(2.0);
            const double fe = f(xe);
            ++evals;
            if (fe < fr) {
                verts[n] = xe;
                vals[n] = fe;
            } else {
                verts[n] = xr;
                vals[n] = fr;
            }
        } else if (fr < vals[n - 1]) {
            verts[n] = xr;
            vals[n] = fr;
        } else {
            auto xc = blend(fr < vals[n] ? 0.5 : -0.5);
            const double fc = f(xc);
            ++evals;
            if (fc < std::min(fr, vals[n])) {
                verts[n] = xc;
                vals[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int j = 0; j < n; ++j)
                        verts[i][j] = verts[0][j] + 0.5 * (verts[i][j] - verts[0][j]);
                    vals[i] = f(verts[i]);
                    ++evals;
                }
            }
        }
        order();
    }
    return {verts[0], vals[0], evals, false};
}

}  // namespace catspec
