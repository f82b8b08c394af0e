#include "catspec/tridiag_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "catspec/errors.hpp"

namespace catspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pivmin_for(const TridiagonalHamiltonian& h) {
    double emax2 = 1.0;
    for (double e : h.offdiag) emax2 = std::max(emax2, e * e);
    return std::numeric_limits<double>::min() * emax2;
}

int sturm_count_impl(const TridiagonalHamiltonian& h, double x, double pivmin) {
    const auto& d = h.diag;
    const auto& e = h.offdiag;
    int count = 0;
    double q = d[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (q > -pivmin && q < pivmin) q = -pivmin;
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

// LU factors of (T - sigma I) with partial pivoting; fill-in second superdiagonal.
struct TriLU {
    std::vector<double> dl, d, du, du2;
    std::vector<int> pivoted;  // 1 if rows i, i+1 were swapped
};

TriLU factor_shifted(const TridiagonalHamiltonian& h, double sigma) {
    const int n = h.dim();
    TriLU f;
    f.d.resize(n);
    f.dl.assign(std::max(n - 1, 0), 0.0);
    f.du.assign(std::max(n - 1, 0), 0.0);
    f.du2.assign(std::max(n - 2, 0), 0.0);
    f.pivoted.assign(std::max(n - 1, 0), 0);
    for (int i = 0; i < n; ++i) f.d[i] = h.diag[i] - sigma;
    for (int i = 0; i + 1 < n; ++i) {
        f.dl[i] = h.offdiag[i];
        f.du[i] = h.offdiag[i];
    }
    // keep the factorization nonsingular when sigma is an exact eigenvalue
    const double floor_piv =
        kEps * std::max({std::abs(sigma), 1e-300, std::abs(h.diag[0])});
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(f.d[i]) >= std::abs(f.dl[i])) {
            if (std::abs(f.d[i]) < floor_piv) f.d[i] = (f.d[i] < 0 ? -floor_piv : floor_piv);
            const double m = f.dl[i] / f.d[i];
            f.dl[i] = m;  // store multiplier
            f.d[i + 1] -= m * f.du[i];
        } else {
            // swap rows i and i+1
            f.pivoted[i] = 1;
            const double m = f.d[i] / f.dl[i];
            f.d[i] = f.dl[i];
            f.dl[i] = m;
            const double tmp = f.d[i + 1];
            f.d[i + 1] = f.du[i] - m * tmp;
            if (i + 2 < n) {
                f.du2[i] = f.du[i + 1];
                f.du[i + 1] = -m * f.du[i + 1];
            }
            f.du[i] = tmp;
        }
    }
    if (std::abs(f.d[n - 1]) < floor_piv)
        f.d[n - 1] = (f.d[n - 1] < 0 ? -floor_piv : floor_piv);
    return f;
}

void solve_factored(const TriLU& f, std::vector<double>& b) {
    const int n = static_cast<int>(f.d.size());
    for (int i = 0; i + 1 < n; ++i) {
        if (f.pivoted[i]) std::swap(b[i], b[i + 1]);
        b[i + 1] -= f.dl[i] * b[i];
    }
    b[n - 1] /= f.d[n - 1];
    if (n >= 2) {
        b[n - 2] = (b[n - 2] - f.du[n - 2] * b[n - 1]) / f.d[n - 2];
        for (int i = n - 3; i >= 0; --i) {
            double x = b[i] - f.du[i] * b[i + 1];
            if (i < n - 2) x -= f.du2[i] * b[i + 2];
            b[i] = x / f.d[i];
        }
    }
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void matvec(const TridiagonalHamiltonian& h, const std::vector<double>& x,
            std::vector<double>& y) {
    const int n = h.dim();
    for (int i = 0; i < n; ++i) {
        double s = h.diag[i] * x[i];
        if (i > 0) s += h.offdiag[i - 1] * x[i - 1];
        if (i + 1 < n) s += h.offdiag[i] * x[i + 1];
        y[i] = s;
    }
}

}  // namespace

void gershgorin_bounds(const TridiagonalHamiltonian& h, double& lo, double& hi) {
    const int n = h.dim();
    lo = std::numeric_limits<double>::max();
    hi = std::numeric_limits<double>::lowest();
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(h.offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(h.offdiag[i]);
        lo = std::min(lo, h.diag[i] - r);
        hi = std::max(hi, h.diag[i] + r);
    }
    const double pad = kEps * std::max(std::abs(lo), std::abs(hi)) + 2.0 * pivmin_for(h);
    lo -= pad;
    hi += pad;
}

int sturm_count(const TridiagonalHamiltonian& h, double x) {
    return sturm_count_impl(h, x, pivmin_for(h));
}

double eigenvalue_by_index(const TridiagonalHamiltonian& h, int k) {
    const int n = h.dim();
    if (k < 0 || k >= n) throw std::out_of_range("eigenvalue_by_index: bad index");
    const double pivmin = pivmin_for(h);
    double lo, hi;
    gershgorin_bounds(h, lo, hi);
    // bisect to the representable limit: identical search paths for
    // unresolvably close eigenvalues yield identical doubles
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count_impl(h, mid, pivmin) <= k)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> eigenvalues_by_index_range(const TridiagonalHamiltonian& h, int k0, int k1) {
    std::vector<double> out;
    out.reserve(k1 - k0 + 1);
    for (int k = k0; k <= k1; ++k) out.push_back(eigenvalue_by_index(h, k));
    if (!std::is_sorted(out.begin(), out.end()))
        throw SolverError("bisection returned out-of-order eigenvalues");
    return out;
}

std::vector<double> eigenvalues_ql(const TridiagonalHamiltonian& h) {
    // implicit-shift QL on a working copy (EISPACK tql1 lineage)
    const int n = h.dim();
    std::vector<double> d = h.diag;
    std::vector<double> e(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) e[i] = h.offdiag[i];
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50) throw SolverError("QL: no convergence after 50 iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflowed = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflowed = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (underflowed) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<std::vector<double>> inverse_iteration_vectors(const TridiagonalHamiltonian& h,
                                                           const std::vector<double>& eigenvalues,
                                                           double cluster_tol) {
    const int n = h.dim();
    const int k = static_cast<int>(eigenvalues.size());
    std::vector<std::vector<double>> vecs(k, std::vector<double>(n));
    double anorm = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = std::abs(h.diag[i]);
        if (i > 0) r += std::abs(h.offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(h.offdiag[i]);
        anorm = std::max(anorm, r);
    }
    anorm = std::max(anorm, 1e-300);

    // deterministic quasi-random start vector (no RNG anywhere)
    constexpr double kGolden = 0.6180339887498949;
    std::vector<double> work(n), hv(n);

    int cluster_begin = 0;
    for (int j = 0; j < k; ++j) {
        if (j > 0 && eigenvalues[j] - eigenvalues[j - 1] > cluster_tol) cluster_begin = j;
        const double sigma = eigenvalues[j];
        const TriLU lu = factor_shifted(h, sigma);

        for (int i = 0; i < n; ++i) {
            const double t = (i + 1. + 17. * (j - cluster_begin)) * kGolden;
            work[i] = (t - std::floor(t)) - 0.5;
        }
        double nrm = norm2(work);
        for (auto& x : work) x /= nrm;

        bool converged = false;
        int it = 0;
        for (; it < 12 && !converged; ++it) {
            solve_factored(lu, work);
            // project out earlier members of the same cluster
            for (int p = cluster_begin; p < j; ++p) {
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += work[i] * vecs[p][i];
                for (int i = 0; i < n; ++i) work[i] -= dot * vecs[p][i];
            }
            nrm = norm2(work);
            if (nrm == 0.0 || !std::isfinite(nrm)) {
                // restart from a shifted deterministic vector
                for (int i = 0; i < n; ++i) {
                    const double t = (i + 3.0 + 29.0 * it) * kGolden;
                    work[i] = (t - std::floor(t)) - 0.5;
                }
                nrm = norm2(work);
            }
            for (auto& x : work) x /= nrm;
            matvec(h, work, hv);
            double res = 0.0;
            for (int i = 0; i < n; ++i) {
                const double r = hv[i] - sigma * work[i];
                res += r * r;
            }
            res = std::sqrt(res);
            converged = res <= 100.0 * kEps * anorm;
        }
        if (!converged) {
            std::ostringstream os;
            os << "inverse iteration failed for eigenvalue index " << j << " after " << it
               << " iterations";
            throw SolverError(os.str());
        }
        vecs[j] = work;
    }
    return vecs;
}

}  // namespace catspec
