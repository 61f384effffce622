#include "weyllab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

namespace weyllab {

void KahanSum::add(double term) {
    double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term))
        comp_ += (sum_ - t) + term;
    else
        comp_ += (term - t) + sum_;
    sum_ = t;
}

namespace {

double simpson_panel(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double fa,
                            double b, double fb, double m, double fm, double whole,
                            double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_panel(a, fa, m, fm, flm);
    double right = simpson_panel(m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double absTol, int maxDepth) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = simpson_panel(a, fa, b, fb, fm);
    return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, absTol, maxDepth);
}

double trapezoid_uniform(const std::function<double(double)>& f, double a, double b,
                         std::size_t n) {
    double h = (b - a) / static_cast<double>(n);
    KahanSum s;
    s.add(0.5 * f(a));
    for (std::size_t i = 1; i < n; ++i) s.add(f(a + h * static_cast<double>(i)));
    s.add(0.5 * f(b));
    return s.value() * h;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 points");
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < n; ++i)
        fit.maxAbsResidual =
            std::max(fit.maxAbsResidual, std::fabs(y[i] - fit.slope * x[i] - fit.intercept));
    return fit;
}

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys, Boundary bc,
                         double d0, double dn)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    const std::size_t n = xs_.size();
    if (n < 3 || ys_.size() != n) throw std::invalid_argument("CubicSpline: bad sizes");
    m_.assign(n, 0.0);
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
    auto h = [&](std::size_t i) { return xs_[i + 1] - xs_[i]; };

    if (bc == Boundary::Periodic) {
        // One fewer unknown (m_0 == m_{n-1}); cyclic tridiagonal via Woodbury.
        const std::size_t m = n - 1;
        std::vector<double> diag(m), sub(m), sup(m), rhs(m);
        for (std::size_t i = 0; i < m; ++i) {
            double hm = (i == 0) ? h(m - 1) : h(i - 1);
            double hp = h(i);
            double ym = (i == 0) ? ys_[m - 1] : ys_[i - 1];
            double yp = ys_[i + 1];
            sub[i] = hm;
            diag[i] = 2.0 * (hm + hp);
            sup[i] = hp;
            rhs[i] = 6.0 * ((yp - ys_[i]) / hp - (ys_[i] - ym) / hm);
        }
        // Woodbury for the two corner entries sub[0], sup[m-1].
        std::vector<double> dd = diag;
        double gamma = -diag[0];
        dd[0] -= gamma;
        dd[m - 1] -= sub[0] * sup[m - 1] / gamma;
        auto solve_tri = [&](std::vector<double> rr) {
            std::vector<double> cp(m), xp(m);
            cp[0] = sup[0] / dd[0];
            rr[0] /= dd[0];
            for (std::size_t i = 1; i < m; ++i) {
                double piv = dd[i] - sub[i] * cp[i - 1];
                cp[i] = (i + 1 < m ? sup[i] : 0.0) / piv;
                rr[i] = (rr[i] - sub[i] * rr[i - 1]) / piv;
            }
            xp[m - 1] = rr[m - 1];
            for (std::size_t i = m - 1; i-- > 0;) xp[i] = rr[i] - cp[i] * xp[i + 1];
            return xp;
        };
        std::vector<double> u(m, 0.0);
        u[0] = gamma;
        u[m - 1] = sup[m - 1];
        std::vector<double> x1 = solve_tri(rhs);
        std::vector<double> x2 = solve_tri(u);
        double vx1 = x1[0] + sub[0] / gamma * x1[m - 1];
        double vx2 = x2[0] + sub[0] / gamma * x2[m - 1];
        double fact = vx1 / (1.0 + vx2);
        for (std::size_t i = 0; i < m; ++i) m_[i] = x1[i] - fact * x2[i];
        m_[n - 1] = m_[0];
        return;
    }

    if (bc == Boundary::Natural) {
        b[0] = 1.0; c[0] = 0.0; r[0] = 0.0;
        a[n - 1] = 0.0; b[n - 1] = 1.0; r[n - 1] = 0.0;
    } else { // Clamped
        b[0] = 2.0 * h(0); c[0] = h(0);
        r[0] = 6.0 * ((ys_[1] - ys_[0]) / h(0) - d0);
        a[n - 1] = h(n - 2); b[n - 1] = 2.0 * h(n - 2);
        r[n - 1] = 6.0 * (dn - (ys_[n - 1] - ys_[n - 2]) / h(n - 2));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        a[i] = h(i - 1);
        b[i] = 2.0 * (h(i - 1) + h(i));
        c[i] = h(i);
        r[i] = 6.0 * ((ys_[i + 1] - ys_[i]) / h(i) - (ys_[i] - ys_[i - 1]) / h(i - 1));
    }
    for (std::size_t i = 1; i < n; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        r[i] -= w * r[i - 1];
    }
    m_[n - 1] = r[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m_[i] = (r[i] - c[i] * m_[i + 1]) / b[i];
}

std::size_t CubicSpline::locate(double x) const {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - xs_.begin())) - 1;
    return std::min(i, xs_.size() - 2);
}

double CubicSpline::operator()(double x) const {
    std::size_t i = locate(x);
    double h = xs_[i + 1] - xs_[i];
    double A = (xs_[i + 1] - x) / h, B = (x - xs_[i]) / h;
    return A * ys_[i] + B * ys_[i + 1] +
           ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
    std::size_t i = locate(x);
    double h = xs_[i + 1] - xs_[i];
    double A = (xs_[i + 1] - x) / h, B = (x - xs_[i]) / h;
    return (ys_[i + 1] - ys_[i]) / h +
           ((1.0 - 3.0 * A * A) * m_[i] + (3.0 * B * B - 1.0) * m_[i + 1]) * h / 6.0;
}

void parallel_for_chunks(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    int t = std::max(1, threads);
    std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(t), n);
    if (nt <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t k = 0; k < nt; ++k) {
        std::size_t b = k * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& th : pool) th.join();
}

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& s, std::uint64_t seed) {
    return fnv1a64(s.data(), s.size(), seed);
}

std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string format_sig(double v, int digits) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

namespace {

struct Mat2 {
    double a[2][2];
};

Vec2 mat_apply(const Block2& m, Vec2 v) {
    return {m.a[0][0] * v.x + m.a[0][1] * v.y, m.a[1][0] * v.x + m.a[1][1] * v.y};
}

} // namespace

std::vector<Vec2> solve_cyclic_block_tridiagonal(std::vector<Block2> sub,
                                                 std::vector<Block2> diag,
                                                 std::vector<Block2> sup,
                                                 std::vector<Vec2> rhs) {
    const std::size_t n = diag.size();
    if (n < 3) throw std::invalid_argument("cyclic block solver: n >= 3 required");

    // Plain block-Thomas for the acyclic part; corner blocks handled by
    // Woodbury with U spanning the first and last block rows.
    auto inv2 = [](const Block2& m) {
        double det = m.a[0][0] * m.a[1][1] - m.a[0][1] * m.a[1][0];
        if (std::fabs(det) < 1e-300) throw std::runtime_error("singular 2x2 block");
        Block2 r;
        r.a[0][0] = m.a[1][1] / det;
        r.a[0][1] = -m.a[0][1] / det;
        r.a[1][0] = -m.a[1][0] / det;
        r.a[1][1] = m.a[0][0] / det;
        return r;
    };
    auto mul = [](const Block2& x, const Block2& y) {
        Block2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.a[i][j] = x.a[i][0] * y.a[0][j] + x.a[i][1] * y.a[1][j];
        return r;
    };

    // Solve T x = b with T the tridiagonal part (sub[0], sup[n-1] dropped),
    // for 2-column right-hand sides packed as pairs of Vec2 columns.
    auto thomas = [&](std::vector<Vec2> b) {
        std::vector<Block2> cp(n);
        std::vector<Vec2> d(n);
        Block2 piv = diag[0];
        Block2 pivInv = inv2(piv);
        cp[0] = mul(pivInv, sup[0]);
        d[0] = mat_apply(pivInv, b[0]);
        for (std::size_t i = 1; i < n; ++i) {
            Block2 m = diag[i];
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    m.a[r][c] -= sub[i].a[r][0] * cp[i - 1].a[0][c] +
                                 sub[i].a[r][1] * cp[i - 1].a[1][c];
            Block2 mInv = inv2(m);
            if (i + 1 < n) cp[i] = mul(mInv, sup[i]);
            Vec2 t = b[i] - mat_apply(sub[i], d[i - 1]);
            d[i] = mat_apply(mInv, t);
        }
        for (std::size_t i = n - 1; i-- > 0;) d[i] = d[i] - mat_apply(cp[i], d[i + 1]);
        return d;
    };

    // A = T + U V^T with U = [e_0 C0 ; e_{n-1} C1] capturing the corners:
    // corner blocks: row 0 gets sub[0] * x_{n-1}, row n-1 gets sup[n-1] * x_0.
    // Build the rank-4 correction explicitly.
    std::vector<Vec2> x0 = thomas(rhs);

    // Columns of U: (row 0, block sub[0]) e_j and (row n-1, block sup[n-1]) e_j.
    std::vector<std::vector<Vec2>> z(4);
    for (int k = 0; k < 4; ++k) {
        std::vector<Vec2> u(n, Vec2{0, 0});
        if (k < 2)
            u[0] = {sub[0].a[0][k], sub[0].a[1][k]};
        else
            u[n - 1] = {sup[n - 1].a[0][k - 2], sup[n - 1].a[1][k - 2]};
        z[k] = thomas(u);
    }
    // V^T x picks x_{n-1} components (for k<2) and x_0 components (k>=2).
    auto vdotx = [&](const std::vector<Vec2>& x, int k) {
        if (k == 0) return x[n - 1].x;
        if (k == 1) return x[n - 1].y;
        if (k == 2) return x[0].x;
        return x[0].y;
    };
    double S[4][4], g[4];
    for (int i = 0; i < 4; ++i) {
        g[i] = vdotx(x0, i);
        for (int j = 0; j < 4; ++j) S[i][j] = (i == j ? 1.0 : 0.0) + vdotx(z[j], i);
    }
    // Solve S w = g (4x4 Gaussian elimination with partial pivoting).
    int perm[4] = {0, 1, 2, 3};
    for (int col = 0; col < 4; ++col) {
        int p = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(S[r][col]) > std::fabs(S[p][col])) p = r;
        if (p != col) {
            for (int c = 0; c < 4; ++c) std::swap(S[col][c], S[p][c]);
            std::swap(g[col], g[p]);
            std::swap(perm[col], perm[p]);
        }
        for (int r = col + 1; r < 4; ++r) {
            double f = S[r][col] / S[col][col];
            for (int c = col; c < 4; ++c) S[r][c] -= f * S[col][c];
            g[r] -= f * g[col];
        }
    }
    double w[4];
    for (int r = 3; r >= 0; --r) {
        double s = g[r];
        for (int c = r + 1; c < 4; ++c) s -= S[r][c] * w[c];
        w[r] = s / S[r][r];
    }
    std::vector<Vec2> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 corr{0, 0};
        for (int k = 0; k < 4; ++k) corr = corr + w[k] * z[k][i];
        x[i] = x0[i] - corr;
    }
    return x;
}

} // namespace weyllab
