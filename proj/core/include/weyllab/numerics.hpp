#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace weyllab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Neumaier-compensated accumulator; deterministic for a fixed add order.
class KahanSum {
public:
    void add(double term);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double absTol, int maxDepth = 52);

/// Composite trapezoid on a uniform grid of n+1 samples over [a,b].
double trapezoid_uniform(const std::function<double(double)>& f, double a, double b,
                         std::size_t n);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double maxAbsResidual = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Cubic spline over a strictly increasing uniform grid.
/// Boundary modes: Clamped fixes f' at both ends, Periodic wraps.
class CubicSpline {
public:
    enum class Boundary { Natural, Clamped, Periodic };

    CubicSpline() = default;
    CubicSpline(std::vector<double> xs, std::vector<double> ys,
                Boundary bc = Boundary::Natural, double d0 = 0.0, double dn = 0.0);

    double operator()(double x) const;
    double derivative(double x) const;
    bool empty() const { return xs_.empty(); }
    double x_front() const { return xs_.front(); }
    double x_back() const { return xs_.back(); }

private:
    std::vector<double> xs_, ys_, m_; // m_: second derivatives at knots
    std::size_t locate(double x) const;
};

/// Runs fn(begin,end) over [0,n) split into contiguous chunks. Results must be
/// written to disjoint slots so output is independent of the thread count.
void parallel_for_chunks(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn);

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed = 1469598103934665603ull);
std::uint64_t fnv1a64(const std::string& s, std::uint64_t seed = 1469598103934665603ull);
std::string to_hex(std::uint64_t v);

/// printf("%.*g") with fixed significant digits; the formatting used by all
/// report writers so byte output is reproducible.
std::string format_sig(double v, int digits = 12);

/// Solves a cyclic block-tridiagonal system with 2x2 blocks via the
/// Sherman-Morrison-Woodbury bordering of the corner blocks.
/// Block rows i: sub[i]*x_{i-1} + diag[i]*x_i + sup[i]*x_{i+1} = rhs_i (indices mod n).
struct Block2 {
    double a[2][2] = {{0, 0}, {0, 0}};
};

std::vector<Vec2> solve_cyclic_block_tridiagonal(std::vector<Block2> sub,
                                                 std::vector<Block2> diag,
                                                 std::vector<Block2> sup,
                                                 std::vector<Vec2> rhs);

} // namespace weyllab
