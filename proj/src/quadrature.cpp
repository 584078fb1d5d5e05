#include "lewisper/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "lewisper/errors.hpp"

namespace lewisper {
namespace quadrature {

namespace {

Rule build_gauss_legendre(int n) {
    // Newton iteration on Legendre polynomials; standard construction.
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
    static std::map<int, Rule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return it->second;
}

cplx gl_integrate(const std::function<cplx(double)>& f, double a, double b, int n) {
    const Rule& r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return half * acc;
}

namespace {

// Standard G7/K15 nodes and weights.
const double kron_x[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                          0.741531185599394, 0.586087235467691, 0.405845151377397,
                          0.207784955007898, 0.0};
const double kron_w[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                          0.140653259715525, 0.169004726639267, 0.190350578064785,
                          0.204432940075298, 0.209482141084728};
const double gauss_w[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

void gk15(const std::function<cplx(double)>& f, double a, double b, cplx& kron,
          double& err) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - half * kron_x[i]);
        fv[14 - i] = f(mid + half * kron_x[i]);
    }
    fv[7] = f(mid);
    cplx k = 0.0, g = 0.0;
    for (int i = 0; i < 7; ++i) k += kron_w[i] * (fv[i] + fv[14 - i]);
    k += kron_w[7] * fv[7];
    for (int i = 0; i < 3; ++i) g += gauss_w[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    g += gauss_w[3] * fv[7];
    kron = half * k;
    err = std::abs(half * (k - g));
}

cplx adaptive_impl(const std::function<cplx(double)>& f, double a, double b, double tol,
                   int depth) {
    cplx k;
    double err;
    gk15(f, a, b, k, err);
    if (err < tol || depth <= 0) return k;
    const double mid = 0.5 * (a + b);
    return adaptive_impl(f, a, mid, tol * 0.5, depth - 1) +
           adaptive_impl(f, mid, b, tol * 0.5, depth - 1);
}

}  // namespace

cplx adaptive(const std::function<cplx(double)>& f, double a, double b, double tol,
              int max_depth) {
    return adaptive_impl(f, a, b, tol, max_depth);
}

cplx adaptive_to_inf(const std::function<cplx(double)>& f, double a, double tol,
                     double first_width) {
    cplx total = 0.0;
    double left = a, width = first_width;
    int quiet = 0;
    for (int panel = 0; panel < 200; ++panel) {
        cplx part = adaptive(f, left, left + width, tol * 0.25);
        total += part;
        quiet = std::abs(part) < tol ? quiet + 1 : 0;
        if (quiet >= 2) break;
        left += width;
        width *= 1.6;
    }
    return total;
}

cplx fourier_line(const std::function<cplx(double)>& g, double center, double omega,
                  double tol) {
    if (omega == 0.0) throw DomainError("fourier_line: omega must be nonzero");
    const double half = pi / std::abs(omega);  // half period: phase flips sign
    auto integrand = [&](double t) { return g(t) * std::exp(cplx(0.0, omega * t)); };
    const int central_halves = 8;
    cplx total = adaptive(integrand, center - central_halves * half,
                          center + central_halves * half, tol * 0.1);
    // Alternating half-period panels outward, Euler-transformed.
    for (int side = 0; side < 2; ++side) {
        const double sgn = side == 0 ? 1.0 : -1.0;
        const int m = 28;
        std::vector<cplx> q(m);
        for (int j = 0; j < m; ++j) {
            double lo = center + sgn * (central_halves + j) * half;
            double hi = lo + sgn * half;
            cplx panel = adaptive(integrand, std::min(lo, hi), std::max(lo, hi), tol * 0.05);
            // Store with alternation removed: panels alternate in sign exactly.
            q[j] = ((j % 2 == 0) ? 1.0 : -1.0) * panel;
        }
        // Euler transform: sum_j (-1)^j q_j = sum_i (-1)^i Delta^i q_0 / 2^{i+1}.
        cplx accel = 0.0;
        std::vector<cplx> row = q;
        for (int i = 0; i < m; ++i) {
            accel += ((i % 2 == 0) ? 1.0 : -1.0) * row[0] / std::pow(2.0, i + 1);
            for (size_t j = 0; j + 1 < row.size(); ++j) row[j] = row[j + 1] - row[j];
            row.pop_back();
            if (row.empty()) break;
        }
        total += accel;
    }
    return total;
}

}  // namespace quadrature
}  // namespace lewisper
