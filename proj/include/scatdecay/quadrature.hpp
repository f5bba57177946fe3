#pragma once

// Adaptive Gauss-Kronrod (G7/K15) with bisection of the worst interval.
// Works for any value type with a QuadTraits specialisation, so several
// integrands sharing one expensive kernel are integrated in one pass.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <algorithm>
#include <utility>
#include <vector>

namespace scatdecay {

template <typename V>
struct QuadTraits;

template <>
struct QuadTraits<double> {
    static double zero() { return 0.0; }
    static double norm(double v) { return std::abs(v); }
};

template <>
struct QuadTraits<std::complex<double>> {
    static std::complex<double> zero() { return {}; }
    static double norm(const std::complex<double>& v) { return std::abs(v); }
};

template <typename E, std::size_t N>
struct QuadTraits<std::array<E, N>> {
    static std::array<E, N> zero() {
        std::array<E, N> z{};
        return z;
    }
    static double norm(const std::array<E, N>& v) {
        double m = 0.0;
        for (const auto& x : v) m = std::max(m, QuadTraits<E>::norm(x));
        return m;
    }
};

namespace detail {

template <typename V>
V axpy(const V& acc, double w, const V& v) {
    if constexpr (requires { acc.size(); }) {
        V r = acc;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += w * v[i];
        return r;
    } else {
        return acc + w * v;
    }
}

template <typename V>
V diff(const V& a, const V& b) {
    return axpy(a, -1.0, b);
}

inline constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace detail

template <typename V>
struct QuadResult {
    V value{};
    double error = 0.0;
    int intervals = 0;
    int evaluations = 0;
    bool converged = false;
};

struct QuadOptions {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    int max_intervals = 2000;
};

template <typename V, typename F>
struct GK15 {
    static void rule(F& f, double a, double b, V& integral, double& err) {
        using T = QuadTraits<V>;
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        const V fc = f(c);
        V kron = detail::axpy(T::zero(), detail::kWk[7], fc);
        V gauss = detail::axpy(T::zero(), detail::kWg[3], fc);
        for (int j = 0; j < 7; ++j) {
            const double dx = h * detail::kXk[j];
            const V f1 = f(c - dx);
            const V f2 = f(c + dx);
            kron = detail::axpy(kron, detail::kWk[j], f1);
            kron = detail::axpy(kron, detail::kWk[j], f2);
            if (j % 2 == 1) {
                gauss = detail::axpy(gauss, detail::kWg[j / 2], f1);
                gauss = detail::axpy(gauss, detail::kWg[j / 2], f2);
            }
        }
        integral = detail::axpy(T::zero(), h, kron);
        err = T::norm(detail::axpy(T::zero(), h, detail::diff(kron, gauss)));
    }
};

// Starts from the panels between consecutive breakpoints (sorted).
template <typename V, typename F>
QuadResult<V> integrate_gk15(F&& f, const std::vector<double>& pts, const QuadOptions& opt = {}) {
    using T = QuadTraits<V>;
    struct Piece {
        double a, b, err;
        V val;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    QuadResult<V> res;
    std::vector<Piece> heap;
    V total = T::zero();
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i + 1] > pts[i])) continue;
        Piece p{pts[i], pts[i + 1], 0.0, T::zero()};
        GK15<V, F>::rule(f, p.a, p.b, p.val, p.err);
        res.evaluations += 15;
        heap.push_back(p);
        std::push_heap(heap.begin(), heap.end());
        total = detail::axpy(total, 1.0, p.val);
        total_err += p.err;
    }
    if (heap.empty()) {
        res.value = T::zero();
        res.converged = true;
        return res;
    }
    int splits = 0;
    while (true) {
        const double tol = std::max(opt.abs_tol, opt.rel_tol * T::norm(total));
        if (total_err <= tol) {
            res.converged = true;
            break;
        }
        if (static_cast<int>(heap.size()) >= opt.max_intervals) break;
        std::pop_heap(heap.begin(), heap.end());
        const Piece worst = heap.back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at machine resolution
            std::push_heap(heap.begin(), heap.end());
            break;
        }
        heap.pop_back();
        Piece left{worst.a, mid, 0.0, T::zero()};
        Piece right{mid, worst.b, 0.0, T::zero()};
        GK15<V, F>::rule(f, left.a, left.b, left.val, left.err);
        GK15<V, F>::rule(f, right.a, right.b, right.val, right.err);
        res.evaluations += 30;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        if (++splits % 32 == 0) {
            // re-add from scratch to keep cancellation noise out of the totals
            total = T::zero();
            total_err = 0.0;
            for (const auto& p : heap) {
                total = detail::axpy(total, 1.0, p.val);
                total_err += p.err;
            }
        } else {
            total = detail::axpy(detail::axpy(detail::axpy(total, -1.0, worst.val), 1.0, left.val), 1.0,
                                 right.val);
            total_err += left.err + right.err - worst.err;
        }
    }
    total = T::zero();
    total_err = 0.0;
    for (const auto& p : heap) {
        total = detail::axpy(total, 1.0, p.val);
        total_err += p.err;
    }
    res.value = total;
    res.error = total_err;
    res.intervals = static_cast<int>(heap.size());
    return res;
}

template <typename V, typename F>
QuadResult<V> integrate_gk15(F&& f, double a, double b, const QuadOptions& opt = {}) {
    return integrate_gk15<V>(std::forward<F>(f), std::vector<double>{a, b}, opt);
}

}  // namespace scatdecay
