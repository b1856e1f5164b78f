#include "homog/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace homog {

namespace {

// G7K15 nodes (abscissa, Gauss weight, Kronrod weight); x0 row plus
// symmetric pairs.
constexpr double kNW[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel evaluate(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double y0 = f(mid);
    double g7 = kNW[0][1] * y0;
    double k15 = kNW[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kNW[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += kNW[i][1] * yi;
        k15 += kNW[i][2] * yi;
    }
    g7 *= half;
    k15 *= half;
    double err = 200.0 * std::fabs(g7 - k15);
    err *= std::fmin(1.0, std::sqrt(err));
    return {a, b, k15, err};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int max_intervals) {
    if (a == b) return 0.0;
    std::priority_queue<Panel> queue;
    Panel whole = evaluate(f, a, b);
    double total = whole.value;
    double total_err = whole.err;
    queue.push(whole);
    int splits = 0;
    while (total_err > std::fmax(abs_tol, rel_tol * std::fabs(total))) {
        if (++splits > max_intervals) throw QuadratureNotConverged();
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = evaluate(f, worst.a, mid);
        Panel right = evaluate(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
    }
    return total;
}

}  // namespace homog
