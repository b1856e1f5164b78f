#include "homog/torus.hpp"

#include <algorithm>
#include <cmath>

namespace homog {

namespace {
bool power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }
}  // namespace

TorusGrid::TorusGrid(int dim, int nodes) : n(dim), N(nodes) {
    if (dim != 1 && dim != 2) throw Error("TorusGrid: dimension must be 1 or 2");
    if (nodes < 16 || !power_of_two(nodes))
        throw Error("TorusGrid: N must be a power of two >= 16");
}

PeriodicField::PeriodicField(TorusGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.node_count())
        throw Error("PeriodicField: value count does not match grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw Error("PeriodicField: non-finite value");
}

double PeriodicField::mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / double(values_.size());
}

double PeriodicField::min() const {
    return *std::min_element(values_.begin(), values_.end());
}

double PeriodicField::max() const {
    return *std::max_element(values_.begin(), values_.end());
}

void fft_radix2(std::vector<double>& re, std::vector<double>& im, int sign) {
    const std::size_t n = re.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) {
            std::swap(re[i], re[j]);
            std::swap(im[i], im[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / double(len);
        const double wr = std::cos(ang), wi = std::sin(ang);
        for (std::size_t i = 0; i < n; i += len) {
            double cr = 1.0, ci = 0.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::size_t a = i + k, b = i + k + len / 2;
                const double tr = re[b] * cr - im[b] * ci;
                const double ti = re[b] * ci + im[b] * cr;
                re[b] = re[a] - tr;
                im[b] = im[a] - ti;
                re[a] += tr;
                im[a] += ti;
                const double ncr = cr * wr - ci * wi;
                ci = cr * wi + ci * wr;
                cr = ncr;
            }
        }
    }
}

namespace {

// Spectral derivative of one periodic line of length N.
void spectral_diff_line(std::vector<double>& line) {
    const std::size_t N = line.size();
    std::vector<double> re = line, im(N, 0.0);
    fft_radix2(re, im, -1);
    for (std::size_t k = 0; k < N; ++k) {
        double freq = (k <= N / 2) ? double(k) : double(k) - double(N);
        if (k == N / 2) freq = 0.0;  // Nyquist mode has no odd derivative
        const double w = 2.0 * M_PI * freq;
        const double r = re[k], i = im[k];
        re[k] = -w * i;
        im[k] = w * r;
    }
    fft_radix2(re, im, +1);
    for (std::size_t k = 0; k < N; ++k) line[k] = re[k] / double(N);
}

}  // namespace

std::vector<double> PeriodicField::differentiate(int axis, DiffScheme scheme) const {
    const int N = grid_.N;
    std::vector<double> out(values_.size());
    if (scheme == DiffScheme::Centered) {
        const double inv2h = 0.5 * N;
        if (grid_.n == 1) {
            for (int i = 0; i < N; ++i)
                out[i] = (values_[(i + 1) % N] - values_[(i + N - 1) % N]) * inv2h;
        } else {
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    std::size_t up, dn;
                    if (axis == 0) {
                        up = grid_.index((i + 1) % N, j);
                        dn = grid_.index((i + N - 1) % N, j);
                    } else {
                        up = grid_.index(i, (j + 1) % N);
                        dn = grid_.index(i, (j + N - 1) % N);
                    }
                    out[grid_.index(i, j)] = (values_[up] - values_[dn]) * inv2h;
                }
        }
        return out;
    }
    if (grid_.n == 1) {
        std::vector<double> line = values_;
        spectral_diff_line(line);
        return line;
    }
    std::vector<double> line(N);
    for (int fixed = 0; fixed < N; ++fixed) {
        for (int t = 0; t < N; ++t)
            line[t] = axis == 0 ? values_[grid_.index(t, fixed)]
                                : values_[grid_.index(fixed, t)];
        spectral_diff_line(line);
        for (int t = 0; t < N; ++t)
            out[axis == 0 ? grid_.index(t, fixed) : grid_.index(fixed, t)] = line[t];
    }
    return out;
}

namespace {

// Catmull-Rom weights for local coordinate t in [0,1).
inline void catmull_rom(double t, double w[4], double dw[4]) {
    const double t2 = t * t, t3 = t2 * t;
    w[0] = 0.5 * (-t3 + 2 * t2 - t);
    w[1] = 0.5 * (3 * t3 - 5 * t2 + 2);
    w[2] = 0.5 * (-3 * t3 + 4 * t2 + t);
    w[3] = 0.5 * (t3 - t2);
    dw[0] = 0.5 * (-3 * t2 + 4 * t - 1);
    dw[1] = 0.5 * (9 * t2 - 10 * t);
    dw[2] = 0.5 * (-9 * t2 + 8 * t + 1);
    dw[3] = 0.5 * (3 * t2 - 2 * t);
}

}  // namespace

double PeriodicField::interpolate(const Vec& q) const {
    const int N = grid_.N;
    if (grid_.n == 1) {
        const double x = fold01(q[0]) * N;
        const int i = int(std::floor(x));
        double w[4], dw[4];
        catmull_rom(x - i, w, dw);
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += w[k] * values_[(i + k - 1 + N) % N];
        return s;
    }
    const double x = fold01(q[0]) * N, y = fold01(q[1]) * N;
    const int i = int(std::floor(x)), j = int(std::floor(y));
    double wx[4], wy[4], d[4];
    catmull_rom(x - i, wx, d);
    catmull_rom(y - j, wy, d);
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            s += wx[a] * wy[b] *
                 values_[grid_.index((i + a - 1 + N) % N, (j + b - 1 + N) % N)];
    return s;
}

Vec PeriodicField::interpolate_gradient(const Vec& q) const {
    const int N = grid_.N;
    if (grid_.n == 1) {
        const double x = fold01(q[0]) * N;
        const int i = int(std::floor(x));
        double w[4], dw[4];
        catmull_rom(x - i, w, dw);
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += dw[k] * values_[(i + k - 1 + N) % N];
        return Vec(s * N);
    }
    const double x = fold01(q[0]) * N, y = fold01(q[1]) * N;
    const int i = int(std::floor(x)), j = int(std::floor(y));
    double wx[4], wy[4], dwx[4], dwy[4];
    catmull_rom(x - i, wx, dwx);
    catmull_rom(y - j, wy, dwy);
    double gx = 0.0, gy = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const double v =
                values_[grid_.index((i + a - 1 + N) % N, (j + b - 1 + N) % N)];
            gx += dwx[a] * wy[b] * v;
            gy += wx[a] * dwy[b] * v;
        }
    return Vec(gx * N, gy * N);
}

}  // namespace homog
