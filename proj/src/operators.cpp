#include "mixnorm/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mixnorm/numeric.hpp"

namespace mixnorm {

namespace {

void require_depth0(const StepFunction& f, const char* who) {
    if (f.depth() != 0) throw std::invalid_argument(std::string(who) + ": depth-0 input expected");
}

// Summed-area table of |f|: sat[idx] = sum of |f| over cells < idx
// entrywise, with one layer of padding so box sums are pure lookups.
class BoxSums {
public:
    explicit BoxSums(const StepFunction& f) : n_(f.dim()), M_(f.cells_per_axis()) {
        std::array<std::int64_t, 3> dims{1, 1, 1};
        for (int axis = 0; axis < n_; ++axis) dims[static_cast<size_t>(axis)] = M_ + 1;
        stride_ = {1, 1, 1};
        for (int axis = n_ - 2; axis >= 0; --axis)
            stride_[static_cast<size_t>(axis)] =
                stride_[static_cast<size_t>(axis + 1)] * dims[static_cast<size_t>(axis + 1)];
        std::int64_t total = 1;
        for (int axis = 0; axis < n_; ++axis) total *= dims[static_cast<size_t>(axis)];
        sat_.assign(static_cast<size_t>(total), 0.0);

        std::array<std::int64_t, 3> idx{0, 0, 0};
        const auto walk = [&](auto&& self, int axis) -> void {
            if (axis == n_) {
                double s = std::fabs(f[f.flat_index(idx)]);
                // inclusion-exclusion over the already-filled lower corners
                for (std::uint32_t mask = 1; mask < (1u << n_); ++mask) {
                    std::int64_t at = 0;
                    int bits = 0;
                    for (int ax = 0; ax < n_; ++ax) {
                        std::int64_t c = idx[static_cast<size_t>(ax)] + 1;
                        if (mask & (1u << ax)) {
                            --c;
                            ++bits;
                        }
                        at += c * stride_[static_cast<size_t>(ax)];
                    }
                    s += (bits % 2 ? 1.0 : -1.0) * sat_[static_cast<size_t>(at)];
                }
                std::int64_t at = 0;
                for (int ax = 0; ax < n_; ++ax)
                    at += (idx[static_cast<size_t>(ax)] + 1) * stride_[static_cast<size_t>(ax)];
                sat_[static_cast<size_t>(at)] = s;
                return;
            }
            for (idx[static_cast<size_t>(axis)] = 0; idx[static_cast<size_t>(axis)] < M_;
                 ++idx[static_cast<size_t>(axis)])
                self(self, axis + 1);
        };
        walk(walk, 0);
    }

    // Sum of |f| over the half-open cell box.
    double box(const CellBox& b) const {
        double s = 0.0;
        for (std::uint32_t mask = 0; mask < (1u << n_); ++mask) {
            std::int64_t at = 0;
            int bits = 0;
            for (int ax = 0; ax < n_; ++ax) {
                std::int64_t c = b.hi[static_cast<size_t>(ax)];
                if (mask & (1u << ax)) {
                    c = b.lo[static_cast<size_t>(ax)];
                    ++bits;
                }
                at += c * stride_[static_cast<size_t>(ax)];
            }
            s += (bits % 2 ? -1.0 : 1.0) * sat_[static_cast<size_t>(at)];
        }
        return s;
    }

private:
    int n_;
    std::int64_t M_;
    std::array<std::int64_t, 3> stride_;
    std::vector<double> sat_;
};

void max_into_box(StepFunction& out, const CellBox& box, double value) {
    std::array<std::int64_t, 3> idx{0, 0, 0};
    const auto walk = [&](auto&& self, int axis) -> void {
        if (axis == out.dim()) {
            double& slot = out[out.flat_index(idx)];
            slot = std::max(slot, value);
            return;
        }
        for (idx[static_cast<size_t>(axis)] = box.lo[static_cast<size_t>(axis)];
             idx[static_cast<size_t>(axis)] < box.hi[static_cast<size_t>(axis)];
             ++idx[static_cast<size_t>(axis)])
            self(self, axis + 1);
    };
    walk(walk, 0);
}

}  // namespace

StepFunction cond_expect(const StepFunction& f, int k) {
    require_depth0(f, "cond_expect");
    if (k >= f.resolution()) return f;
    const int K_new = std::max(f.window_level(), -k);
    StepFunction g = extend_window(f, K_new);
    const int span_log = g.resolution() - k;
    const std::int64_t span = std::int64_t{1} << span_log;
    const double inv_count = std::ldexp(1.0, -span_log * g.dim());
    StepFunction out(g.dim(), g.resolution(), g.window_level(), 0);
    out.set_approximate(g.approximate());

    const std::int64_t blocks = g.cells_per_axis() >> span_log;
    std::array<std::int64_t, 3> b{0, 0, 0};
    std::vector<double> scratch;
    const auto walk = [&](auto&& self, int axis) -> void {
        if (axis == g.dim()) {
            scratch.clear();
            CellBox box;
            for (int ax = 0; ax < g.dim(); ++ax) {
                box.lo[static_cast<size_t>(ax)] = b[static_cast<size_t>(ax)] * span;
                box.hi[static_cast<size_t>(ax)] = box.lo[static_cast<size_t>(ax)] + span;
            }
            std::array<std::int64_t, 3> idx{0, 0, 0};
            const auto gather = [&](auto&& inner, int ax) -> void {
                if (ax == g.dim()) {
                    scratch.push_back(g[g.flat_index(idx)]);
                    return;
                }
                for (idx[static_cast<size_t>(ax)] = box.lo[static_cast<size_t>(ax)];
                     idx[static_cast<size_t>(ax)] < box.hi[static_cast<size_t>(ax)];
                     ++idx[static_cast<size_t>(ax)])
                    inner(inner, ax + 1);
            };
            gather(gather, 0);
            const double avg = pairwise_sum(scratch) * inv_count;
            std::array<std::int64_t, 3> idx2{0, 0, 0};
            const auto fill = [&](auto&& inner, int ax) -> void {
                if (ax == g.dim()) {
                    out[out.flat_index(idx2)] = avg;
                    return;
                }
                for (idx2[static_cast<size_t>(ax)] = box.lo[static_cast<size_t>(ax)];
                     idx2[static_cast<size_t>(ax)] < box.hi[static_cast<size_t>(ax)];
                     ++idx2[static_cast<size_t>(ax)])
                    inner(inner, ax + 1);
            };
            fill(fill, 0);
            return;
        }
        for (b[static_cast<size_t>(axis)] = 0; b[static_cast<size_t>(axis)] < blocks;
             ++b[static_cast<size_t>(axis)])
            self(self, axis + 1);
    };
    walk(walk, 0);
    return out;
}

StepFunction doob_maximal(const StepFunction& f) {
    require_depth0(f, "doob_maximal");
    StepFunction out = f;  // the level-J expectation is f itself
    for (int k = f.resolution() - 1; k >= -f.window_level(); --k) {
        const StepFunction ek = cond_expect(f, k);
        for (std::int64_t i = 0; i < out.total_cells(); ++i) out[i] = std::max(out[i], ek[i]);
    }
    return out;
}

StepFunction dyadic_maximal_shifted(const StepFunction& f, const GridShift& shift) {
    const StepFunction g = f.depth() == 0 ? refine_third(f) : f;
    const int n = g.dim();
    const int J = g.resolution();
    const int K = g.window_level();
    const BoxSums sums(g);
    const double cell_vol = g.cell_volume();

    StepFunction out(n, J, K, 1);
    out.set_approximate(g.approximate());
    for (int level = -K - 2; level <= J; ++level) {
        const double inv_vol = std::exp2(static_cast<double>(level) * n);  // 1 / |Q|
        for (const auto& q : cubes_intersecting_window(n, level, K, shift)) {
            const CellBox box = cell_box(g, q);
            bool empty = false;
            for (int ax = 0; ax < n; ++ax)
                empty = empty ||
                        box.hi[static_cast<size_t>(ax)] <= box.lo[static_cast<size_t>(ax)];
            if (empty) continue;
            const double avg = sums.box(box) * cell_vol * inv_vol;
            max_into_box(out, box, avg);
        }
    }
    return out;
}

StepFunction hl_maximal_lower(const StepFunction& f) {
    const int n = f.dim();
    StepFunction out(n, f.resolution(), f.window_level(), 1);
    out.set_approximate(f.approximate());
    const int shifts = n == 1 ? 3 : (n == 2 ? 9 : 27);
    for (int code = 0; code < shifts; ++code) {
        GridShift shift{0, 0, 0};
        int rem = code;
        for (int ax = 0; ax < n; ++ax) {
            shift[static_cast<size_t>(ax)] = rem % 3;
            rem /= 3;
        }
        const StepFunction m = dyadic_maximal_shifted(f, shift);
        for (std::int64_t i = 0; i < out.total_cells(); ++i) out[i] = std::max(out[i], m[i]);
    }
    return out;
}

StepFunction maximal_1d_grid(const StepFunction& f, int axis) {
    if (axis < 0 || axis >= f.dim()) throw std::invalid_argument("maximal_1d_grid: bad axis");
    const std::int64_t M = f.cells_per_axis();
    StepFunction out(f.dim(), f.resolution(), f.window_level(), f.depth());
    out.set_approximate(f.approximate());

    // iterate over all lines along `axis`
    const std::int64_t line_stride = f.stride(axis);
    std::vector<double> prefix(static_cast<size_t>(M) + 1, 0.0);
    std::array<std::int64_t, 3> idx{0, 0, 0};
    const auto walk = [&](auto&& self, int ax) -> void {
        if (ax == f.dim()) {
            const std::int64_t base = f.flat_index(idx);
            for (std::int64_t i = 0; i < M; ++i)
                prefix[static_cast<size_t>(i) + 1] =
                    prefix[static_cast<size_t>(i)] + std::fabs(f[base + i * line_stride]);
            for (std::int64_t i = 0; i < M; ++i) {
                double best = 0.0;
                for (std::int64_t a = 0; a <= i; ++a)
                    for (std::int64_t b = i + 1; b <= M; ++b) {
                        const double avg = (prefix[static_cast<size_t>(b)] -
                                            prefix[static_cast<size_t>(a)]) /
                                           static_cast<double>(b - a);
                        best = std::max(best, avg);
                    }
                out[base + i * line_stride] = best;
            }
            return;
        }
        if (ax == axis) {
            idx[static_cast<size_t>(ax)] = 0;
            self(self, ax + 1);
            return;
        }
        for (idx[static_cast<size_t>(ax)] = 0; idx[static_cast<size_t>(ax)] < M;
             ++idx[static_cast<size_t>(ax)])
            self(self, ax + 1);
    };
    walk(walk, 0);
    return out;
}

StepFunction iterated_maximal_grid(const StepFunction& f) {
    StepFunction g = f;
    for (double& x : g.values()) x = std::fabs(x);
    for (int axis = 0; axis < f.dim(); ++axis) g = maximal_1d_grid(g, axis);
    return g;
}

StepFunction frac_integral(const StepFunction& f, double alpha) {
    const int n = f.dim();
    if (!(alpha > 0.0) || !(alpha < n))
        throw std::invalid_argument("frac_integral: need 0 < alpha < n");
    const double h = f.cell_width();
    const std::int64_t M = f.cells_per_axis();
    StepFunction out(n, f.resolution(), f.window_level(), f.depth());
    out.set_approximate(f.approximate());

    if (n == 1) {
        // Exact: integral of |x-y|^{alpha-1} over cell c against center x_i
        // depends only on |i-c|.
        const double ha = std::pow(h, alpha) / alpha;
        std::vector<double> kernel(static_cast<size_t>(M));
        kernel[0] = 2.0 * std::pow(0.5, alpha) * ha;
        for (std::int64_t d = 1; d < M; ++d)
            kernel[static_cast<size_t>(d)] =
                (std::pow(d + 0.5, alpha) - std::pow(d - 0.5, alpha)) * ha;
        for (std::int64_t i = 0; i < M; ++i) {
            double acc = 0.0;
            for (std::int64_t c = 0; c < M; ++c)
                acc += f[c] * kernel[static_cast<size_t>(std::llabs(i - c))];
            out[i] = acc;
        }
        return out;
    }

    // Midpoint rule per source cell; the singular (self) cell integrates the
    // radial kernel over the ball of the same volume centered at the target.
    const double hn = std::pow(h, n);
    const double sphere_area = n == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
    const double ball_vol = n == 2 ? std::numbers::pi : 4.0 * std::numbers::pi / 3.0;
    const double rho = std::pow(hn / ball_vol, 1.0 / n);
    const double self_term = sphere_area * std::pow(rho, alpha) / alpha;

    for (std::int64_t i = 0; i < out.total_cells(); ++i) {
        const auto xi = out.cell_center(i);
        double acc = 0.0;
        for (std::int64_t c = 0; c < f.total_cells(); ++c) {
            if (c == i) {
                acc += f[c] * self_term;
                continue;
            }
            const auto yc = f.cell_center(c);
            double dist2 = 0.0;
            for (int ax = 0; ax < n; ++ax) {
                const double dx = xi[static_cast<size_t>(ax)] - yc[static_cast<size_t>(ax)];
                dist2 += dx * dx;
            }
            acc += f[c] * hn * std::pow(std::sqrt(dist2), alpha - n);
        }
        out[i] = acc;
    }
    out.set_approximate(true);
    return out;
}

StepFunction singular_apply(const StepFunction& f, const SingularOp& op) {
    const int n = f.dim();
    const std::int64_t M = f.cells_per_axis();
    StepFunction out(n, f.resolution(), f.window_level(), f.depth());
    out.set_approximate(f.approximate());

    if (op.kernel == SingularKernel::Hilbert1D) {
        if (n != 1) throw std::invalid_argument("singular_apply: Hilbert1D needs n = 1");
        // (1/pi) sum_c v_c log|x - a_c|/|x - b_c| at cell centers; the cell
        // width cancels in the ratio and the self term vanishes by symmetry.
        std::vector<double> kernel(static_cast<size_t>(M), 0.0);
        for (std::int64_t d = 1; d < M; ++d)
            kernel[static_cast<size_t>(d)] =
                std::log((d + 0.5) / (d - 0.5)) / std::numbers::pi;
        for (std::int64_t i = 0; i < M; ++i) {
            double acc = 0.0;
            for (std::int64_t c = 0; c < M; ++c) {
                const std::int64_t d = i - c;
                if (d > 0)
                    acc += f[c] * kernel[static_cast<size_t>(d)];
                else if (d < 0)
                    acc -= f[c] * kernel[static_cast<size_t>(-d)];
            }
            out[i] = acc;
        }
        return out;
    }

    if (op.axis < 0 || op.axis >= n) throw std::invalid_argument("singular_apply: bad axis");
    if (!(op.epsilon > 0.0))
        throw std::invalid_argument("singular_apply: TruncatedRiesz needs epsilon > 0");
    const double hn = std::pow(f.cell_width(), n);
    const double norm_const =
        n == 1 ? 1.0 / std::numbers::pi
               : (n == 2 ? 1.0 / (2.0 * std::numbers::pi)
                         : 1.0 / (std::numbers::pi * std::numbers::pi));
    for (std::int64_t i = 0; i < out.total_cells(); ++i) {
        const auto xi = out.cell_center(i);
        double acc = 0.0;
        for (std::int64_t c = 0; c < f.total_cells(); ++c) {
            const auto yc = f.cell_center(c);
            double dist2 = 0.0;
            for (int ax = 0; ax < n; ++ax) {
                const double dx = xi[static_cast<size_t>(ax)] - yc[static_cast<size_t>(ax)];
                dist2 += dx * dx;
            }
            const double dist = std::sqrt(dist2);
            if (dist <= op.epsilon) continue;
            const double numer = xi[static_cast<size_t>(op.axis)] - yc[static_cast<size_t>(op.axis)];
            acc += f[c] * hn * numer / std::pow(dist, n + 1);
        }
        out[i] = norm_const * acc;
    }
    out.set_approximate(true);
    return out;
}

StepFunction convolve_project(const StepFunction& f, const StepFunction& g) {
    if (!f.same_grid(g)) throw std::invalid_argument("convolve_project: inputs must share a grid");
    require_depth0(f, "convolve_project");
    const int n = f.dim();
    const std::int64_t M = f.cells_per_axis();
    const double h = f.cell_width();

    // Discrete convolution of the value arrays: S[m] = sum_{a+b=m} f_a g_b.
    const std::int64_t MS = 2 * M - 1;
    std::int64_t s_total = 1;
    for (int ax = 0; ax < n; ++ax) s_total *= MS;
    std::vector<double> S(static_cast<size_t>(s_total), 0.0);
    std::array<std::int64_t, 3> s_stride{1, 1, 1};
    for (int ax = n - 2; ax >= 0; --ax)
        s_stride[static_cast<size_t>(ax)] = s_stride[static_cast<size_t>(ax + 1)] * MS;

    std::array<std::int64_t, 3> ia{0, 0, 0}, ib{0, 0, 0};
    const auto loop_b = [&](auto&& self, int ax) -> void {
        if (ax == n) {
            std::int64_t at = 0;
            for (int k = 0; k < n; ++k)
                at += (ia[static_cast<size_t>(k)] + ib[static_cast<size_t>(k)]) *
                      s_stride[static_cast<size_t>(k)];
            S[static_cast<size_t>(at)] += f[f.flat_index(ia)] * g[g.flat_index(ib)];
            return;
        }
        for (ib[static_cast<size_t>(ax)] = 0; ib[static_cast<size_t>(ax)] < M;
             ++ib[static_cast<size_t>(ax)])
            self(self, ax + 1);
    };
    const auto loop_a = [&](auto&& self, int ax) -> void {
        if (ax == n) {
            loop_b(loop_b, 0);
            return;
        }
        for (ia[static_cast<size_t>(ax)] = 0; ia[static_cast<size_t>(ax)] < M;
             ++ia[static_cast<size_t>(ax)])
            self(self, ax + 1);
    };
    loop_a(loop_a, 0);

    // Each source pair spreads over offsets {0,1}^n with per-axis tent
    // weight h^2/2, so the projected cell average picks up (h/2)^n per
    // neighboring S entry.
    StepFunction out(n, f.resolution(), f.window_level() + 1, 0);
    out.set_approximate(f.approximate() || g.approximate());
    const double scale = std::pow(h / 2.0, n);
    std::array<std::int64_t, 3> c{0, 0, 0};
    const auto fill = [&](auto&& self, int ax) -> void {
        if (ax == n) {
            double acc = 0.0;
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                std::int64_t at = 0;
                bool ok = true;
                for (int k = 0; k < n; ++k) {
                    const std::int64_t sk =
                        c[static_cast<size_t>(k)] - ((mask >> k) & 1u ? 1 : 0);
                    if (sk < 0 || sk >= MS) {
                        ok = false;
                        break;
                    }
                    at += sk * s_stride[static_cast<size_t>(k)];
                }
                if (ok) acc += S[static_cast<size_t>(at)];
            }
            out[out.flat_index(c)] = scale * acc;
            return;
        }
        for (c[static_cast<size_t>(ax)] = 0; c[static_cast<size_t>(ax)] < out.cells_per_axis();
             ++c[static_cast<size_t>(ax)])
            self(self, ax + 1);
    };
    fill(fill, 0);
    return out;
}

}  // namespace mixnorm
