#include "mixnorm/step_function.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mixnorm/numeric.hpp"

namespace mixnorm {

namespace {

constexpr std::int64_t kMaxCells = std::int64_t{1} << 22;  // desk-scale guard

}  // namespace

StepFunction::StepFunction(int n, int J, int K, int d) : n_(n), J_(J), K_(K), d_(d) {
    if (n < 0 || n > 3) throw std::invalid_argument("StepFunction: dimension must be 0..3");
    if (K < 0) throw std::invalid_argument("StepFunction: window level K must be >= 0");
    if (K + J < 0) throw std::invalid_argument("StepFunction: need K + J >= 0");
    if (d != 0 && d != 1) throw std::invalid_argument("StepFunction: depth d must be 0 or 1");
    M_ = (std::int64_t{1} << (K + J)) * (d == 1 ? 3 : 1);
    std::int64_t total = 1;
    for (int axis = 0; axis < n; ++axis) {
        if (total > kMaxCells / M_) throw std::invalid_argument("StepFunction: grid too large");
        total *= M_;
    }
    std::int64_t s = 1;
    for (int axis = n - 1; axis >= 0; --axis) {
        stride_[static_cast<size_t>(axis)] = s;
        s *= M_;
    }
    v_.assign(static_cast<size_t>(total), 0.0);
}

StepFunction StepFunction::indicator_unit_cube(int n, int J, int K, int d) {
    if (J < 0) throw std::invalid_argument("indicator_unit_cube: J must be >= 0");
    StepFunction f(n, J, K, d);
    const std::int64_t span = (std::int64_t{1} << J) * (d == 1 ? 3 : 1);
    std::array<std::int64_t, 3> idx{0, 0, 0};
    const auto fill = [&](auto&& self, int axis) -> void {
        if (axis == n) {
            f[f.flat_index(idx)] = 1.0;
            return;
        }
        for (idx[static_cast<size_t>(axis)] = 0; idx[static_cast<size_t>(axis)] < span;
             ++idx[static_cast<size_t>(axis)])
            self(self, axis + 1);
    };
    fill(fill, 0);
    return f;
}

double StepFunction::cell_width() const { return std::ldexp(1.0, -J_) / (d_ == 1 ? 3.0 : 1.0); }

double StepFunction::cell_volume() const {
    double vol = 1.0;
    for (int axis = 0; axis < n_; ++axis) vol *= cell_width();
    return vol;
}

std::int64_t StepFunction::flat_index(const std::array<std::int64_t, 3>& idx) const {
    std::int64_t flat = 0;
    for (int axis = 0; axis < n_; ++axis)
        flat += idx[static_cast<size_t>(axis)] * stride_[static_cast<size_t>(axis)];
    return flat;
}

std::array<std::int64_t, 3> StepFunction::multi_index(std::int64_t flat) const {
    std::array<std::int64_t, 3> idx{0, 0, 0};
    for (int axis = 0; axis < n_; ++axis) {
        idx[static_cast<size_t>(axis)] = flat / stride_[static_cast<size_t>(axis)];
        flat %= stride_[static_cast<size_t>(axis)];
    }
    return idx;
}

std::array<double, 3> StepFunction::cell_center(std::int64_t flat) const {
    const auto idx = multi_index(flat);
    std::array<double, 3> x{0, 0, 0};
    for (int axis = 0; axis < n_; ++axis)
        x[static_cast<size_t>(axis)] =
            (static_cast<double>(idx[static_cast<size_t>(axis)]) + 0.5) * cell_width();
    return x;
}

double StepFunction::eval(const std::array<double, 3>& x) const {
    std::array<std::int64_t, 3> idx{0, 0, 0};
    for (int axis = 0; axis < n_; ++axis) {
        const double xi = x[static_cast<size_t>(axis)];
        if (xi < 0.0) return 0.0;
        const auto i = static_cast<std::int64_t>(std::floor(xi / cell_width()));
        if (i >= M_) return 0.0;
        idx[static_cast<size_t>(axis)] = i;
    }
    return v_[static_cast<size_t>(flat_index(idx))];
}

double StepFunction::integral() const { return pairwise_sum(v_) * cell_volume(); }

double StepFunction::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
}

bool StepFunction::is_zero() const {
    for (double x : v_)
        if (x != 0.0) return false;
    return true;
}

void StepFunction::check_finite() const {
    for (double x : v_)
        if (!std::isfinite(x)) throw std::runtime_error("StepFunction: non-finite cell value");
}

bool StepFunction::same_grid(const StepFunction& other) const {
    return n_ == other.n_ && J_ == other.J_ && K_ == other.K_ && d_ == other.d_;
}

CellBox cell_box(const StepFunction& f, const DyadicCube& q) {
    if (q.n != f.dim()) throw std::invalid_argument("cell_box: dimension mismatch");
    if (q.level > f.resolution())
        throw std::invalid_argument("cell_box: cube finer than the grid");
    if (q.shift && f.depth() != 1)
        throw std::invalid_argument("cell_box: shifted cubes need a depth-1 grid");
    const int up = f.resolution() - q.level;
    CellBox box;
    for (int axis = 0; axis < f.dim(); ++axis) {
        const int a = q.shift ? (*q.shift)[static_cast<size_t>(axis)] : 0;
        const std::int64_t scaled = 3 * q.index[static_cast<size_t>(axis)] + a;
        std::int64_t lo, span;
        if (f.depth() == 1) {
            lo = scaled << up;
            span = std::int64_t{3} << up;
        } else {
            // depth 0: only standard cubes align, and scaled = 3m.
            lo = (scaled / 3) << up;
            span = std::int64_t{1} << up;
        }
        box.lo[static_cast<size_t>(axis)] = std::max<std::int64_t>(lo, 0);
        box.hi[static_cast<size_t>(axis)] = std::min<std::int64_t>(lo + span, f.cells_per_axis());
    }
    return box;
}

namespace {

// Pointwise-exact resampling onto a grid whose cells are `factor` times
// finer per axis.
StepFunction upsample(const StepFunction& f, int factor, int J_new, int d_new) {
    StepFunction out(f.dim(), J_new, f.window_level(), d_new);
    out.set_approximate(f.approximate());
    const std::int64_t M_out = out.cells_per_axis();
    std::array<std::int64_t, 3> idx{0, 0, 0};
    const auto walk = [&](auto&& self, int axis) -> void {
        if (axis == f.dim()) {
            std::array<std::int64_t, 3> src{0, 0, 0};
            for (int ax = 0; ax < f.dim(); ++ax)
                src[static_cast<size_t>(ax)] = idx[static_cast<size_t>(ax)] / factor;
            out[out.flat_index(idx)] = f[f.flat_index(src)];
            return;
        }
        for (idx[static_cast<size_t>(axis)] = 0; idx[static_cast<size_t>(axis)] < M_out;
             ++idx[static_cast<size_t>(axis)])
            self(self, axis + 1);
    };
    walk(walk, 0);
    return out;
}

}  // namespace

StepFunction refine_dyadic(const StepFunction& f) {
    return upsample(f, 2, f.resolution() + 1, f.depth());
}

StepFunction refine_third(const StepFunction& f) {
    if (f.depth() != 0) throw std::invalid_argument("refine_third: input must have depth 0");
    return upsample(f, 3, f.resolution(), 1);
}

StepFunction extend_window(const StepFunction& f, int K_new) {
    if (K_new < f.window_level())
        throw std::invalid_argument("extend_window: window can only grow");
    if (K_new == f.window_level()) return f;
    StepFunction out(f.dim(), f.resolution(), K_new, f.depth());
    out.set_approximate(f.approximate());
    const std::int64_t M_in = f.cells_per_axis();
    std::array<std::int64_t, 3> idx{0, 0, 0};
    const auto walk = [&](auto&& self, int axis) -> void {
        if (axis == f.dim()) {
            out[out.flat_index(idx)] = f[f.flat_index(idx)];
            return;
        }
        for (idx[static_cast<size_t>(axis)] = 0; idx[static_cast<size_t>(axis)] < M_in;
             ++idx[static_cast<size_t>(axis)])
            self(self, axis + 1);
    };
    walk(walk, 0);
    return out;
}

StepFunction to_grid(const StepFunction& f, int J, int K, int d) {
    if (J < f.resolution() || K < f.window_level() || d < f.depth())
        throw std::invalid_argument("to_grid: target grid must refine the current one");
    StepFunction out = extend_window(f, K);
    while (out.resolution() < J) out = refine_dyadic(out);
    if (d == 1 && out.depth() == 0) out = refine_third(out);
    return out;
}

StepFunction restrict_to_cube(const StepFunction& f, const DyadicCube& q) {
    StepFunction g = f;
    if (q.shift) {
        if (q.level > f.resolution())
            throw std::invalid_argument("restrict_to_cube: shifted cube finer than the grid");
        if (g.depth() == 0) g = refine_third(g);
    } else if (q.level > g.resolution()) {
        g = to_grid(g, q.level, g.window_level(), g.depth());
    }
    const CellBox box = cell_box(g, q);
    StepFunction out(g.dim(), g.resolution(), g.window_level(), g.depth());
    out.set_approximate(g.approximate());
    std::array<std::int64_t, 3> idx{0, 0, 0};
    const auto walk = [&](auto&& self, int axis) -> void {
        if (axis == g.dim()) {
            out[out.flat_index(idx)] = g[g.flat_index(idx)];
            return;
        }
        for (idx[static_cast<size_t>(axis)] = box.lo[static_cast<size_t>(axis)];
             idx[static_cast<size_t>(axis)] < box.hi[static_cast<size_t>(axis)];
             ++idx[static_cast<size_t>(axis)])
            self(self, axis + 1);
    };
    walk(walk, 0);
    return out;
}

StepFunction dilate_dyadic(const StepFunction& f, int k) {
    if (f.window_level() - k < 0)
        throw std::invalid_argument("dilate_dyadic: support would leave every valid window");
    // x -> 2^k x maps the cell grid onto itself: same values, relabeled grid.
    StepFunction out(f.dim(), f.resolution() + k, f.window_level() - k, f.depth());
    out.set_approximate(f.approximate());
    out.values() = f.values();
    return out;
}

StepFunction translate(const StepFunction& f, const std::array<std::int64_t, 3>& tau) {
    const std::int64_t unit = f.depth() == 1 ? 3 : 1;  // cells per 2^{-J} step
    std::int64_t max_shift = 0;
    for (int axis = 0; axis < f.dim(); ++axis) {
        if (tau[static_cast<size_t>(axis)] < 0)
            throw std::invalid_argument("translate: shifts must be >= 0 (positive orthant)");
        max_shift = std::max(max_shift, tau[static_cast<size_t>(axis)] * unit);
    }
    int K_new = f.window_level();
    while ((std::int64_t{1} << (K_new + f.resolution())) * unit < f.cells_per_axis() + max_shift)
        ++K_new;
    StepFunction out(f.dim(), f.resolution(), K_new, f.depth());
    out.set_approximate(f.approximate());
    std::array<std::int64_t, 3> idx{0, 0, 0};
    const auto walk = [&](auto&& self, int axis) -> void {
        if (axis == f.dim()) {
            std::array<std::int64_t, 3> dst = idx;
            for (int ax = 0; ax < f.dim(); ++ax)
                dst[static_cast<size_t>(ax)] += tau[static_cast<size_t>(ax)] * unit;
            out[out.flat_index(dst)] = f[f.flat_index(idx)];
            return;
        }
        for (idx[static_cast<size_t>(axis)] = 0;
             idx[static_cast<size_t>(axis)] < f.cells_per_axis(); ++idx[static_cast<size_t>(axis)])
            self(self, axis + 1);
    };
    walk(walk, 0);
    return out;
}

namespace {

void append_double(std::string& out, double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    out.append(buf, res.ptr);
}

}  // namespace

std::string to_text(const StepFunction& f) {
    if (f.dim() < 1) throw std::invalid_argument("to_text: scalar results are not serialized");
    std::string out;
    out += std::to_string(f.dim());
    out += ' ';
    out += std::to_string(f.resolution());
    out += ' ';
    out += std::to_string(f.window_level());
    out += ' ';
    out += std::to_string(f.depth());
    if (f.approximate()) out += " approx=1";
    out += '\n';
    for (double x : f.values()) {
        append_double(out, x);
        out += '\n';
    }
    return out;
}

StepFunction from_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("from_text: missing header");
    std::istringstream hs(header);
    int n, J, K, d;
    if (!(hs >> n >> J >> K >> d)) throw std::runtime_error("from_text: malformed header");
    bool approx = false;
    std::string extra;
    if (hs >> extra) {
        if (extra == "approx=1")
            approx = true;
        else
            throw std::runtime_error("from_text: unknown header field '" + extra + "'");
        if (hs >> extra) throw std::runtime_error("from_text: trailing header fields");
    }
    StepFunction f(n, J, K, d);
    f.set_approximate(approx);
    std::string line;
    for (std::int64_t i = 0; i < f.total_cells(); ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("from_text: expected " + std::to_string(f.total_cells()) +
                                     " values, got " + std::to_string(i));
        double x = 0;
        const char* first = line.data();
        const char* last = line.data() + line.size();
        const auto res = std::from_chars(first, last, x);
        if (res.ec != std::errc{} || res.ptr != last)
            throw std::runtime_error("from_text: bad value on line " + std::to_string(i + 2));
        if (!std::isfinite(x)) throw std::runtime_error("from_text: non-finite value");
        f[i] = x;
    }
    while (std::getline(in, line))
        if (!line.empty()) throw std::runtime_error("from_text: trailing content");
    return f;
}

void save_text(const StepFunction& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_text: cannot open " + path);
    const std::string text = to_text(f);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("save_text: write failed for " + path);
}

StepFunction load_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_text: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

VectorStepFunction::VectorStepFunction(std::vector<StepFunction> components)
    : comps_(std::move(components)) {
    if (comps_.empty())
        throw std::invalid_argument("VectorStepFunction: at least one component");
    for (const auto& g : comps_)
        if (!g.same_grid(comps_.front()))
            throw std::invalid_argument("VectorStepFunction: components must share one grid");
}

StepFunction ell_u_combine(const VectorStepFunction& fv, double u) {
    if (std::isnan(u) || u <= 0.0)
        throw std::invalid_argument("ell_u_combine: u must lie in (0, inf]");
    const StepFunction& g0 = fv.grid();
    StepFunction out(g0.dim(), g0.resolution(), g0.window_level(), g0.depth());
    bool approx = false;
    for (int k = 0; k < fv.count(); ++k) approx = approx || fv[k].approximate();
    out.set_approximate(approx);
    for (std::int64_t i = 0; i < out.total_cells(); ++i) {
        double acc = 0.0;
        if (std::isinf(u)) {
            for (int k = 0; k < fv.count(); ++k) acc = std::max(acc, std::fabs(fv[k][i]));
        } else {
            for (int k = 0; k < fv.count(); ++k) acc += std::pow(std::fabs(fv[k][i]), u);
            acc = std::pow(acc, 1.0 / u);
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace mixnorm
