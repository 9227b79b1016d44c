#include "elastinet/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "elastinet/energy.hpp"
#include "elastinet/error.hpp"

namespace elastinet {

namespace {

constexpr double pi = 3.14159265358979323846;

bool is_junction_kind(NetworkKind k) {
    return k == NetworkKind::Theta || k == NetworkKind::GeneralizedTheta ||
           k == NetworkKind::DegenerateTheta;
}


}  // namespace

DofLayout::DofLayout(const Network& shape, bool symmetric) : shape_(shape), symmetric_(symmetric) {
    check_structure(shape_);
    if (symmetric_ && shape_.kind != NetworkKind::DoubleDrop) {
        throw Error(ErrorKind::InvalidInput, "symmetric layout needs a double drop");
    }
    refs_.resize(shape_.curves.size());
    std::size_t off = 0;
    const bool junctions = is_junction_kind(shape_.kind);
    if (junctions) {
        for (std::size_t j = 0; j < shape_.junctions.size(); ++j) {
            junction_pos_.push_back(off);
            off += 2;
        }
        for (std::size_t j = 0; j < shape_.junctions.size(); ++j) junction_frame_.push_back(off++);
    }
    for (std::size_t c = 0; c < shape_.curves.size(); ++c) {
        const auto& curve = shape_.curves[c];
        const std::size_t np = curve.points.size();
        auto& r = refs_[c];
        r.resize(np);
        for (std::size_t i = 0; i < np; ++i) {
            const bool end = !curve.closed && (i == 0 || i + 1 == np);
            if (curve.closed || !end) {
                if (symmetric_ && c == 1) {
                    r[i] = {Source::Mirror, np - 1 - i};
                } else {
                    r[i] = {Source::Free, off};
                    off += 2;
                }
            } else if (junctions) {
                const auto slots = end_slots(shape_);
                for (const auto& s : slots) {
                    if (s.curve == c && s.at_start == (i == 0)) r[i] = {Source::Junction, s.junction};
                }
            } else {
                r[i] = {Source::Fixed, 0};
            }
        }
    }
    if (symmetric_ && shape_.curves[0].points.size() != shape_.curves[1].points.size()) {
        throw Error(ErrorKind::InvalidInput, "symmetric double drop needs equal point counts");
    }
    size_ = off;
}

std::vector<double> DofLayout::pack(const Network& network) const {
    std::vector<double> x(size_, 0.0);
    for (std::size_t j = 0; j < junction_pos_.size(); ++j) {
        x[junction_pos_[j]] = network.junctions[j].position.x;
        x[junction_pos_[j] + 1] = network.junctions[j].position.y;
        x[junction_frame_[j]] = network.junctions[j].frame_angle;
    }
    for (std::size_t c = 0; c < refs_.size(); ++c) {
        for (std::size_t i = 0; i < refs_[c].size(); ++i) {
            if (refs_[c][i].source != Source::Free) continue;
            x[refs_[c][i].index] = network.curves[c].points[i].x;
            x[refs_[c][i].index + 1] = network.curves[c].points[i].y;
        }
    }
    return x;
}

Network DofLayout::unpack(std::span<const double> x) const {
    if (x.size() != size_) throw Error(ErrorKind::InvalidInput, "DOF vector has the wrong size");
    Network out = shape_;
    for (std::size_t j = 0; j < junction_pos_.size(); ++j) {
        out.junctions[j].position = {x[junction_pos_[j]], x[junction_pos_[j] + 1]};
        out.junctions[j].frame_angle = x[junction_frame_[j]];
    }
    for (std::size_t c = 0; c < refs_.size(); ++c) {
        for (std::size_t i = 0; i < refs_[c].size(); ++i) {
            const auto& r = refs_[c][i];
            auto& p = out.curves[c].points[i];
            switch (r.source) {
                case Source::Free: p = {x[r.index], x[r.index + 1]}; break;
                case Source::Junction: p = out.junctions[r.index].position; break;
                case Source::Fixed: break;
                case Source::Mirror: break;
            }
        }
    }
    if (symmetric_) {
        const Point2 o = out.curves[0].points.front();
        auto& a = out.curves[0].points;
        auto& b = out.curves[1].points;
        for (std::size_t i = 0; i < b.size(); ++i) b[i] = o * 2.0 - a[a.size() - 1 - i];
    }
    return out;
}

double DofLayout::energy(std::span<const double> x) const {
    std::vector<double> g;
    return energy_gradient(x, g);
}

double DofLayout::energy_gradient(std::span<const double> x, std::vector<double>& grad) const {
    const Network net = unpack(x);
    const auto clamps = end_clamps(net);
    grad.assign(size_, 0.0);
    std::vector<double> frame_grad(net.junctions.size(), 0.0);
    const auto slots = end_slots(net);
    double total = 0.0;
    for (std::size_t c = 0; c < net.curves.size(); ++c) {
        const auto& curve = net.curves[c];
        std::vector<Vec2> gp(curve.points.size());
        double gs = 0.0, ge = 0.0;
        total += curve_energy_gradient(curve, clamps[c], 1.0, gp, &gs, &ge);
        for (const auto& s : slots) {
            if (s.curve != c) continue;
            frame_grad[s.junction] += s.at_start ? gs : ge;
        }
        for (std::size_t i = 0; i < gp.size(); ++i) {
            const auto& r = refs_[c][i];
            switch (r.source) {
                case Source::Free:
                    grad[r.index] += gp[i].x;
                    grad[r.index + 1] += gp[i].y;
                    break;
                case Source::Junction:
                    grad[junction_pos_[r.index]] += gp[i].x;
                    grad[junction_pos_[r.index] + 1] += gp[i].y;
                    break;
                case Source::Fixed: break;
                case Source::Mirror: {
                    const auto& t = refs_[0][r.index];
                    if (t.source == Source::Free) {
                        grad[t.index] -= gp[i].x;
                        grad[t.index + 1] -= gp[i].y;
                    }
                    break;
                }
            }
        }
    }
    for (std::size_t j = 0; j < junction_frame_.size(); ++j) grad[junction_frame_[j]] += frame_grad[j];
    return total;
}

std::vector<std::size_t> DofLayout::point_dofs(std::size_t curve, std::size_t i) const {
    const auto& r = refs_[curve][i];
    switch (r.source) {
        case Source::Free: return {r.index, r.index + 1};
        case Source::Junction: return {junction_pos_[r.index], junction_pos_[r.index] + 1};
        case Source::Mirror: return point_dofs(0, r.index);
        case Source::Fixed: break;
    }
    return {};
}

std::vector<std::vector<std::size_t>> DofLayout::term_dofs() const {
    std::vector<std::vector<std::size_t>> terms;
    const auto slots = end_slots(shape_);
    auto add = [&](std::initializer_list<std::pair<std::size_t, std::size_t>> pts, long frame,
                   std::size_t c) {
        std::vector<std::size_t> t;
        for (const auto& [cc, i] : pts) {
            (void)cc;
            for (std::size_t d : point_dofs(c, i)) t.push_back(d);
        }
        if (frame >= 0) t.push_back(junction_frame_[static_cast<std::size_t>(frame)]);
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        if (!t.empty()) terms.push_back(std::move(t));
    };
    for (std::size_t c = 0; c < shape_.curves.size(); ++c) {
        const auto& curve = shape_.curves[c];
        const std::size_t np = curve.points.size();
        if (curve.closed) {
            for (std::size_t i = 0; i < np; ++i) add({{c, (i + np - 1) % np}, {c, i}, {c, (i + 1) % np}}, -1, c);
            continue;
        }
        for (std::size_t i = 1; i + 1 < np; ++i) add({{c, i - 1}, {c, i}, {c, i + 1}}, -1, c);
        long fs = -1, fe = -1;
        for (const auto& s : slots) {
            if (s.curve != c || junction_frame_.empty()) continue;
            (s.at_start ? fs : fe) = static_cast<long>(s.junction);
        }
        add({{c, 0}, {c, 1}}, fs, c);
        add({{c, np - 2}, {c, np - 1}}, fe, c);
    }
    return terms;
}

std::vector<DofLayout::FreePoint> DofLayout::free_points() const {
    std::vector<FreePoint> out;
    for (std::size_t c = 0; c < refs_.size(); ++c) {
        for (std::size_t i = 0; i < refs_[c].size(); ++i) {
            if (refs_[c][i].source == Source::Free) out.push_back({refs_[c][i].index, c, i});
        }
    }
    return out;
}

std::vector<double> discrete_gradient(const Network& network) {
    const DofLayout layout(network);
    std::vector<double> g;
    layout.energy_gradient(layout.pack(network), g);
    return g;
}

const char* to_string(DescentMethod m) {
    switch (m) {
        case DescentMethod::Newton: return "newton";
        case DescentMethod::GradientDescent: return "gradient_descent";
    }
    return "unknown";
}

DescentMethod descent_method_from_string(const std::string& name) {
    for (auto m : {DescentMethod::Newton, DescentMethod::GradientDescent}) {
        if (name == to_string(m)) return m;
    }
    throw Error(ErrorKind::InvalidConfig, "unknown descent method '" + name + "'");
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::Converged: return "converged";
        case Termination::MaxIters: return "max_iters";
        case Termination::LineSearchFailed: return "line_search_failed";
        case Termination::DegenerationDetected: return "degeneration_detected";
    }
    return "unknown";
}

void check_config(const OptimizationConfig& c) {
    auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
    if (c.n_per_curve != 0 && c.n_per_curve < 3) bad("n_per_curve must be 0 or at least 3");
    if (!(c.grad_tol > 0.0)) bad("grad_tol must be positive");
    if (!(c.energy_rel_tol > 0.0)) bad("energy_rel_tol must be positive");
    if (c.stall_window == 0) bad("stall_window must be positive");
    if (c.resample_every == 0) bad("resample_every must be positive");
    if (!(c.resample_jump_tol > 0.0)) bad("resample_jump_tol must be positive");
    if (!(c.backtrack_factor > 0.0 && c.backtrack_factor < 1.0)) bad("backtrack_factor must lie in (0, 1)");
    if (!(c.armijo > 0.0 && c.armijo < 1.0)) bad("armijo must lie in (0, 1)");
    if (!(c.initial_step > 0.0) || !std::isfinite(c.initial_step)) bad("initial_step must be positive");
    if (c.max_backtracks == 0) bad("max_backtracks must be positive");
    if (!(c.degeneration_ratio >= 0.0 && c.degeneration_ratio < 1.0)) {
        bad("degeneration_ratio must lie in [0, 1)");
    }
    if (!(c.jitter >= 0.0) || !std::isfinite(c.jitter)) bad("jitter must be non-negative");
}

bool trace_nonincreasing(const OptimizationResult& result, double rel_tol) {
    std::vector<bool> jump(result.energy_trace.size(), false);
    for (const auto& ev : result.resamples) {
        if (ev.accepted && ev.iteration < jump.size()) jump[ev.iteration] = true;
    }
    for (std::size_t i = 1; i < result.energy_trace.size(); ++i) {
        if (jump[i]) continue;
        const double prev = result.energy_trace[i - 1];
        if (result.energy_trace[i] > prev + rel_tol * std::abs(prev)) return false;
    }
    return true;
}

namespace {

Network resample_network(const Network& net, bool symmetric) {
    Network out = net;
    for (auto& c : out.curves) c = resample_spline(c, c.num_edges());
    if (symmetric) {
        const Point2 o = out.curves[0].points.front();
        const auto& a = out.curves[0].points;
        auto& b = out.curves[1].points;
        for (std::size_t i = 0; i < b.size(); ++i) b[i] = o * 2.0 - a[a.size() - 1 - i];
    }
    return out;
}

bool degenerated(const Network& net, double ratio) {
    if (ratio <= 0.0) return false;
    const double d = network_diameter(net);
    for (const auto& c : net.curves) {
        if (polyline_length(c) < ratio * d) return true;
    }
    return false;
}

void jitter_points(Network& net, double amount, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, amount);
    for (auto& c : net.curves) {
        const std::size_t np = c.points.size();
        for (std::size_t i = 0; i < np; ++i) {
            if (!c.closed && (i == 0 || i + 1 == np)) continue;
            c.points[i] += Vec2{nd(rng), nd(rng)};
        }
    }
}

struct Record {
    OptimizationResult& r;
    void push(const Network& net, double gnorm) {
        const EnergyReport e = penalized_energy(net, 1.0);
        r.energy_trace.push_back(e.penalized);
        r.elastic_trace.push_back(e.elastic);
        r.length_trace.push_back(e.length);
        r.grad_norm_trace.push_back(gnorm);
    }
};

// Columns grouped so that no two in a group share a nonzero row, which lets
// one gradient difference recover several Hessian columns at once.
struct HessianPlan {
    std::vector<std::vector<std::size_t>> colors;
    std::vector<std::vector<std::size_t>> rows;  // structural nonzero rows per column
};

HessianPlan plan_hessian(const DofLayout& layout) {
    const std::size_t n = layout.size();
    HessianPlan plan;
    plan.rows.resize(n);
    for (const auto& t : layout.term_dofs()) {
        for (std::size_t a : t) plan.rows[a].insert(plan.rows[a].end(), t.begin(), t.end());
    }
    for (auto& r : plan.rows) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
    }
    std::vector<long> color(n, -1);
    std::vector<std::size_t> seen(n + 1, n + 1);
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<char> used;
        for (std::size_t r : plan.rows[a]) {
            for (std::size_t b : plan.rows[r]) {
                if (color[b] < 0) continue;
                const auto cb = static_cast<std::size_t>(color[b]);
                if (used.size() <= cb) used.resize(cb + 1, 0);
                used[cb] = 1;
            }
        }
        std::size_t c = 0;
        while (c < used.size() && used[c]) ++c;
        color[a] = static_cast<long>(c);
        if (plan.colors.size() <= c) plan.colors.resize(c + 1);
        plan.colors[c].push_back(a);
    }
    return plan;
}

Eigen::SparseMatrix<double> fd_hessian(const DofLayout& layout, const HessianPlan& plan,
                                       const std::vector<double>& x, double step) {
    const std::size_t n = layout.size();
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> xp = x, xm = x, gp, gm;
    for (const auto& group : plan.colors) {
        for (std::size_t a : group) {
            xp[a] += step;
            xm[a] -= step;
        }
        layout.energy_gradient(xp, gp);
        layout.energy_gradient(xm, gm);
        for (std::size_t a : group) {
            xp[a] = x[a];
            xm[a] = x[a];
            for (std::size_t r : plan.rows[a]) {
                trip.emplace_back(static_cast<int>(r), static_cast<int>(a), (gp[r] - gm[r]) / (2.0 * step));
            }
        }
    }
    Eigen::SparseMatrix<double> h(static_cast<int>(n), static_cast<int>(n));
    h.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseMatrix<double> ht = h.transpose();
    return 0.5 * (h + ht);
}

using SpMat = Eigen::SparseMatrix<double>;

// Columns of the reduced space: the unit normal of every free point (as one
// column), identity for junction positions and frame angles.
SpMat motion_basis(const DofLayout& layout, const Network& net) {
    const std::size_t n = layout.size();
    std::vector<char> is_point(n, 0);
    std::vector<Eigen::Triplet<double>> trip;
    int col = 0;
    for (const auto& fp : layout.free_points()) {
        const auto& c = net.curves[fp.curve];
        const std::size_t np = c.points.size();
        const Point2 prev = c.points[(fp.index + np - 1) % np];
        const Point2 next = c.points[(fp.index + 1) % np];
        Vec2 nrm = perp(next - prev);
        const double len = norm(nrm);
        nrm = len > 0.0 ? nrm * (1.0 / len) : Vec2{0.0, 1.0};
        trip.emplace_back(static_cast<int>(fp.dof), col, nrm.x);
        trip.emplace_back(static_cast<int>(fp.dof + 1), col, nrm.y);
        is_point[fp.dof] = is_point[fp.dof + 1] = 1;
        ++col;
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!is_point[k]) trip.emplace_back(static_cast<int>(k), col++, 1.0);
    }
    SpMat b(static_cast<int>(n), col);
    b.setFromTriplets(trip.begin(), trip.end());
    return b;
}

// Damped Newton direction in the reduced space: solves (H + mu I) d = -g,
// raising mu until the factorization is positive definite.
bool newton_direction(const SpMat& h, const Eigen::VectorXd& g, double& mu, Eigen::VectorXd& d) {
    const int n = static_cast<int>(g.size());
    double diag = 0.0;
    for (int i = 0; i < n; ++i) diag = std::max(diag, std::abs(h.coeff(i, i)));
    if (!(diag > 0.0)) diag = 1.0;
    mu = std::max(mu, 1e-12 * diag);
    SpMat eye(n, n);
    eye.setIdentity();
    for (int attempt = 0; attempt < 40; ++attempt) {
        const SpMat a = h + mu * eye;
        Eigen::SimplicialLDLT<SpMat> ldlt(a);
        if (ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > 0.0).all()) {
            d = ldlt.solve(-g);
            if (d.allFinite() && d.dot(g) < 0.0) return true;
        }
        mu = std::max(10.0 * mu, 1e-8 * diag);
    }
    return false;
}

OptimizationResult run(const Network& initial, const OptimizationConfig& config, bool symmetric) {
    check_config(config);
    check_structure(initial);
    Network net = initial;
    if (config.n_per_curve != 0) {
        for (auto& c : net.curves) c = resample_uniform(c, config.n_per_curve);
    }
    auto symmetrize = [&](const Network& n) {
        return symmetric_double_drop(Network{NetworkKind::Drop, {n.curves[0]}, {}, {}});
    };
    if (symmetric) net = symmetrize(net);
    if (config.jitter > 0.0) {
        jitter_points(net, config.jitter * network_diameter(net), config.seed);
        if (symmetric) net = symmetrize(net);
    }

    OptimizationResult result;
    Record rec{result};
    DofLayout layout(net, symmetric);
    HessianPlan plan;
    if (config.method == DescentMethod::Newton) plan = plan_hessian(layout);
    std::vector<double> x = layout.pack(net);
    std::vector<double> g;
    double f = layout.energy_gradient(x, g);
    if (!std::isfinite(f)) throw Error(ErrorKind::Numeric, "initial energy is not finite");

    Network cur = layout.unpack(x);
    SpMat basis = motion_basis(layout, cur);
    auto reduced = [&](const std::vector<double>& full) {
        Eigen::Map<const Eigen::VectorXd> v(full.data(), static_cast<long>(full.size()));
        return Eigen::VectorXd(basis.transpose() * v);
    };
    Eigen::VectorXd gr = reduced(g);
    rec.push(cur, gr.lpNorm<Eigen::Infinity>());

    const double diam = network_diameter(net);
    double last_step = 0.0;
    double mu = 0.0;
    result.termination = Termination::MaxIters;

    auto finish = [&](Termination t, const std::string& msg) {
        result.termination = t;
        result.message = msg;
    };

    for (std::size_t it = 1; it <= config.max_iters; ++it) {
        if (gr.lpNorm<Eigen::Infinity>() <= config.grad_tol) {
            finish(Termination::Converged, "gradient below tolerance");
            break;
        }
        Eigen::VectorXd dr;
        double t = 1.0;
        bool newton = false;
        if (config.method == DescentMethod::Newton) {
            const SpMat hf = fd_hessian(layout, plan, x, 1e-6 * std::max(1.0, diam));
            const SpMat hr = SpMat(basis.transpose() * hf * basis);
            newton = newton_direction(hr, gr, mu, dr);
        }
        if (!newton) {
            dr = -gr;
            const double cap = config.initial_step * diam / gr.lpNorm<Eigen::Infinity>();
            t = last_step > 0.0 ? std::min(2.0 * last_step, 1e3 * cap) : cap;
        } else {
            // Newton steps longer than a tenth of the diameter are shortened first.
            const double dn = dr.lpNorm<Eigen::Infinity>();
            if (dn > 0.1 * diam) t = 0.1 * diam / dn;
        }
        const Eigen::VectorXd dfull = basis * dr;
        const double slope = gr.dot(dr);

        std::vector<double> xn(x.size()), gn;
        double fn = f;
        bool accepted = false;
        for (std::size_t b = 0; b < config.max_backtracks; ++b) {
            for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] + t * dfull[static_cast<long>(i)];
            try {
                fn = layout.energy_gradient(xn, gn);
            } catch (const Error&) {
                fn = INFINITY;  // collapsed edge
            }
            if (std::isfinite(fn) && fn <= f + config.armijo * t * slope) {
                accepted = true;
                break;
            }
            t *= config.backtrack_factor;
        }
        if (!accepted) {
            if (newton && mu < 1e12) {
                mu = std::max(100.0 * mu, 1e-6);
                --it;
                continue;
            }
            finish(Termination::LineSearchFailed, "no step satisfied the Armijo condition");
            break;
        }
        for (double v : xn) {
            if (!std::isfinite(v)) throw Error(ErrorKind::Numeric, "non-finite coordinate during descent");
        }
        if (newton) {
            // Levenberg-style damping: short accepted steps mean the quadratic
            // model was trusted too far.
            mu = t < 0.25 ? std::max(10.0 * mu, 1e-10) : 0.1 * mu;
        } else {
            last_step = t;
        }
        x = std::move(xn);
        g = std::move(gn);
        f = fn;
        cur = layout.unpack(x);
        result.iterations = it;

        if (degenerated(cur, config.degeneration_ratio)) {
            rec.push(cur, reduced(g).lpNorm<Eigen::Infinity>());
            finish(Termination::DegenerationDetected, "a curve shrank below the degeneration ratio");
            break;
        }
        if (it % config.resample_every == 0) {
            const Network rs = resample_network(cur, symmetric);
            const DofLayout rl(rs, symmetric);
            std::vector<double> rx = rl.pack(rs), rg;
            double rf = INFINITY;
            try {
                rf = rl.energy_gradient(rx, rg);
            } catch (const Error&) {
            }
            ResampleEvent ev{it, f, rf, std::isfinite(rf) && rf <= f + config.resample_jump_tol * f};
            result.resamples.push_back(ev);
            if (ev.accepted) {
                layout = rl;
                x = std::move(rx);
                g = std::move(rg);
                f = rf;
                cur = rs;
            }
        }
        basis = motion_basis(layout, cur);
        gr = reduced(g);
        rec.push(cur, gr.lpNorm<Eigen::Infinity>());

        const std::size_t n = result.energy_trace.size();
        if (n > config.stall_window) {
            const double old = result.energy_trace[n - 1 - config.stall_window];
            if (std::abs(old - f) <= config.energy_rel_tol * std::abs(f)) {
                finish(Termination::Converged, "relative energy change below tolerance");
                break;
            }
        }
    }
    if (result.message.empty()) result.message = "iteration budget exhausted";

    result.final = layout.unpack(x);
    const double d = network_diameter(result.final);
    const ValidationReport v = validate(result.final, 1e-6 * (d > 0.0 ? d : 1.0), 1e-2);
    result.junction_gap = v.junction_gap;
    result.angle_defect = v.angle_defect;
    return result;
}

}  // namespace

OptimizationResult minimize(const Network& initial, const OptimizationConfig& config) {
    return run(initial, config, false);
}

Network symmetric_double_drop(const Network& drop) {
    if (drop.curves.empty() || drop.curves[0].closed) {
        throw Error(ErrorKind::InvalidInput, "symmetric double drop needs an open drop curve");
    }
    Network out;
    out.kind = NetworkKind::DoubleDrop;
    DiscreteCurve a = drop.curves[0];
    const Point2 o = a.points.front();
    for (auto& p : a.points) p -= o;
    a.points.back() = a.points.front();
    DiscreteCurve b = a;
    for (std::size_t i = 0; i < b.points.size(); ++i) b.points[i] = -a.points[a.points.size() - 1 - i];
    out.curves = {a, b};
    return out;
}

OptimizationResult minimize_symmetric_double_drop(const Network& initial,
                                                  const OptimizationConfig& config) {
    if (initial.kind != NetworkKind::DoubleDrop && initial.kind != NetworkKind::Drop) {
        throw Error(ErrorKind::InvalidInput, "symmetric double drop descent needs a drop or double drop");
    }
    Network start = initial.kind == NetworkKind::Drop ? symmetric_double_drop(initial) : initial;
    return run(start, config, true);
}

std::string trace_csv(const OptimizationResult& r) {
    std::ostringstream os;
    os.precision(17);
    os << "iter,F,E,L,grad_norm\n";
    for (std::size_t i = 0; i < r.energy_trace.size(); ++i) {
        os << i << ',' << r.energy_trace[i] << ',' << r.elastic_trace[i] << ',' << r.length_trace[i]
           << ',' << r.grad_norm_trace[i] << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Recovery sequence.

namespace {

// First sign change, counted from the four-point, of the tangent's second
// component, interpolated linearly in arclength between vertex tangents and
// located by bisection. Returns the arclength of the root and the edge holding it.
std::pair<double, std::size_t> horizontal_tangent(const DiscreteCurve& c) {
    const auto tan = edge_tangents(c);
    const auto s = arclength_positions(c);
    const std::size_t np = c.points.size();
    std::vector<double> ty(np);
    ty[0] = tan.front().y;
    ty[np - 1] = tan.back().y;
    for (std::size_t i = 1; i + 1 < np; ++i) {
        const Vec2 v = tan[i - 1] + tan[i];
        ty[i] = v.y / norm(v);
    }
    for (std::size_t i = 0; i + 1 < np; ++i) {
        if (ty[i] == 0.0) return {s[i], std::min(i, np - 2)};
        if (ty[i] * ty[i + 1] > 0.0) continue;
        double lo = s[i], hi = s[i + 1];
        auto f = [&](double x) { return ty[i] + (ty[i + 1] - ty[i]) * (x - s[i]) / (s[i + 1] - s[i]); };
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
        }
        return {0.5 * (lo + hi), i};
    }
    throw Error(ErrorKind::ConstructionFailed, "drop has no horizontal tangent");
}

struct Glued {
    std::vector<Point2> points;
    double dir_start = 0.0;  // outgoing at the left copy of the four-point
    double dir_end = 0.0;    // outgoing at the right copy
    double fraction = 0.0;
    bool exact = true;
};

// Opens one drop at its horizontal edge, shifts the right part by h, and
// widens the edge so the sub-edges next to the original vertices keep their length.
Glued open_drop(const DiscreteCurve& c, double slot_start, double slot_end, double h) {
    const auto& p = c.points;
    Glued g;
    const bool start_right = std::cos(slot_start) > 0.0;
    if (start_right == (std::cos(slot_end) > 0.0)) {
        throw Error(ErrorKind::ConstructionFailed,
                    "drop ends do not leave the four-point on opposite sides");
    }
    const auto [root, j] = horizontal_tangent(c);
    const double len = norm(c.edge(j));
    g.fraction = root / polyline_length(c);

    std::vector<Point2> left, right;
    if (start_right) {
        // Walk the drop backwards: P..p[j+1], then p[j]..p[0].
        left.assign(p.rbegin(), p.rbegin() + static_cast<long>(p.size() - 1 - j));
        right.assign(p.rbegin() + static_cast<long>(p.size() - 1 - j), p.rend());
        g.dir_start = slot_end;
        g.dir_end = slot_start;
    } else {
        left.assign(p.begin(), p.begin() + static_cast<long>(j) + 1);   // P..p[j]
        right.assign(p.begin() + static_cast<long>(j) + 1, p.end());    // p[j+1]..P
        g.dir_start = slot_start;
        g.dir_end = slot_end;
    }
    for (auto& q : right) q += Vec2{h, 0.0};

    const Point2 a = left.back(), b = right.front();
    const Vec2 e = b - a;
    const double gap = norm(e);
    g.exact = e.x > 0.0 && std::abs(e.y) <= 1e-12 * gap && h >= len;
    g.points = left;
    if (g.exact) {
        const Vec2 u = e * (1.0 / gap);
        g.points.push_back(a + u * len);
        if (gap - 2.0 * len > 1e-12 * gap) g.points.push_back(b - u * len);
    }
    g.points.insert(g.points.end(), right.begin(), right.end());
    return g;
}

bool same_direction(double a, double b) { return std::abs(wrap_angle(a - b)) <= 1e-9; }

}  // namespace

RecoveryResult recovery_sequence(const Network& degenerate, std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidInput, "recovery needs n >= 1");
    if (degenerate.kind != NetworkKind::DegenerateTheta) {
        throw Error(ErrorKind::InvalidInput, "recovery needs a degenerate theta network");
    }
    check_structure(degenerate);
    const double h = 1.0 / static_cast<double>(n);
    const Point2 P = degenerate.junctions[0].position;
    for (const auto& c : degenerate.curves) {
        if (norm(c.points.front() - P) > 1e-12 || norm(c.points.back() - P) > 1e-12) {
            throw Error(ErrorKind::ConstructionFailed, "drops do not start and end at the four-point");
        }
    }

    std::array<double, 4> dir{};
    for (const auto& s : end_slots(degenerate)) dir[2 * s.curve + (s.at_start ? 0 : 1)] = s.direction;
    const Glued g0 = open_drop(degenerate.curves[0], dir[0], dir[1], h);
    const Glued g1 = open_drop(degenerate.curves[1], dir[2], dir[3], h);

    DiscreteCurve seg{{P, P + Vec2{0.5 * h, 0.0}, P + Vec2{h, 0.0}}, false};
    const double seg_start = 0.0, seg_end = pi;

    // Find curve order and orientations that put the outgoing directions in
    // theta slot order at both copies of the four-point.
    const Glued* order[2][2] = {{&g0, &g1}, {&g1, &g0}};
    for (const auto& o : order) {
        const double f0 = o[0]->dir_start, f1 = o[0]->dir_end;
        for (int s0 : {1, -1}) {
            for (int s1 : {1, -1}) {
                const bool ok =
                    same_direction(o[1]->dir_start, f0 + s0 * 2.0 * pi / 3.0) &&
                    same_direction(seg_start, f0 + s0 * 4.0 * pi / 3.0) &&
                    same_direction(o[1]->dir_end, f1 + s1 * 2.0 * pi / 3.0) &&
                    same_direction(seg_end, f1 + s1 * 4.0 * pi / 3.0);
                if (!ok) continue;
                RecoveryResult out;
                out.theta.kind = NetworkKind::Theta;
                out.theta.curves = {DiscreteCurve{o[0]->points, false},
                                    DiscreteCurve{o[1]->points, false}, seg};
                out.theta.junctions = {Junction{P, f0, s0, 0}, Junction{P + Vec2{h, 0.0}, f1, s1, 0}};
                out.t1 = g0.fraction;
                out.t2 = g1.fraction;
                out.inserted_length = h;
                out.exact = g0.exact && g1.exact;
                return out;
            }
        }
    }
    throw Error(ErrorKind::ConstructionFailed,
                "four-point directions do not open into a 120 degree theta configuration");
}

// ---------------------------------------------------------------------------
// Injectivity.

namespace {

int orient(const Point2& a, const Point2& b, const Point2& c) {
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
}

bool proper_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

std::size_t count_crossings(const DiscreteCurve& a, const DiscreteCurve* b) {
    std::size_t count = 0;
    const std::size_t na = a.num_edges();
    const DiscreteCurve& other = b ? *b : a;
    const std::size_t nb = other.num_edges();
    for (std::size_t i = 0; i < na; ++i) {
        const Point2 p0 = a.points[i], p1 = a.points[(i + 1) % a.points.size()];
        for (std::size_t k = b ? 0 : i + 1; k < nb; ++k) {
            const Point2 q0 = other.points[k], q1 = other.points[(k + 1) % other.points.size()];
            if (proper_cross(p0, p1, q0, q1)) ++count;
        }
    }
    return count;
}

}  // namespace

std::size_t InjectivityReport::total() const {
    std::size_t t = std::accumulate(self_intersections.begin(), self_intersections.end(), std::size_t{0});
    for (const auto& c : crossings) t += c.second;
    return t;
}

InjectivityReport injectivity_report(const Network& network) {
    InjectivityReport r;
    for (std::size_t c = 0; c < network.curves.size(); ++c) {
        r.self_intersections.push_back(count_crossings(network.curves[c], nullptr));
        for (std::size_t d = c + 1; d < network.curves.size(); ++d) {
            r.crossings.push_back({{c, d}, count_crossings(network.curves[c], &network.curves[d])});
        }
    }
    return r;
}

}  // namespace elastinet
