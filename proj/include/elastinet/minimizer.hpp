#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elastinet/network.hpp"

namespace elastinet {

/// Free degrees of freedom of a network, by kind:
///  - closed: every point;
///  - drop: every point but the pinned closure point;
///  - theta / generalized theta: both junction positions, both frame angles,
///    and the interior points of every curve;
///  - degenerate theta: the four-point, its frame angle, interior points;
///  - double drop: interior points of both drops (four-point pinned), or of
///    the first drop only when `symmetric` (the second is its point reflection).
class DofLayout {
public:
    explicit DofLayout(const Network& shape, bool symmetric = false);

    std::size_t size() const { return size_; }
    const Network& shape() const { return shape_; }
    bool symmetric() const { return symmetric_; }

    std::vector<double> pack(const Network& network) const;
    Network unpack(std::span<const double> x) const;

    double energy(std::span<const double> x) const;
    /// Writes dF/dx into `grad` (resized to size()).
    double energy_gradient(std::span<const double> x, std::vector<double>& grad) const;

    /// DOF indices touched by each energy term (vertex, ghost and length terms).
    /// Their union over terms sharing a DOF is the Hessian sparsity pattern.
    std::vector<std::vector<std::size_t>> term_dofs() const;

    struct FreePoint {
        std::size_t dof = 0;  // x at dof, y at dof + 1
        std::size_t curve = 0;
        std::size_t index = 0;
    };
    std::vector<FreePoint> free_points() const;

private:
    enum class Source { Free, Junction, Fixed, Mirror };
    struct PointRef {
        Source source = Source::Fixed;
        std::size_t index = 0;  // dof offset, junction index, or flat mirror target
    };

    Network shape_;
    bool symmetric_ = false;
    std::size_t size_ = 0;
    std::vector<std::vector<PointRef>> refs_;
    std::vector<std::size_t> junction_pos_;
    std::vector<std::size_t> junction_frame_;

    std::vector<std::size_t> point_dofs(std::size_t curve, std::size_t i) const;
};

/// Analytic gradient of the discrete F_1 with respect to the layout's DOF.
std::vector<double> discrete_gradient(const Network& network);

/// Both methods move interior curve points along their discrete normals only;
/// tangential motion is a reparametrization, handled by resampling.
/// Newton: damped Newton steps on a finite-difference sparse Hessian.
enum class DescentMethod { Newton, GradientDescent };
const char* to_string(DescentMethod m);
DescentMethod descent_method_from_string(const std::string& name);

struct OptimizationConfig {
    std::size_t n_per_curve = 0;  // resample every curve to this many edges first; 0 keeps input
    std::size_t max_iters = 20000;
    double grad_tol = 1e-9;
    double energy_rel_tol = 1e-13;
    std::size_t stall_window = 50;  // iterations over which energy_rel_tol is measured
    std::size_t resample_every = 25;
    double resample_jump_tol = 1e-3;  // resamples raising F by more than this * F are rejected
    double backtrack_factor = 0.5;
    double armijo = 1e-4;
    double initial_step = 1e-3;  // first step, as a fraction of the network diameter
    std::size_t max_backtracks = 60;
    DescentMethod method = DescentMethod::Newton;
    double degeneration_ratio = 1e-3;
    double jitter = 0.0;  // random normal displacement of free points before descent
    std::uint64_t seed = 1;
};

/// Throws InvalidConfig on non-positive or inconsistent entries.
void check_config(const OptimizationConfig& config);

enum class Termination { Converged, MaxIters, LineSearchFailed, DegenerationDetected };
const char* to_string(Termination t);

struct ResampleEvent {
    std::size_t iteration = 0;
    double before = 0.0;
    double after = 0.0;
    bool accepted = false;
};

struct OptimizationResult {
    Network final;
    std::vector<double> energy_trace;
    std::vector<double> elastic_trace;
    std::vector<double> length_trace;
    std::vector<double> grad_norm_trace;  // normal (shape) gradient, largest entry
    std::vector<ResampleEvent> resamples;
    double junction_gap = 0.0;
    double angle_defect = 0.0;
    Termination termination = Termination::MaxIters;
    std::size_t iterations = 0;
    std::string message;
};

/// True when no step raised F by more than rel_tol * |F|, ignoring the jumps
/// caused by accepted resamples.
bool trace_nonincreasing(const OptimizationResult& result, double rel_tol = 1e-12);

OptimizationResult minimize(const Network& initial, const OptimizationConfig& config);

/// Minimizes over symmetric double drops: only the first drop moves, the second
/// is -gamma1(1 - t). The four-point is moved to the origin.
OptimizationResult minimize_symmetric_double_drop(const Network& initial,
                                                  const OptimizationConfig& config);

/// Symmetric double drop from a drop through the origin.
Network symmetric_double_drop(const Network& drop);

/// "iter,F,E,L,grad_norm" rows.
std::string trace_csv(const OptimizationResult& result);

struct RecoveryResult {
    Network theta;
    double t1 = 0.0;  // arclength fractions of the horizontal-tangent cuts
    double t2 = 0.0;
    double inserted_length = 0.0;
    bool exact = false;  // cuts fell on horizontal edges short enough to keep all turning data
};

/// Cuts a degenerate theta network at its four-point and at the first
/// horizontal-tangent point of each drop, and glues in three horizontal
/// segments of length 1/n.
RecoveryResult recovery_sequence(const Network& degenerate, std::size_t n);

struct InjectivityReport {
    std::vector<std::size_t> self_intersections;  // per curve
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> crossings;
    std::size_t total() const;
};

InjectivityReport injectivity_report(const Network& network);

}  // namespace elastinet
