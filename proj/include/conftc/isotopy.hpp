#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conftc {

/// Ambient points; only m in {2, 3} is supported numerically and the unused
/// coordinate stays exactly 0 for m = 2.
using Point = std::array<double, 3>;

double dist(const Point& a, const Point& b);

/// Piecewise-linear obstacle path over [0, 1].
struct ObstaclePath {
    std::vector<double> times;  // strictly increasing, times.front() = 0, back() = 1
    std::vector<Point> points;  // one per knot

    Point at(double t) const;
};

struct Trajectory {
    int m = 2;
    std::vector<ObstaclePath> obstacles;

    int p() const { return static_cast<int>(obstacles.size()); }
    bool constant() const;
    /// Minimum over all t of the pairwise obstacle distance, minimized
    /// exactly on every common-linearity interval (not sampled).
    /// Infinity when fewer than two obstacles.
    double min_separation() const;
    double max_speed() const;
    /// Sorted union of all knot times (the velocity-field breakpoints).
    std::vector<double> knot_times() const;
};

/// Flow of the velocity field v(x, t) = sum_i b_i(x, t) q_i'(t), where b_i
/// is a plateau bump of radius r about q_i(t): identically 1 within r/2,
/// identically 0 beyond r, smoothstep in between. Pairwise-disjoint supports
/// make every obstacle point travel exactly with its own velocity, so
/// forward(t, q_i(0)) = q_i(t) up to integrator error, while points beyond
/// every support never move at all. Integration is classical 4th-order with
/// steps restarted at the PL breakpoints.
class IsotopyField {
public:
    /// radius <= 0 selects 0.4 x the certified min separation (or 0.5 when
    /// there are fewer than two obstacles). Throws invalid_argument on
    /// nonpositive separation ("separation-violation") or when
    /// max_speed * h >= radius / 4 ("step-too-large").
    static IsotopyField build(const Trajectory& traj, double h, double radius = 0.0);

    Point velocity(const Point& x, double t) const;

    /// The flow from time 0 to t: carries q_i(0) to q_i(t).
    Point flow_forward(double t, const Point& x) const;
    /// Inverse of flow_forward, integrated backward from t to 0: carries the
    /// time-t picture to the stationary time-0 picture, q_i(t) to q_i(0).
    /// This is the ambient isotopy; flow_back(0, x) = x exactly.
    Point flow_back(double t, const Point& x) const;

    const Trajectory& trajectory() const { return traj_; }
    double step() const { return h_; }
    double radius() const { return radius_; }
    double min_separation() const { return minsep_; }

    /// Max over obstacles and a uniform time grid of
    /// |flow_forward(t, q_i(0)) - q_i(t)|, one continuous pass per obstacle.
    double tracking_error(int grid_count) const;

    /// Max over the given seeds of |flow_forward(1, x) - reference| where the
    /// reference is integrated with the given step. Exposes raw integrator
    /// error for convergence-order measurements.
    double flow_error_vs_reference(const std::vector<Point>& seeds, double ref_h) const;

private:
    struct Window {  // one common-linearity interval of all obstacles
        double t0 = 0;
        double t1 = 1;
        std::vector<Point> base;      // obstacle positions at t0
        std::vector<Point> vel;       // constant velocities on the window
    };

    Trajectory traj_;
    double h_ = 1e-3;
    double radius_ = 0.5;
    double minsep_ = 0;
    std::vector<Window> windows_;

    Point velocity_in(const Window& w, const Point& x, double t) const;
    Point integrate_window(const Window& w, Point x, double from, double to) const;
};

/// s robot configurations, each n points; configuration i is to be attained
/// at time (i-1)/(s-1).
struct ConfigSequence {
    std::vector<std::vector<Point>> configs;

    int s() const { return static_cast<int>(configs.size()); }
    int n() const { return configs.empty() ? 0 : static_cast<int>(configs[0].size()); }
    double visit_time(int i) const;  // (i-1)/(s-1), i in 1..s
};

/// Robot path sampled on a uniform time grid over [0, 1].
struct RobotPath {
    std::vector<double> times;
    std::vector<std::vector<Point>> samples;  // one n-tuple per time
};

/// Smallest distance from any point of the configuration to any obstacle point.
double config_clearance(const std::vector<Point>& config, const std::vector<Point>& obstacles);

/// Conversion maps between the moving-obstacle problem and the stationary
/// one: a sequence/path valid against the moving obstacles Q(t) maps to one
/// valid against the fixed initial set {q_i(0)}, and back.
ConfigSequence to_stationary_sequence(const ConfigSequence& seq, const IsotopyField& iso);
RobotPath to_stationary_path(const RobotPath& path, const IsotopyField& iso);
RobotPath to_moving_path(const RobotPath& path, const IsotopyField& iso);

struct PlanParams {
    double h = 1e-3;            // integrator step
    double bump_radius = 0.0;   // 0 = automatic from separation
    double clearance = 0.2;     // detour radius kept around stationary obstacles
    double margin = 0.05;       // verified clearance to the moving obstacles
    int samples_per_stage = 100;
    double tol_snap = 1e-3;     // max correction when pinning visit samples
};

struct PlanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Interpolates the configurations with straight segments, replacing any
/// stretch that comes within `clearance` of a stationary obstacle by a
/// circular arc around it (plane only). Fails with PlanError when endpoints
/// sit inside the clearance discs, detour chords overlap, or a detour would
/// be needed off the plane.
RobotPath plan_straight_with_detours(const ConfigSequence& seq,
                                     const std::vector<Point>& obstacles,
                                     const PlanParams& par);

using StationaryPlanner = std::function<RobotPath(
    const ConfigSequence&, const std::vector<Point>&, const PlanParams&)>;

struct PathCheck {
    bool ok = false;
    double min_obstacle_clearance = 0;  // robots vs moving obstacles, all samples
    double min_robot_separation = 0;    // pairwise, all samples; inf for n = 1
    double max_visit_error = 0;         // |path(visit time) - config|
    int witness_sample = -1;            // first failing sample, or -1
    std::string failure;                // empty when ok
};

/// Re-checks a path numerically against the MOVING obstacles at every
/// sample: obstacle clearance >= margin, robots pairwise distinct, and the
/// prescribed configurations attained at their visit times.
PathCheck verify_path(const RobotPath& path, const Trajectory& traj,
                      const ConfigSequence& seq, double margin);

/// The full reduction: freeze the obstacles through the isotopy, plan in the
/// stationary picture, carry the plan back, pin the visit samples to the
/// prescribed configurations, and verify against the moving obstacles.
/// Throws PlanError when the inputs are infeasible for the planner or the
/// verification fails.
RobotPath plan_with_moving_obstacles(const ConfigSequence& seq, const Trajectory& traj,
                                     const StationaryPlanner& planner,
                                     const PlanParams& par);

/// Problem instance as stored on disk (structured JSON: dimensions,
/// obstacle breakpoint lists, configuration list, tolerances).
struct Instance {
    Trajectory traj;
    ConfigSequence seq;
    PlanParams params;
    double tol_track = 1e-4;
    double tol_inv = 1e-3;
};

Instance load_instance(const std::string& path);

}  // namespace conftc
