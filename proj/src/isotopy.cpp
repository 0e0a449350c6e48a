#include "conftc/isotopy.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace conftc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Point operator+(const Point& a, const Point& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Point operator-(const Point& a, const Point& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Point operator*(double c, const Point& a) {
    return {c * a[0], c * a[1], c * a[2]};
}

double dot(const Point& a, const Point& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Point& a) {
    return std::sqrt(dot(a, a));
}

/// 1 on [0, 1/2], 0 beyond 1, C^2 quintic step in between.
double plateau(double u) {
    if (u <= 0.5)
        return 1.0;
    if (u >= 1.0)
        return 0.0;
    double w = 2.0 * (u - 0.5);
    return 1.0 - ((6.0 * w - 15.0) * w + 10.0) * w * w * w;
}

void validate_trajectory(const Trajectory& traj) {
    if (traj.m != 2 && traj.m != 3)
        throw std::invalid_argument("trajectory: only m = 2 or 3 is supported");
    for (const ObstaclePath& q : traj.obstacles) {
        if (q.times.size() < 2 || q.times.size() != q.points.size())
            throw std::invalid_argument("trajectory: obstacle needs matching times/points, >= 2 knots");
        if (q.times.front() != 0.0 || q.times.back() != 1.0)
            throw std::invalid_argument("trajectory: obstacle times must run from 0 to 1");
        for (size_t k = 1; k < q.times.size(); ++k)
            if (!(q.times[k] > q.times[k - 1]))
                throw std::invalid_argument("trajectory: obstacle times must increase strictly");
    }
}

}  // namespace

double dist(const Point& a, const Point& b) {
    return norm(a - b);
}

Point ObstaclePath::at(double t) const {
    if (t <= times.front())
        return points.front();
    if (t >= times.back())
        return points.back();
    size_t k = std::upper_bound(times.begin(), times.end(), t) - times.begin() - 1;
    double u = (t - times[k]) / (times[k + 1] - times[k]);
    return points[k] + u * (points[k + 1] - points[k]);
}

bool Trajectory::constant() const {
    for (const ObstaclePath& q : obstacles)
        for (const Point& x : q.points)
            if (dist(x, q.points.front()) != 0.0)
                return false;
    return true;
}

std::vector<double> Trajectory::knot_times() const {
    std::vector<double> ts{0.0, 1.0};
    for (const ObstaclePath& q : obstacles)
        ts.insert(ts.end(), q.times.begin(), q.times.end());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

double Trajectory::min_separation() const {
    if (p() < 2)
        return kInf;
    std::vector<double> ts = knot_times();
    double best = kInf;
    for (size_t w = 0; w + 1 < ts.size(); ++w) {
        double a = ts[w], len = ts[w + 1] - ts[w];
        for (int i = 0; i < p(); ++i) {
            Point pi = obstacles[i].at(a);
            Point vi = (1.0 / len) * (obstacles[i].at(ts[w + 1]) - pi);
            for (int j = i + 1; j < p(); ++j) {
                Point c = pi - obstacles[j].at(a);
                Point d = vi - (1.0 / len) * (obstacles[j].at(ts[w + 1]) - obstacles[j].at(a));
                // minimize |c + tau d|^2 over tau in [0, len]
                double dd = dot(d, d);
                double tau = dd > 0 ? std::clamp(-dot(c, d) / dd, 0.0, len) : 0.0;
                best = std::min(best, norm(c + tau * d));
            }
        }
    }
    return best;
}

double Trajectory::max_speed() const {
    double best = 0;
    for (const ObstaclePath& q : obstacles)
        for (size_t k = 0; k + 1 < q.times.size(); ++k)
            best = std::max(best, dist(q.points[k + 1], q.points[k]) /
                                      (q.times[k + 1] - q.times[k]));
    return best;
}

IsotopyField IsotopyField::build(const Trajectory& traj, double h, double radius) {
    validate_trajectory(traj);
    if (!(h > 0))
        throw std::invalid_argument("isotopy: step must be positive");
    IsotopyField f;
    f.traj_ = traj;
    f.h_ = h;
    f.minsep_ = traj.min_separation();
    if (traj.p() >= 2 && !(f.minsep_ > 0))
        throw std::invalid_argument("separation-violation: obstacle trajectories meet");
    double auto_r = traj.p() >= 2 ? 0.4 * f.minsep_ : 0.5;
    f.radius_ = radius > 0 ? std::min(radius, auto_r) : auto_r;
    if (traj.max_speed() * h >= f.radius_ / 4)
        throw std::invalid_argument("step-too-large: per-step displacement must stay under radius/4");
    std::vector<double> ts = traj.knot_times();
    for (size_t w = 0; w + 1 < ts.size(); ++w) {
        Window win;
        win.t0 = ts[w];
        win.t1 = ts[w + 1];
        for (const ObstaclePath& q : traj.obstacles) {
            Point base = q.at(win.t0);
            win.base.push_back(base);
            win.vel.push_back((1.0 / (win.t1 - win.t0)) * (q.at(win.t1) - base));
        }
        f.windows_.push_back(std::move(win));
    }
    return f;
}

Point IsotopyField::velocity_in(const Window& w, const Point& x, double t) const {
    Point v{0, 0, 0};
    for (size_t i = 0; i < w.base.size(); ++i) {
        Point center = w.base[i] + (t - w.t0) * w.vel[i];
        double b = plateau(dist(x, center) / radius_);
        if (b > 0)
            v = v + b * w.vel[i];
    }
    return v;
}

Point IsotopyField::velocity(const Point& x, double t) const {
    if (windows_.empty())
        return {0, 0, 0};
    for (const Window& w : windows_)
        if (t <= w.t1)
            return velocity_in(w, x, std::max(t, w.t0));
    return velocity_in(windows_.back(), x, windows_.back().t1);
}

Point IsotopyField::integrate_window(const Window& w, Point x, double from, double to) const {
    double len = to - from;
    if (len == 0)
        return x;
    int steps = std::max(1, static_cast<int>(std::ceil(std::abs(len) / h_)));
    double dt = len / steps;
    for (int k = 0; k < steps; ++k) {
        double t = from + k * dt;
        Point k1 = velocity_in(w, x, t);
        Point k2 = velocity_in(w, x + (dt / 2) * k1, t + dt / 2);
        Point k3 = velocity_in(w, x + (dt / 2) * k2, t + dt / 2);
        Point k4 = velocity_in(w, x + dt * k3, t + dt);
        x = x + (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

Point IsotopyField::flow_forward(double t, const Point& x) const {
    Point y = x;
    for (const Window& w : windows_) {
        if (w.t1 <= 0.0 || w.t0 >= t)
            continue;
        y = integrate_window(w, y, std::max(w.t0, 0.0), std::min(w.t1, t));
    }
    return y;
}

Point IsotopyField::flow_back(double t, const Point& x) const {
    Point y = x;
    for (auto it = windows_.rbegin(); it != windows_.rend(); ++it) {
        if (it->t0 >= t || it->t1 <= 0.0)
            continue;
        y = integrate_window(*it, y, std::min(it->t1, t), std::max(it->t0, 0.0));
    }
    return y;
}

double IsotopyField::tracking_error(int grid_count) const {
    double err = 0;
    if (grid_count < 2)
        return err;
    for (const ObstaclePath& q : traj_.obstacles) {
        Point x = q.points.front();
        double prev = 0;
        for (int k = 1; k < grid_count; ++k) {
            double t = static_cast<double>(k) / (grid_count - 1);
            for (const Window& w : windows_) {
                if (w.t1 <= prev || w.t0 >= t)
                    continue;
                x = integrate_window(w, x, std::max(w.t0, prev), std::min(w.t1, t));
            }
            err = std::max(err, dist(x, q.at(t)));
            prev = t;
        }
    }
    return err;
}

double IsotopyField::flow_error_vs_reference(const std::vector<Point>& seeds,
                                             double ref_h) const {
    IsotopyField ref = *this;
    ref.h_ = ref_h;
    double err = 0;
    for (const Point& x : seeds)
        err = std::max(err, dist(flow_forward(1.0, x), ref.flow_forward(1.0, x)));
    return err;
}

double ConfigSequence::visit_time(int i) const {
    if (s() < 2)
        throw std::invalid_argument("configuration sequence needs s >= 2");
    return static_cast<double>(i - 1) / (s() - 1);
}

double config_clearance(const std::vector<Point>& config, const std::vector<Point>& obstacles) {
    double best = kInf;
    for (const Point& x : config)
        for (const Point& q : obstacles)
            best = std::min(best, dist(x, q));
    return best;
}

namespace {

std::vector<Point> initial_positions(const Trajectory& traj) {
    std::vector<Point> out;
    for (const ObstaclePath& q : traj.obstacles)
        out.push_back(q.points.front());
    return out;
}

std::vector<Point> positions_at(const Trajectory& traj, double t) {
    std::vector<Point> out;
    for (const ObstaclePath& q : traj.obstacles)
        out.push_back(q.at(t));
    return out;
}

}  // namespace

ConfigSequence to_stationary_sequence(const ConfigSequence& seq, const IsotopyField& iso) {
    std::vector<Point> frozen = initial_positions(iso.trajectory());
    ConfigSequence out = seq;
    for (int i = 1; i <= seq.s(); ++i) {
        double t = seq.visit_time(i);
        for (Point& x : out.configs[i - 1])
            x = iso.flow_back(t, x);
        if (config_clearance(out.configs[i - 1], frozen) <= 1e-9)
            throw PlanError("stationary configuration " + std::to_string(i) +
                            " collides with a frozen obstacle");
    }
    return out;
}

RobotPath to_stationary_path(const RobotPath& path, const IsotopyField& iso) {
    std::vector<Point> frozen = initial_positions(iso.trajectory());
    RobotPath out = path;
    for (size_t k = 0; k < path.times.size(); ++k) {
        for (Point& x : out.samples[k])
            x = iso.flow_back(path.times[k], x);
        if (config_clearance(out.samples[k], frozen) <= 1e-9)
            throw PlanError("collision with a frozen obstacle at sample " + std::to_string(k));
    }
    return out;
}

RobotPath to_moving_path(const RobotPath& path, const IsotopyField& iso) {
    RobotPath out = path;
    for (size_t k = 0; k < path.times.size(); ++k) {
        for (Point& x : out.samples[k])
            x = iso.flow_forward(path.times[k], x);
        if (config_clearance(out.samples[k],
                             positions_at(iso.trajectory(), path.times[k])) <= 1e-9)
            throw PlanError("collision with a moving obstacle at sample " + std::to_string(k));
    }
    return out;
}

namespace {

/// Polyline from a to b dodging the clearance discs; plane geometry.
std::vector<Point> detour_polyline(const Point& a, const Point& b,
                                   const std::vector<Point>& obstacles, double clearance) {
    struct Hit {
        double u1, u2;
        Point q;
    };
    Point w = b - a;
    double ww = dot(w, w);
    std::vector<Hit> hits;
    for (const Point& q : obstacles) {
        if (dist(a, q) <= clearance || dist(b, q) <= clearance)
            throw PlanError("configuration lies within the planner clearance of an obstacle");
        if (ww == 0)
            continue;
        double u = std::clamp(dot(q - a, w) / ww, 0.0, 1.0);
        if (dist(a + u * w, q) >= clearance)
            continue;
        // chord of the clearance circle: |a + u w - q|^2 = clearance^2
        Point c = a - q;
        double half = std::sqrt(dot(c, w) * dot(c, w) -
                                ww * (dot(c, c) - clearance * clearance));
        hits.push_back({(-dot(c, w) - half) / ww, (-dot(c, w) + half) / ww, q});
    }
    if (!hits.empty()) {
        bool planar = a[2] == 0 && b[2] == 0;
        for (const Hit& h : hits)
            planar = planar && h.q[2] == 0;
        if (!planar)
            throw PlanError("detours are implemented in the plane only");
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.u1 < y.u1; });
    for (size_t k = 0; k + 1 < hits.size(); ++k)
        if (hits[k].u2 >= hits[k + 1].u1)
            throw PlanError("clearances do not permit straight-line detours");
    std::vector<Point> poly{a};
    for (const Hit& h : hits) {
        Point p1 = a + h.u1 * w;
        Point p2 = a + h.u2 * w;
        double t1 = std::atan2(p1[1] - h.q[1], p1[0] - h.q[0]);
        double t2 = std::atan2(p2[1] - h.q[1], p2[0] - h.q[0]);
        double delta = std::remainder(t2 - t1, 2 * M_PI);
        if (std::abs(std::abs(delta) - M_PI) < 1e-12)
            delta = M_PI;  // diametral chord: fixed orientation for determinism
        int steps = std::max(2, static_cast<int>(std::ceil(std::abs(delta) / (M_PI / 64))));
        poly.push_back(p1);
        for (int k = 1; k < steps; ++k) {
            double ang = t1 + delta * k / steps;
            poly.push_back({h.q[0] + clearance * std::cos(ang),
                            h.q[1] + clearance * std::sin(ang), 0.0});
        }
        poly.push_back(p2);
    }
    poly.push_back(b);
    return poly;
}

double point_segment_distance(const Point& q, const Point& a, const Point& b) {
    Point w = b - a;
    double ww = dot(w, w);
    double u = ww > 0 ? std::clamp(dot(q - a, w) / ww, 0.0, 1.0) : 0.0;
    return dist(a + u * w, q);
}

/// Constant-speed positions along a polyline at fractions k/samples, k=0..samples.
std::vector<Point> sample_polyline(const std::vector<Point>& poly, int samples) {
    std::vector<double> cum{0};
    for (size_t k = 0; k + 1 < poly.size(); ++k)
        cum.push_back(cum.back() + dist(poly[k], poly[k + 1]));
    double total = cum.back();
    std::vector<Point> out;
    for (int k = 0; k <= samples; ++k) {
        if (total == 0) {
            out.push_back(poly.front());
            continue;
        }
        double target = total * k / samples;
        size_t seg = std::upper_bound(cum.begin(), cum.end(), target) - cum.begin();
        seg = std::min(std::max<size_t>(seg, 1), poly.size() - 1) - 1;
        double len = cum[seg + 1] - cum[seg];
        double u = len > 0 ? (target - cum[seg]) / len : 0.0;
        out.push_back(poly[seg] + u * (poly[seg + 1] - poly[seg]));
    }
    out.front() = poly.front();
    out.back() = poly.back();
    return out;
}

}  // namespace

RobotPath plan_straight_with_detours(const ConfigSequence& seq,
                                     const std::vector<Point>& obstacles,
                                     const PlanParams& par) {
    int s = seq.s(), n = seq.n(), k = par.samples_per_stage;
    if (s < 2 || n < 1)
        throw PlanError("planner needs at least two configurations of at least one robot");
    RobotPath path;
    int total = (s - 1) * k;
    for (int j = 0; j <= total; ++j)
        path.times.push_back(static_cast<double>(j) / total);
    path.samples.assign(total + 1, std::vector<Point>(n));
    for (int stage = 0; stage + 1 < s; ++stage) {
        for (int r = 0; r < n; ++r) {
            std::vector<Point> poly = detour_polyline(seq.configs[stage][r],
                                                      seq.configs[stage + 1][r], obstacles,
                                                      par.clearance);
            // arcs are polygonal, so allow their chords to dip a hair inside
            for (const Point& q : obstacles)
                for (size_t e = 0; e + 1 < poly.size(); ++e)
                    if (point_segment_distance(q, poly[e], poly[e + 1]) <
                        par.clearance * (1 - 1e-3))
                        throw PlanError("clearances do not permit straight-line detours");
            std::vector<Point> pts = sample_polyline(poly, k);
            for (int j = 0; j <= k; ++j)
                path.samples[stage * k + j][r] = pts[j];
        }
    }
    return path;
}

PathCheck verify_path(const RobotPath& path, const Trajectory& traj,
                      const ConfigSequence& seq, double margin) {
    PathCheck chk;
    chk.min_obstacle_clearance = kInf;
    chk.min_robot_separation = kInf;
    size_t count = path.times.size();
    if (count == 0 || path.samples.size() != count) {
        chk.failure = "empty or inconsistent path";
        return chk;
    }
    for (size_t k = 0; k < count; ++k) {
        double clear = config_clearance(path.samples[k], positions_at(traj, path.times[k]));
        chk.min_obstacle_clearance = std::min(chk.min_obstacle_clearance, clear);
        double sep = kInf;
        const std::vector<Point>& cfg = path.samples[k];
        for (size_t r = 0; r < cfg.size(); ++r)
            for (size_t q = r + 1; q < cfg.size(); ++q)
                sep = std::min(sep, dist(cfg[r], cfg[q]));
        chk.min_robot_separation = std::min(chk.min_robot_separation, sep);
        if (chk.witness_sample < 0 && (clear < margin || sep <= 1e-9)) {
            chk.witness_sample = static_cast<int>(k);
            chk.failure = clear < margin ? "obstacle clearance below margin at sample " +
                                               std::to_string(k)
                                         : "robots collide at sample " + std::to_string(k);
        }
    }
    for (int i = 1; i <= seq.s(); ++i) {
        double t = seq.visit_time(i);
        size_t idx = static_cast<size_t>(std::lround(t * (count - 1)));
        if (idx >= count || std::abs(path.times[idx] - t) > 1e-9) {
            chk.failure = "visit time " + std::to_string(t) + " is not on the sample grid";
            return chk;
        }
        for (int r = 0; r < seq.n(); ++r)
            chk.max_visit_error = std::max(
                chk.max_visit_error, dist(path.samples[idx][r], seq.configs[i - 1][r]));
    }
    if (chk.max_visit_error > 1e-9 && chk.failure.empty())
        chk.failure = "prescribed configuration missed at a visit time";
    chk.ok = chk.failure.empty();
    return chk;
}

RobotPath plan_with_moving_obstacles(const ConfigSequence& seq, const Trajectory& traj,
                                     const StationaryPlanner& planner,
                                     const PlanParams& par) {
    if (seq.s() < 2)
        throw PlanError("need at least two configurations");
    for (int i = 1; i <= seq.s(); ++i) {
        if (static_cast<int>(seq.configs[i - 1].size()) != seq.n())
            throw PlanError("configurations disagree on the robot count");
        double clear = config_clearance(seq.configs[i - 1],
                                        positions_at(traj, seq.visit_time(i)));
        if (clear < par.margin)
            throw PlanError("configuration " + std::to_string(i) +
                            " is within the margin of an obstacle at its visit time");
    }
    IsotopyField iso = IsotopyField::build(traj, par.h, par.bump_radius);
    ConfigSequence frozen_seq = to_stationary_sequence(seq, iso);
    RobotPath stationary = planner(frozen_seq, initial_positions(traj), par);
    RobotPath moving = to_moving_path(stationary, iso);
    size_t count = moving.times.size();
    for (int i = 1; i <= seq.s(); ++i) {
        double t = seq.visit_time(i);
        size_t idx = static_cast<size_t>(std::lround(t * (count - 1)));
        if (idx >= count || std::abs(moving.times[idx] - t) > 1e-9)
            throw PlanError("planner grid misses a visit time");
        for (int r = 0; r < seq.n(); ++r) {
            Point& got = moving.samples[idx][r];
            double err = dist(got, seq.configs[i - 1][r]);
            if (err > par.tol_snap)
                throw PlanError("round trip misses configuration " + std::to_string(i) +
                                " by " + std::to_string(err));
            got = seq.configs[i - 1][r];  // pin the visit exactly
        }
    }
    PathCheck chk = verify_path(moving, traj, seq, par.margin);
    if (!chk.ok)
        throw PlanError("verification failed: " + chk.failure);
    return moving;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open instance file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    Instance inst;
    inst.traj.m = j.at("m").get<int>();
    int n = j.at("n").get<int>();
    int p = j.at("p").get<int>();
    int s = j.at("s").get<int>();
    auto read_point = [&](const nlohmann::json& arr) {
        if (!arr.is_array() || static_cast<int>(arr.size()) != inst.traj.m)
            throw std::runtime_error("instance: point dimension disagrees with m");
        Point x{0, 0, 0};
        for (int c = 0; c < inst.traj.m; ++c)
            x[c] = arr[c].get<double>();
        return x;
    };
    for (const nlohmann::json& jq : j.at("obstacles")) {
        ObstaclePath q;
        for (const nlohmann::json& t : jq.at("times"))
            q.times.push_back(t.get<double>());
        for (const nlohmann::json& pt : jq.at("points"))
            q.points.push_back(read_point(pt));
        inst.traj.obstacles.push_back(std::move(q));
    }
    if (inst.traj.p() != p)
        throw std::runtime_error("instance: p disagrees with the obstacle list");
    for (const nlohmann::json& jc : j.at("configs")) {
        std::vector<Point> cfg;
        for (const nlohmann::json& pt : jc)
            cfg.push_back(read_point(pt));
        if (static_cast<int>(cfg.size()) != n)
            throw std::runtime_error("instance: configuration size disagrees with n");
        inst.seq.configs.push_back(std::move(cfg));
    }
    if (inst.seq.s() != s)
        throw std::runtime_error("instance: s disagrees with the configuration list");
    validate_trajectory(inst.traj);
    inst.params.h = j.value("h", inst.params.h);
    inst.params.bump_radius = j.value("bump_radius", inst.params.bump_radius);
    inst.params.clearance = j.value("clearance", inst.params.clearance);
    inst.params.margin = j.value("margin", inst.params.margin);
    inst.params.samples_per_stage = j.value("samples_per_stage", inst.params.samples_per_stage);
    inst.params.tol_snap = j.value("tol_snap", inst.params.tol_snap);
    inst.tol_track = j.value("tol_track", inst.tol_track);
    inst.tol_inv = j.value("tol_inv", inst.tol_inv);
    return inst;
}

}  // namespace conftc
