#include "conftc/isotopy.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

using namespace conftc;

namespace {

ObstaclePath line_path(Point a, Point b) {
    return ObstaclePath{{0.0, 1.0}, {a, b}};
}

Trajectory single_moving(Point a, Point b, int m = 2) {
    Trajectory traj;
    traj.m = m;
    traj.obstacles = {line_path(a, b)};
    return traj;
}

}  // namespace

TEST_CASE("piecewise-linear paths interpolate and clamp") {
    ObstaclePath q{{0.0, 0.5, 1.0}, {{0, 0, 0}, {1, 0, 0}, {1, 2, 0}}};
    CHECK(dist(q.at(0.25), Point{0.5, 0, 0}) < 1e-15);
    CHECK(dist(q.at(0.75), Point{1, 1, 0}) < 1e-15);
    CHECK(q.at(-1.0) == Point{0, 0, 0});
    CHECK(q.at(2.0) == Point{1, 2, 0});
}

TEST_CASE("trajectory helpers") {
    Trajectory traj;
    traj.m = 2;
    traj.obstacles = {ObstaclePath{{0.0, 0.4, 1.0}, {{0, 0, 0}, {1, 0, 0}, {1, 0, 0}}},
                      ObstaclePath{{0.0, 0.7, 1.0}, {{5, 0, 0}, {5, 1, 0}, {5, 1, 0}}}};
    CHECK_FALSE(traj.constant());
    CHECK(traj.knot_times() == std::vector<double>{0.0, 0.4, 0.7, 1.0});
    CHECK(traj.max_speed() == doctest::Approx(1.0 / 0.4));

    Trajectory still;
    still.m = 2;
    still.obstacles = {ObstaclePath{{0.0, 1.0}, {{1, 1, 0}, {1, 1, 0}}}};
    CHECK(still.constant());
    CHECK(still.min_separation() == std::numeric_limits<double>::infinity());
}

TEST_CASE("minimum separation is minimized exactly, not sampled at knots") {
    // the two paths close to distance 2d at t = 1/2, far at both knots
    double d = 0.05;
    Trajectory traj;
    traj.m = 2;
    traj.obstacles = {line_path({-1, -d, 0}, {1, -d, 0}), line_path({1, d, 0}, {-1, d, 0})};
    CHECK(traj.min_separation() == doctest::Approx(2 * d).epsilon(1e-12));
}

TEST_CASE("field construction validates its inputs") {
    Trajectory crossing;
    crossing.m = 2;
    crossing.obstacles = {line_path({-1, 0, 0}, {1, 0, 0}), line_path({1, 0, 0}, {-1, 0, 0})};
    CHECK_THROWS_WITH_AS(IsotopyField::build(crossing, 1e-3),
                         doctest::Contains("separation-violation"), std::invalid_argument);

    Trajectory ok = single_moving({0, 0, 0}, {1, 0, 0});
    CHECK_THROWS_WITH_AS(IsotopyField::build(ok, 0.4),
                         doctest::Contains("step-too-large"), std::invalid_argument);
    CHECK_THROWS_AS(IsotopyField::build(ok, -1.0), std::invalid_argument);

    Trajectory badm = single_moving({0, 0, 0}, {1, 0, 0}, 4);
    CHECK_THROWS_AS(IsotopyField::build(badm, 1e-3), std::invalid_argument);

    Trajectory badt;
    badt.m = 2;
    badt.obstacles = {ObstaclePath{{0.0, 0.5}, {{0, 0, 0}, {1, 0, 0}}}};
    CHECK_THROWS_AS(IsotopyField::build(badt, 1e-3), std::invalid_argument);
}

TEST_CASE("a constant trajectory induces the identity flow") {
    Trajectory still;
    still.m = 2;
    still.obstacles = {ObstaclePath{{0.0, 1.0}, {{1, 1, 0}, {1, 1, 0}}}};
    IsotopyField iso = IsotopyField::build(still, 1e-2);
    Point x{1.2, 0.8, 0};
    CHECK(iso.flow_forward(1.0, x) == x);
    CHECK(iso.flow_back(0.7, x) == x);
}

TEST_CASE("obstacle points ride their own bump exactly") {
    Trajectory traj = single_moving({0, 0, 0}, {0.8, 0.3, 0});
    IsotopyField iso = IsotopyField::build(traj, 1e-3);
    Point end = iso.flow_forward(1.0, {0, 0, 0});
    CHECK(dist(end, {0.8, 0.3, 0}) < 1e-12);
    CHECK(iso.tracking_error(21) < 1e-12);
}

TEST_CASE("points beyond every bump never move at all") {
    Trajectory traj = single_moving({0, 0, 0}, {1, 0, 0});
    IsotopyField iso = IsotopyField::build(traj, 1e-3);
    Point far{3.0, 3.0, 0};  // farther than the radius from the whole sweep
    CHECK(iso.flow_forward(1.0, far) == far);
    CHECK(iso.flow_back(1.0, far) == far);
    CHECK(iso.velocity(far, 0.37) == Point{0, 0, 0});
}

TEST_CASE("flow_back inverts flow_forward") {
    Trajectory traj = single_moving({0, 0, 0}, {0.6, 0.4, 0});
    IsotopyField iso = IsotopyField::build(traj, 1e-3);
    CHECK(iso.flow_back(0.0, {0.3, 0.1, 0}) == Point{0.3, 0.1, 0});
    for (double t : {0.3, 0.7, 1.0}) {
        // seeds straddling the plateau, the transition band and the exterior
        for (Point x : {Point{0, 0, 0}, Point{0.15, 0.1, 0}, Point{0.3, -0.2, 0}}) {
            Point round = iso.flow_back(t, iso.flow_forward(t, x));
            CHECK(dist(round, x) < 1e-8);
        }
    }
}

TEST_CASE("the flow in three dimensions moves off-plane points consistently") {
    Trajectory traj = single_moving({0, 0, 0}, {0.5, 0.2, 0.4}, 3);
    IsotopyField iso = IsotopyField::build(traj, 1e-3);
    CHECK(dist(iso.flow_forward(1.0, {0, 0, 0}), {0.5, 0.2, 0.4}) < 1e-12);
    Point x{0.05, -0.08, 0.1};
    CHECK(dist(iso.flow_back(1.0, iso.flow_forward(1.0, x)), x) < 1e-8);
}

TEST_CASE("visit times spread the configurations uniformly") {
    ConfigSequence seq;
    seq.configs = {{{0, 0, 0}}, {{1, 0, 0}}, {{2, 0, 0}}};
    CHECK(seq.s() == 3);
    CHECK(seq.n() == 1);
    CHECK(seq.visit_time(1) == 0.0);
    CHECK(seq.visit_time(2) == 0.5);
    CHECK(seq.visit_time(3) == 1.0);
    ConfigSequence one;
    one.configs = {{{0, 0, 0}}};
    CHECK_THROWS_AS(one.visit_time(1), std::invalid_argument);
}

TEST_CASE("config_clearance is the smallest robot-obstacle distance") {
    std::vector<Point> cfg = {{0, 0, 0}, {3, 0, 0}};
    std::vector<Point> obs = {{1, 0, 0}, {10, 0, 0}};
    CHECK(config_clearance(cfg, obs) == doctest::Approx(1.0));
    CHECK(config_clearance(cfg, {}) == std::numeric_limits<double>::infinity());
}

TEST_CASE("a clear straight-line plan samples the segments uniformly") {
    ConfigSequence seq;
    seq.configs = {{{-1, 0, 0}}, {{1, 0, 0}}};
    PlanParams par;
    par.samples_per_stage = 4;
    RobotPath path = plan_straight_with_detours(seq, {{0, 5, 0}}, par);
    REQUIRE(path.times.size() == 5);
    CHECK(path.times[0] == 0.0);
    CHECK(path.times[4] == 1.0);
    CHECK(dist(path.samples[2][0], {0, 0, 0}) < 1e-12);
    CHECK(dist(path.samples[0][0], seq.configs[0][0]) == 0.0);
    CHECK(dist(path.samples[4][0], seq.configs[1][0]) == 0.0);
}

TEST_CASE("a blocking obstacle is skirted at the clearance radius") {
    ConfigSequence seq;
    seq.configs = {{{-1, 0, 0}}, {{1, 0, 0}}};
    PlanParams par;
    par.clearance = 0.3;
    par.samples_per_stage = 200;
    RobotPath path = plan_straight_with_detours(seq, {{0, 0, 0}}, par);
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& cfg : path.samples)
        lo = std::min(lo, dist(cfg[0], {0, 0, 0}));
    CHECK(lo >= 0.3 * (1 - 1e-3));
    CHECK(lo <= 0.3 * (1 + 1e-2));  // it skirts the disc, not a wide berth
    CHECK(dist(path.samples.back()[0], {1, 0, 0}) == 0.0);
}

TEST_CASE("planner failure modes") {
    PlanParams par;
    par.clearance = 0.3;

    ConfigSequence inside;
    inside.configs = {{{0.1, 0, 0}}, {{1, 0, 0}}};
    CHECK_THROWS_WITH_AS(plan_straight_with_detours(inside, {{0, 0, 0}}, par),
                         doctest::Contains("within the planner clearance"), PlanError);

    // two clearance discs overlapping across the chord
    ConfigSequence through;
    through.configs = {{{-2, 0, 0}}, {{2, 0, 0}}};
    CHECK_THROWS_WITH_AS(plan_straight_with_detours(through, {{-0.2, 0, 0}, {0.2, 0, 0}}, par),
                         doctest::Contains("do not permit straight-line detours"), PlanError);

    // any needed detour off the plane is out of scope
    ConfigSequence volume;
    volume.configs = {{{-1, 0, 0.1}}, {{1, 0, 0.1}}};
    CHECK_THROWS_WITH_AS(plan_straight_with_detours(volume, {{0, 0, 0.1}}, par),
                         doctest::Contains("plane only"), PlanError);
}

TEST_CASE("stationary and moving pictures convert back and forth") {
    Trajectory traj = single_moving({0, 0, 0}, {0.5, 0, 0});
    IsotopyField iso = IsotopyField::build(traj, 1e-3);
    ConfigSequence seq;
    seq.configs = {{{-2, 0, 0}}, {{2, 0, 0}}};
    // configurations far outside the bump freeze to themselves
    ConfigSequence frozen = to_stationary_sequence(seq, iso);
    CHECK(dist(frozen.configs[0][0], seq.configs[0][0]) == 0.0);
    CHECK(dist(frozen.configs[1][0], seq.configs[1][0]) == 0.0);

    RobotPath path;
    path.times = {0.0, 0.5, 1.0};
    path.samples = {{{-2, 0, 0}}, {{2, 2, 0}}, {{2, 0, 0}}};
    RobotPath round = to_moving_path(to_stationary_path(path, iso), iso);
    for (size_t k = 0; k < path.times.size(); ++k)
        CHECK(dist(round.samples[k][0], path.samples[k][0]) < 1e-8);
}

TEST_CASE("conversion refuses a robot that touches a frozen obstacle") {
    Trajectory traj = single_moving({0, 0, 0}, {0.5, 0, 0});
    IsotopyField iso = IsotopyField::build(traj, 1e-3);
    ConfigSequence seq;
    seq.configs = {{{0, 0, 0}}, {{2, 0, 0}}};  // first config sits on the obstacle
    CHECK_THROWS_AS(to_stationary_sequence(seq, iso), PlanError);
}

TEST_CASE("verify_path reports clearance violations with a witness") {
    Trajectory traj = single_moving({0, 0, 0}, {1, 0, 0});
    ConfigSequence seq;
    seq.configs = {{{0.5, 0.01, 0}}, {{0.5, 0.01, 0}}};
    RobotPath path;
    path.times = {0.0, 0.5, 1.0};
    path.samples = {{{0.5, 0.01, 0}}, {{0.5, 0.01, 0}}, {{0.5, 0.01, 0}}};
    PathCheck chk = verify_path(path, traj, seq, 0.05);
    CHECK_FALSE(chk.ok);
    CHECK(chk.witness_sample >= 0);
    CHECK_FALSE(chk.failure.empty());
    CHECK(chk.min_obstacle_clearance < 0.05);
}

TEST_CASE("verify_path reports missed visits") {
    Trajectory traj = single_moving({0, 5, 0}, {1, 5, 0});
    ConfigSequence seq;
    seq.configs = {{{0, 0, 0}}, {{1, 0, 0}}};
    RobotPath path;
    path.times = {0.0, 0.5, 1.0};
    path.samples = {{{0, 0, 0}}, {{0.5, 0, 0}}, {{1.1, 0, 0}}};
    PathCheck chk = verify_path(path, traj, seq, 0.05);
    CHECK_FALSE(chk.ok);
    CHECK(chk.max_visit_error == doctest::Approx(0.1));
}

TEST_CASE("the full reduction plans around a moving obstacle") {
    Trajectory traj = single_moving({0, 2, 0}, {0.5, 2, 0});
    ConfigSequence seq;
    seq.configs = {{{-1, 0, 0}}, {{1, 0, 0}}};
    PlanParams par;
    par.samples_per_stage = 50;
    RobotPath path = plan_with_moving_obstacles(seq, traj, plan_straight_with_detours, par);
    PathCheck chk = verify_path(path, traj, seq, par.margin);
    CHECK(chk.ok);
    CHECK(dist(path.samples.front()[0], seq.configs[0][0]) == 0.0);
    CHECK(dist(path.samples.back()[0], seq.configs[1][0]) == 0.0);
}

TEST_CASE("the reduction rejects a goal inside the margin") {
    Trajectory traj = single_moving({0, 0, 0}, {1, 0, 0});
    ConfigSequence seq;
    seq.configs = {{{-1, 0, 0}}, {{1.001, 0, 0}}};  // ends almost on the final obstacle spot
    PlanParams par;
    CHECK_THROWS_WITH_AS(plan_with_moving_obstacles(seq, traj, plan_straight_with_detours, par),
                         doctest::Contains("within the margin"), PlanError);
}

TEST_CASE("instances load from structured JSON") {
    const char* path = "/tmp/conftc_test_instance.json";
    {
        std::ofstream out(path);
        out << R"({
          "m": 2, "n": 1, "p": 1, "s": 2,
          "obstacles": [{"times": [0.0, 1.0], "points": [[0.0, 2.0], [0.5, 2.0]]}],
          "configs": [[[-1.0, 0.0]], [[1.0, 0.0]]],
          "h": 0.002, "margin": 0.1, "tol_track": 5e-5
        })";
    }
    Instance inst = load_instance(path);
    CHECK(inst.traj.m == 2);
    CHECK(inst.traj.p() == 1);
    CHECK(inst.seq.s() == 2);
    CHECK(inst.params.h == 0.002);
    CHECK(inst.params.margin == 0.1);
    CHECK(inst.tol_track == 5e-5);
    CHECK(inst.tol_inv == 1e-3);  // default survives
    std::remove(path);

    CHECK_THROWS_AS(load_instance("/tmp/conftc_no_such_instance.json"), std::runtime_error);

    const char* bad = "/tmp/conftc_bad_instance.json";
    {
        std::ofstream out(bad);
        out << R"({"m": 2, "n": 1, "p": 2, "s": 2,
                   "obstacles": [{"times": [0.0, 1.0], "points": [[0.0, 2.0], [0.5, 2.0]]}],
                   "configs": [[[-1.0, 0.0]], [[1.0, 0.0]]]})";
    }
    CHECK_THROWS_WITH_AS(load_instance(bad), doctest::Contains("disagrees with the obstacle list"),
                         std::runtime_error);
    std::remove(bad);
}
