#include "conftc/certificates.hpp"
#include "conftc/closed_forms.hpp"
#include "conftc/isotopy.hpp"
#include "conftc/parser.hpp"
#include "conftc/ring.hpp"
#include "conftc/tensor.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

namespace {

using namespace conftc;
using nlohmann::ordered_json;

struct Flags {
    int m = 3, n = 2, p = 0, s = 2;
    std::string coeff = "auto";
    bool json = false;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double tol = 0;  // 0 = keep instance/default tolerances
};

Coeff resolve_coeff(const Flags& f, Coeff preferred) {
    if (f.coeff == "auto")
        return preferred;
    if (f.coeff == "Z")
        return Coeff::Integers;
    if (f.coeff == "Z2")
        return Coeff::Mod2;
    throw std::invalid_argument("--coeff must be Z, Z2, or auto");
}

RingSpec ring_from(const Flags& f) {
    return make_ring(f.m, f.n, f.p, resolve_coeff(f, f.m % 2 == 1 ? Coeff::Integers : Coeff::Mod2));
}

int run_reduce(const Flags& f, const std::string& expr) {
    ExprPtr ast = parse(expr);
    if (expr.find('@') != std::string::npos) {
        TensorElement e = evaluate_tensor(ring_from(f), f.s, *ast);
        if (f.json) {
            ordered_json j;
            j["input"] = expr;
            j["s"] = f.s;
            j["normal_form"] = e.str();
            j["terms"] = e.term_count();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << e.str() << "\n";
        }
        return 0;
    }
    RingSpec spec = ring_from(f);
    Element e = evaluate_ring(spec, *ast);
    if (f.json) {
        ordered_json j;
        j["input"] = expr;
        j["m"] = spec.m;
        j["n"] = spec.n;
        j["p"] = spec.p;
        j["coeff"] = to_string(spec.coeff);
        j["normal_form"] = e.str();
        j["terms"] = e.term_count();
        if (auto d = e.degree())
            j["degree"] = *d;
        else
            j["degree"] = nullptr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << e.str() << "\n";
    }
    return 0;
}

int run_basis(const Flags& f, int degree) {
    RingSpec spec = ring_from(f);
    if (degree >= 0) {
        if (degree % spec.gen_degree() != 0)
            throw std::invalid_argument("degree must be a multiple of m-1");
        int r = degree / spec.gen_degree();
        std::vector<Monomial> mons =
            r <= spec.n ? basis(spec, r) : std::vector<Monomial>{};
        if (f.json) {
            ordered_json j;
            j["m"] = spec.m;
            j["n"] = spec.n;
            j["p"] = spec.p;
            j["degree"] = degree;
            j["factors"] = r;
            j["count"] = mons.size();
            ordered_json list = ordered_json::array();
            for (const Monomial& mon : mons)
                list.push_back(monomial_str(mon));
            j["monomials"] = std::move(list);
            std::cout << j.dump(2) << "\n";
        } else {
            for (const Monomial& mon : mons)
                std::cout << monomial_str(mon) << "\n";
            std::cout << "count: " << mons.size() << "\n";
        }
        return 0;
    }
    std::vector<Int> pc = poincare_coefficients(spec);
    if (f.json) {
        ordered_json j;
        j["m"] = spec.m;
        j["n"] = spec.n;
        j["p"] = spec.p;
        j["total"] = spec.module_rank().str();
        ordered_json ranks = ordered_json::array();
        for (size_t r = 0; r < pc.size(); ++r)
            ranks.push_back(pc[r].str());
        j["ranks_by_factor_count"] = std::move(ranks);
        std::cout << j.dump(2) << "\n";
    } else {
        for (size_t r = 0; r < pc.size(); ++r)
            std::cout << "degree " << r * spec.gen_degree() << ": " << pc[r].str() << "\n";
        std::cout << "total: " << spec.module_rank().str() << "\n";
    }
    return 0;
}

int run_tc(const Flags& f) {
    TCValue v = tc_s(make_tc_query(f.m, f.n, f.p, f.s));
    if (f.json) {
        ordered_json j;
        j["m"] = f.m;
        j["n"] = f.n;
        j["p"] = f.p;
        j["s"] = f.s;
        j["tc_s"] = v.value;
        j["case"] = v.case_label;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << v.value << "\n" << "case: " << v.case_label << "\n";
    }
    return 0;
}

int run_cat(const Flags& f) {
    int v = cat_conf(f.m, f.n, f.p);
    if (f.json) {
        ordered_json j;
        j["m"] = f.m;
        j["n"] = f.n;
        j["p"] = f.p;
        j["cat"] = v;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << v << "\n";
    }
    return 0;
}

std::vector<int> seeded_relabeling(const RingSpec& spec, std::uint64_t seed) {
    std::vector<int> perm(spec.points() + 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin() + spec.p + 1, perm.end(), rng);
    return perm;
}

int run_certify(const Flags& f, const std::string& kind) {
    if (kind == "w_s") {
        RingSpec spec = make_ring(f.m, f.n, f.p, resolve_coeff(f, Coeff::Mod2));
        TensorElement w = build_w_s(spec, f.s);
        int bound = f.s * (spec.points() - 1) - 1;  // what nonvanishing certifies via mu_s
        if (f.json) {
            ordered_json j;
            j["kind"] = "w_s";
            j["m"] = spec.m;
            j["n"] = spec.n;
            j["p"] = spec.p;
            j["s"] = f.s;
            j["coeff"] = to_string(spec.coeff);
            j["element"] = w.str();
            j["summands"] = w.term_count();
            j["nonzero"] = !w.is_zero();
            j["lower_bound"] = w.is_zero() ? 0 : bound;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << w.str() << "\n"
                      << "summands: " << w.term_count() << "\n"
                      << "lower_bound: " << (w.is_zero() ? 0 : bound) << "\n";
        }
        return w.is_zero() ? 1 : 0;
    }
    Coeff preferred = kind == "mu_s" || kind == "nu_s" ? Coeff::Mod2 : Coeff::Integers;
    RingSpec spec = make_ring(f.m, f.n, f.p, resolve_coeff(f, preferred));
    Certificate cert = build_certificate(kind, spec, f.s);
    VerifyReport rep = verify(cert);
    bool relabel_ok = true;
    if (f.seed_given) {
        Certificate moved = relabel(cert, seeded_relabeling(spec, f.seed));
        VerifyReport moved_rep = verify(moved);
        relabel_ok = moved_rep.lower_bound == cert.length;
    }
    if (f.json) {
        std::cout << certificate_json(cert, rep);
    } else {
        std::cout << "kind: " << cert.kind << "  length: " << cert.length << "\n"
                  << "product: " << cert.product.str() << "\n"
                  << "kernel_ok: " << (rep.kernel_ok ? "yes" : "no")
                  << "  nonzero_ok: " << (rep.nonzero_ok ? "yes" : "no") << "\n"
                  << "lower_bound: " << rep.lower_bound << "\n";
        if (f.seed_given)
            std::cout << "relabel_check: " << (relabel_ok ? "ok" : "FAILED") << "\n";
    }
    return rep.lower_bound == cert.length && relabel_ok ? 0 : 1;
}

int run_zcl(const Flags& f, int max_len) {
    RingSpec spec = ring_from(f);
    if (max_len < 0)
        max_len = upper_bound_dim_conn(space_dim(f.m, f.n, f.p), space_conn(f.m), f.s);
    int v = brute_force_zcl(spec, f.s, max_len);
    if (f.json) {
        ordered_json j;
        j["m"] = f.m;
        j["n"] = f.n;
        j["p"] = f.p;
        j["s"] = f.s;
        j["coeff"] = to_string(spec.coeff);
        j["max_len"] = max_len;
        j["zcl"] = v;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << v << "\n";
    }
    return 0;
}

struct IsotopyDiagnostics {
    double min_separation = 0, radius = 0, max_speed = 0, h = 0;
    double tracking_error = 0, round_trip_error = 0, locality_error = 0;
    bool tracking_ok = false, round_trip_ok = false, locality_ok = false;
};

IsotopyDiagnostics run_diagnostics(const Instance& inst, double tol_override) {
    IsotopyDiagnostics d;
    double tol_inv = tol_override > 0 ? tol_override : inst.tol_inv;
    IsotopyField iso = IsotopyField::build(inst.traj, inst.params.h, inst.params.bump_radius);
    d.min_separation = iso.min_separation();
    d.radius = iso.radius();
    d.max_speed = inst.traj.max_speed();
    d.h = iso.step();
    d.tracking_error = iso.tracking_error(101);
    d.tracking_ok = d.tracking_error <= inst.tol_track;
    // bounding box of the obstacle knots, inflated by the support radius
    Point lo{1e30, 1e30, 0}, hi{-1e30, -1e30, 0};
    for (const ObstaclePath& q : inst.traj.obstacles)
        for (const Point& x : q.points)
            for (int c = 0; c < 3; ++c) {
                lo[c] = std::min(lo[c], x[c]);
                hi[c] = std::max(hi[c], x[c]);
            }
    if (inst.traj.obstacles.empty())
        lo = hi = Point{0, 0, 0};
    double pad = iso.radius() + 0.1;
    int grid = inst.traj.m == 2 ? 10 : 5;
    for (double t : {0.5, 1.0}) {
        for (int a = 0; a < grid; ++a)
            for (int b = 0; b < grid; ++b)
                for (int c = 0; c < (inst.traj.m == 3 ? grid : 1); ++c) {
                    Point x{lo[0] - pad + (hi[0] - lo[0] + 2 * pad) * a / (grid - 1),
                            lo[1] - pad + (hi[1] - lo[1] + 2 * pad) * b / (grid - 1), 0};
                    if (inst.traj.m == 3)
                        x[2] = lo[2] - pad + (hi[2] - lo[2] + 2 * pad) * c / (grid - 1);
                    Point back = iso.flow_forward(t, iso.flow_back(t, x));
                    d.round_trip_error = std::max(d.round_trip_error, dist(back, x));
                }
    }
    d.round_trip_ok = d.round_trip_error <= tol_inv;
    Point far{hi[0] + 10 * pad + 100, hi[1] + 10 * pad + 100, 0};
    d.locality_error = dist(iso.flow_forward(1.0, far), far);
    d.locality_ok = d.locality_error == 0.0;
    return d;
}

int run_isotopy(const Flags& f, const std::string& file) {
    Instance inst = load_instance(file);
    IsotopyDiagnostics d = run_diagnostics(inst, f.tol);
    bool ok = d.tracking_ok && d.round_trip_ok && d.locality_ok;
    if (f.json) {
        ordered_json j;
        j["instance"] = file;
        j["min_separation"] = d.min_separation;
        j["radius"] = d.radius;
        j["max_speed"] = d.max_speed;
        j["h"] = d.h;
        j["tracking_error"] = d.tracking_error;
        j["round_trip_error"] = d.round_trip_error;
        j["locality_error"] = d.locality_error;
        j["ok"] = ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "min_separation: " << d.min_separation << "\n"
                  << "radius: " << d.radius << "\n"
                  << "tracking_error(101): " << d.tracking_error << "\n"
                  << "round_trip_error: " << d.round_trip_error << "\n"
                  << "locality_error: " << d.locality_error << "\n"
                  << (ok ? "ok" : "FAILED") << "\n";
    }
    return ok ? 0 : 1;
}

int run_plan(const Flags& f, const std::string& file) {
    Instance inst = load_instance(file);
    if (f.tol > 0)
        inst.params.tol_snap = f.tol;
    RobotPath path =
        plan_with_moving_obstacles(inst.seq, inst.traj, plan_straight_with_detours, inst.params);
    PathCheck chk = verify_path(path, inst.traj, inst.seq, inst.params.margin);
    if (f.json) {
        ordered_json j;
        j["instance"] = file;
        ordered_json samples = ordered_json::array();
        for (size_t k = 0; k < path.times.size(); ++k) {
            ordered_json row;
            row["t"] = path.times[k];
            ordered_json pts = ordered_json::array();
            for (const Point& x : path.samples[k]) {
                ordered_json coords = ordered_json::array();
                for (int c = 0; c < inst.traj.m; ++c)
                    coords.push_back(x[c]);
                pts.push_back(std::move(coords));
            }
            row["robots"] = std::move(pts);
            samples.push_back(std::move(row));
        }
        j["path"] = std::move(samples);
        j["min_obstacle_clearance"] = chk.min_obstacle_clearance;
        j["min_robot_separation"] = chk.min_robot_separation;
        j["max_visit_error"] = chk.max_visit_error;
        j["ok"] = chk.ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << std::setprecision(12);
        for (size_t k = 0; k < path.times.size(); ++k) {
            std::cout << path.times[k];
            for (const Point& x : path.samples[k])
                for (int c = 0; c < inst.traj.m; ++c)
                    std::cout << " " << x[c];
            std::cout << "\n";
        }
        std::cout << "min_obstacle_clearance: " << chk.min_obstacle_clearance << "\n"
                  << "min_robot_separation: " << chk.min_robot_separation << "\n"
                  << "max_visit_error: " << chk.max_visit_error << "\n"
                  << (chk.ok ? "ok" : "FAILED: " + chk.failure) << "\n";
    }
    return chk.ok ? 0 : 1;
}

/// Reruns the fixed fixture commands and rewrites the stored outputs.
int regenerate_golden(const std::string& dir) {
    struct Fixture {
        const char* name;
        std::function<std::string()> produce;
    };
    auto capture = [](auto&& fn) {
        std::ostringstream buf;
        std::streambuf* old = std::cout.rdbuf(buf.rdbuf());
        fn();
        std::cout.rdbuf(old);
        return buf.str();
    };
    Flags base;
    base.json = true;
    std::vector<Fixture> fixtures = {
        {"reduce_arnold.json",
         [&] {
             Flags f = base;
             f.m = 3;
             f.n = 3;
             return capture([&] { run_reduce(f, "A[3,2]*A[3,1]"); });
         }},
        {"certify_pi_m3n2s2.json",
         [&] {
             Flags f = base;
             f.m = 3;
             f.n = 2;
             return capture([&] { run_certify(f, "pi"); });
         }},
        {"certify_mu_s_m2n3s2.json",
         [&] {
             Flags f = base;
             f.m = 2;
             f.n = 3;
             return capture([&] { run_certify(f, "mu_s"); });
         }},
        {"certify_nu_s_m2n2p2s2.json",
         [&] {
             Flags f = base;
             f.m = 2;
             f.n = 2;
             f.p = 2;
             return capture([&] { run_certify(f, "nu_s"); });
         }},
    };
    for (const Fixture& fix : fixtures) {
        std::string body = fix.produce();
        std::ofstream out(dir + "/" + fix.name, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + dir + "/" + fix.name);
        out << body;
        std::cout << "wrote " << dir << "/" << fix.name << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cohomology of configuration spaces of (punctured) Euclidean space:\n"
                 "normal forms, motion-planning complexity bounds and certificates, and a\n"
                 "numerical moving-to-stationary obstacle reduction."};
    Flags f;
    std::string golden_dir;
    app.add_option("--m", f.m, "ambient dimension (generators live in degree m-1)");
    app.add_option("--n", f.n, "number of movable points");
    app.add_option("--p", f.p, "number of punctures / stationary obstacles");
    app.add_option("--s", f.s, "number of planning stages / tensor factors");
    app.add_option("--coeff", f.coeff, "coefficients: Z, Z2, or auto (parity of m)");
    app.add_flag("--json", f.json, "machine-readable output");
    auto* seed_opt = app.add_option("--seed", f.seed, "seed for randomized cross-checks");
    app.add_option("--tol", f.tol, "tolerance override for numeric checks");
    app.add_option("--golden", golden_dir, "regenerate regression fixtures into this directory");

    std::string expr, kind, file;
    int degree = -1;
    int max_len = -1;
    auto* reduce = app.add_subcommand("reduce", "normal form of an expression");
    reduce->add_option("expression", expr, "generator expression, e.g. \"A[3,2]*A[3,1]\"")
        ->required();
    auto* basis_cmd = app.add_subcommand("basis", "basis monomials / ranks of the ring");
    basis_cmd->add_option("--degree", degree, "restrict to one cohomological degree");
    auto* tc_cmd = app.add_subcommand("tc", "closed-form s-stage complexity with its case label");
    auto* cat_cmd = app.add_subcommand("cat", "closed-form category of the space");
    auto* certify = app.add_subcommand("certify", "build and verify a named lower-bound witness");
    certify->add_option("kind", kind, "pi | mu_s | w_s | nu_s | pi_punctured")->required();
    auto* zcl = app.add_subcommand("zcl", "brute-force zero-divisor cup-length (small instances)");
    zcl->add_option("--max-len", max_len, "search cap (default: dimension bound)");
    auto* isotopy_cmd = app.add_subcommand("isotopy", "diagnostics of the obstacle-freezing flow");
    isotopy_cmd->add_option("instance", file, "instance JSON file")->required();
    auto* plan = app.add_subcommand("plan", "plan around moving obstacles via the reduction");
    plan->add_option("instance", file, "instance JSON file")->required();
    for (CLI::App* sub : {reduce, basis_cmd, tc_cmd, cat_cmd, certify, zcl, isotopy_cmd, plan})
        sub->fallthrough();
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
        f.seed_given = seed_opt->count() > 0;
        if (app.get_subcommands().empty()) {
            if (!golden_dir.empty())
                return regenerate_golden(golden_dir);
            std::cerr << app.help();
            return 2;
        }
        CLI::App* sub = app.get_subcommands().front();
        if (sub == reduce)
            return run_reduce(f, expr);
        if (sub == basis_cmd)
            return run_basis(f, degree);
        if (sub == tc_cmd)
            return run_tc(f);
        if (sub == cat_cmd)
            return run_cat(f);
        if (sub == certify)
            return run_certify(f, kind);
        if (sub == zcl)
            return run_zcl(f, max_len);
        if (sub == isotopy_cmd)
            return run_isotopy(f, file);
        if (sub == plan)
            return run_plan(f, file);
        std::cerr << "unknown subcommand\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const conftc::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const conftc::PlanError& e) {
        std::cerr << "planning failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
