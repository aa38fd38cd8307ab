// logconv — exact convex extremal functions, convex crosses, and envelopes
// of holomorphy of Reinhardt domains, with seeded verification campaigns.
//
// Exit codes: 0 = all checks passed / computation succeeded,
//             1 = a counterexample or failed check (see the report),
//             2 = input error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "logconv/errors.hpp"
#include "logconv/json_io.hpp"

using namespace logconv;

namespace {

struct RunConfig {
    std::string spec_path, domain_path, a_path, d_path, points_path, out_path;
    int samples = 1000;
    uint64_t seed = 1;
    std::string truncation = "64";  // default 2^6
    int precision = 12;
    bool moduli = false;
    bool allow_inexact = false;
    std::string mu = "1/2";
};

json config_json(const std::string& command, const RunConfig& cfg) {
    json j;
    j["command"] = command;
    if (!cfg.spec_path.empty()) j["spec"] = cfg.spec_path;
    if (!cfg.domain_path.empty()) j["domain"] = cfg.domain_path;
    if (!cfg.a_path.empty()) j["A"] = cfg.a_path;
    if (!cfg.d_path.empty()) j["D"] = cfg.d_path;
    if (!cfg.points_path.empty()) j["points"] = cfg.points_path;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["truncation"] = cfg.truncation;
    j["precision"] = cfg.precision;
    if (command == "phi verify") j["mu"] = cfg.mu;
    if (cfg.moduli) j["moduli"] = true;
    return j;
}

// Reports must be byte-identical across runs with the same config, so the
// canonical report pins timing_ms to 0; measured wall time goes to stderr.
int emit(const std::string& command, const RunConfig& cfg, json results, json violations,
         std::chrono::steady_clock::time_point started, int exit_code) {
    json report;
    report["command"] = command;
    report["config"] = config_json(command, cfg);
    report["results"] = std::move(results);
    report["violations"] = std::move(violations);
    report["timing_ms"] = 0;
    std::string text = report.dump(2) + "\n";
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) throw input_error("cannot write '" + cfg.out_path + "'");
        out << text;
    } else {
        std::cout << text;
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cerr << command << ": " << (exit_code == 0 ? "ok" : "failed") << " in " << elapsed
              << " ms\n";
    return exit_code;
}

Rat parse_flag_rat(const std::string& s, const std::string& what) {
    try {
        return Rat::parse(s);
    } catch (const input_error& e) {
        throw input_error(what + ": " + e.what());
    }
}

int cmd_phi_eval(const RunConfig& cfg) {
    auto started = std::chrono::steady_clock::now();
    auto prob = parse_extremal_problem(load_json_file(cfg.spec_path), "spec");
    auto points = parse_points_file(load_json_file(cfg.points_path), "points");
    json values = json::array();
    for (const auto& x : points) {
        Rat v = phi(prob, x);
        values.push_back({{"point", point_json(x)}, {"value", v.str()}});
    }
    return emit("phi eval", cfg, {{"values", values}}, json::array(), started, 0);
}

int cmd_phi_verify(const RunConfig& cfg) {
    auto started = std::chrono::steady_clock::now();
    auto prob = parse_extremal_problem(load_json_file(cfg.spec_path), "spec");
    Rat mu = parse_flag_rat(cfg.mu, "--mu");

    SplitMix64 rng(cfg.seed);
    std::vector<RatVec> samples;
    for (int i = 0; i < cfg.samples; ++i) samples.push_back(sample_interior_point(prob.u_vdata, rng));
    auto chain = shrink_chain(prob, 3);
    auto rep = verify_phi_identities(prob, mu, samples, chain);

    json violations = json::array();
    for (const auto& e : rep.entries)
        if (!e.pass) violations.push_back({{"property", e.property}, {"counterexample", e.counterexample}});
    return emit("phi verify", cfg, phi_identities_json(rep), violations, started, rep.all_pass() ? 0 : 1);
}

int cmd_cross_verify(const RunConfig& cfg) {
    auto started = std::chrono::steady_clock::now();
    auto spec = parse_cross_spec(load_json_file(cfg.spec_path), "spec");
    auto rep = verify_cross_theorem(spec, cfg.samples, cfg.seed);
    json violations = json::array();
    for (const auto& v : rep.violations)
        violations.push_back(
            {{"sample", v.sample_index}, {"point", point_json(v.point)}, {"detail", v.detail}});
    return emit("cross verify", cfg, cross_report_json(rep), violations, started,
                rep.ok() ? 0 : 1);
}

int cmd_doh(const RunConfig& cfg) {
    auto started = std::chrono::steady_clock::now();
    Rat trunc = parse_flag_rat(cfg.truncation, "--truncation");
    auto dom = parse_reinhardt_domain(load_json_file(cfg.domain_path), "domain", trunc);
    auto res = is_doh(dom, cfg.samples, cfg.seed);
    json violations = json::array();
    if (!res.is_doh) violations.push_back(doh_json(res));
    return emit("reinhardt doh", cfg, doh_json(res), violations, started, res.is_doh ? 0 : 1);
}

int cmd_envelope(const RunConfig& cfg) {
    auto started = std::chrono::steady_clock::now();
    Rat trunc = parse_flag_rat(cfg.truncation, "--truncation");
    auto dom = parse_reinhardt_domain(load_json_file(cfg.domain_path), "domain", trunc);
    auto res = envelope(dom);
    return emit("reinhardt envelope", cfg, envelope_json(res), json::array(), started, 0);
}

int cmd_hstar(const RunConfig& cfg) {
    auto started = std::chrono::steady_clock::now();
    Rat trunc = parse_flag_rat(cfg.truncation, "--truncation");
    auto a = parse_reinhardt_domain(load_json_file(cfg.a_path), "A", trunc);
    auto d = parse_reinhardt_domain(load_json_file(cfg.d_path), "D", trunc);

    std::vector<LogPoint> points;
    if (cfg.moduli) {
        if (!cfg.allow_inexact)
            throw input_error(
                "--moduli converts decimal moduli to log coordinates at --precision digits; "
                "pass --allow-inexact to acknowledge the rounding");
        auto raw = parse_points_file(load_json_file(cfg.points_path), "points");
        for (const auto& m : raw) points.push_back(log_point(m, cfg.precision));
    } else {
        points = parse_log_points_file(load_json_file(cfg.points_path), "points");
    }

    json values = json::array();
    for (const auto& p : points) {
        Rat v = h_star(a, d, p);
        json coords = json::array();
        for (const auto& c : p.coords) coords.push_back(c ? json(c->str()) : json("-inf"));
        values.push_back({{"point", coords}, {"value", v.str()}});
    }
    return emit("reinhardt hstar", cfg, {{"values", values}}, json::array(), started, 0);
}

int cmd_reinhardt_cross_verify(const RunConfig& cfg) {
    auto started = std::chrono::steady_clock::now();
    Rat trunc = parse_flag_rat(cfg.truncation, "--truncation");
    auto cross = parse_reinhardt_cross(load_json_file(cfg.spec_path), "spec", trunc);
    auto rep = cross_envelope_verify(cross, cfg.samples, cfg.seed);
    json violations = json::array();
    for (const auto& v : rep.hull_report.violations)
        violations.push_back(
            {{"sample", v.sample_index}, {"point", point_json(v.point)}, {"detail", v.detail}});
    for (const auto& c : rep.axis_checks)
        if (!c.in_cross)
            violations.push_back({{"axis_check", {{"block", c.block + 1}, {"coord", c.coord + 1}}},
                                  {"detail", "axis witness not in the cross"}});
    for (const auto& m : rep.hstar_mismatches) violations.push_back({{"detail", m}});
    return emit("reinhardt cross-verify", cfg, reinhardt_report_json(rep), violations, started,
                rep.ok() ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact convex extremal functions, crosses, and Reinhardt envelopes"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--samples", cfg.samples, "number of campaign samples");
        cmd->add_option("--seed", cfg.seed, "64-bit campaign seed");
        cmd->add_option("--out", cfg.out_path, "write the JSON report here instead of stdout");
        cmd->add_option("--truncation", cfg.truncation,
                        "box depth for modulus-space shorthand domains (rational)");
        cmd->add_option("--precision", cfg.precision, "decimal digits for modulus I/O");
    };

    CLI::App* phi_cmd = app.add_subcommand("phi", "convex extremal function");
    phi_cmd->require_subcommand(1);
    CLI::App* phi_eval = phi_cmd->add_subcommand("eval", "evaluate phi at given points");
    phi_eval->add_option("--spec", cfg.spec_path, "extremal problem JSON")->required();
    phi_eval->add_option("--points", cfg.points_path, "points JSON")->required();
    add_common(phi_eval);
    CLI::App* phi_verify = phi_cmd->add_subcommand("verify", "identity suite on one instance");
    phi_verify->add_option("--spec", cfg.spec_path, "extremal problem JSON")->required();
    phi_verify->add_option("--mu", cfg.mu, "sublevel parameter in (0,1)");
    add_common(phi_verify);

    CLI::App* cross_cmd = app.add_subcommand("cross", "convex crosses");
    cross_cmd->require_subcommand(1);
    CLI::App* cross_verify = cross_cmd->add_subcommand("verify", "trichotomy campaign");
    cross_verify->add_option("--spec", cfg.spec_path, "cross spec JSON")->required();
    add_common(cross_verify);

    CLI::App* rh = app.add_subcommand("reinhardt", "Reinhardt domains");
    rh->require_subcommand(1);
    CLI::App* doh = rh->add_subcommand("doh", "domain-of-holomorphy check");
    doh->add_option("--domain", cfg.domain_path, "domain JSON")->required();
    add_common(doh);
    CLI::App* env = rh->add_subcommand("envelope", "envelope of holomorphy");
    env->add_option("--domain", cfg.domain_path, "domain JSON")->required();
    add_common(env);
    CLI::App* hstar = rh->add_subcommand("hstar", "relative extremal function");
    hstar->add_option("--A", cfg.a_path, "inner domain JSON")->required();
    hstar->add_option("--D", cfg.d_path, "outer domain JSON")->required();
    hstar->add_option("--points", cfg.points_path, "points JSON")->required();
    hstar->add_flag("--moduli", cfg.moduli, "points file holds decimal moduli, not log coordinates");
    hstar->add_flag("--allow-inexact", cfg.allow_inexact,
                    "acknowledge that --moduli conversion rounds");
    add_common(hstar);
    CLI::App* rcv = rh->add_subcommand("cross-verify", "cross theorem campaign in log space");
    rcv->add_option("--spec", cfg.spec_path, "Reinhardt cross JSON")->required();
    add_common(rcv);

    CLI11_PARSE(app, argc, argv);

    try {
        if (phi_eval->parsed()) return cmd_phi_eval(cfg);
        if (phi_verify->parsed()) return cmd_phi_verify(cfg);
        if (cross_verify->parsed()) return cmd_cross_verify(cfg);
        if (doh->parsed()) return cmd_doh(cfg);
        if (env->parsed()) return cmd_envelope(cfg);
        if (hstar->parsed()) return cmd_hstar(cfg);
        if (rcv->parsed()) return cmd_reinhardt_cross_verify(cfg);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const invariant_error& e) {
        // A failed internal cross-check is a counterexample to the library's
        // own claims; surface it as one.
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
