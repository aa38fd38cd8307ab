#include "logconv/json_io.hpp"

#include <fstream>

#include "logconv/errors.hpp"

namespace logconv {

namespace {

const json& expect(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw input_error(where + ": missing field '" + key + "'");
    return j.at(key);
}

int expect_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw input_error(where + ": expected an integer");
    return j.get<int>();
}

std::set<int> parse_ext(const json& j, const std::string& where, int dim) {
    std::set<int> ext;
    if (!j.is_array()) throw input_error(where + ": expected an array of 1-based indices");
    for (size_t i = 0; i < j.size(); ++i) {
        int v = expect_int(j[i], where + "[" + std::to_string(i) + "]");
        if (v < 1 || v > dim)
            throw input_error(where + "[" + std::to_string(i) + "]: index " + std::to_string(v) +
                              " out of range 1.." + std::to_string(dim));
        ext.insert(v - 1);
    }
    return ext;
}

}  // namespace

Rat parse_rat(const json& j, const std::string& where) {
    if (!j.is_string()) throw input_error(where + ": rationals must be strings like \"3/2\"");
    try {
        return Rat::parse(j.get<std::string>());
    } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
    }
}

RatVec parse_point(const json& j, const std::string& where) {
    if (!j.is_array()) throw input_error(where + ": expected an array of rationals");
    RatVec v;
    for (size_t i = 0; i < j.size(); ++i)
        v.push_back(parse_rat(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

HPolytope parse_hpolytope(const json& j, const std::string& where) {
    int dim = expect_int(expect(j, "dim", where), where + ".dim");
    const json& rows = expect(j, "rows", where);
    if (!rows.is_array()) throw input_error(where + ".rows: expected an array");
    std::vector<LPRow> parsed;
    for (size_t i = 0; i < rows.size(); ++i) {
        std::string rw = where + ".rows[" + std::to_string(i) + "]";
        RatVec a = parse_point(expect(rows[i], "a", rw), rw + ".a");
        if (static_cast<int>(a.size()) != dim)
            throw input_error(rw + ".a: length != dim");
        parsed.push_back({std::move(a), parse_rat(expect(rows[i], "b", rw), rw + ".b")});
    }
    try {
        return HPolytope::make(dim, std::move(parsed));
    } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
    }
}

Cell parse_cell(const json& j, const std::string& where) {
    Cell c;
    c.poly = parse_hpolytope(j, where);
    if (j.contains("ext")) c.ext = parse_ext(j.at("ext"), where + ".ext", c.poly.dim);
    return c;
}

ExtremalProblem parse_extremal_problem(const json& j, const std::string& where) {
    Cell u = parse_cell(expect(j, "U", where), where + ".U");
    const json& s = expect(j, "S", where);
    if (!s.is_array() || s.empty())
        throw input_error(where + ".S: expected a non-empty array");

    // Entries are cells, or point clouds {"points": [...], "ext": [...]}.
    std::vector<Cell> cells;
    std::vector<RatVec> points;
    std::set<int> rays;
    for (size_t i = 0; i < s.size(); ++i) {
        std::string sw = where + ".S[" + std::to_string(i) + "]";
        if (s[i].is_object() && s[i].contains("points")) {
            const json& pts = s[i].at("points");
            if (!pts.is_array()) throw input_error(sw + ".points: expected an array");
            for (size_t k = 0; k < pts.size(); ++k)
                points.push_back(parse_point(pts[k], sw + ".points[" + std::to_string(k) + "]"));
            if (s[i].contains("ext")) {
                auto e = parse_ext(s[i].at("ext"), sw + ".ext", u.poly.dim);
                rays.insert(e.begin(), e.end());
            }
        } else {
            cells.push_back(parse_cell(s[i], sw));
        }
    }
    try {
        if (!cells.empty() && points.empty())
            return ExtremalProblem::from_cells(std::move(cells), std::move(u));
        if (!cells.empty()) {
            // mixed form: collapse the cells into their vertex sets
            for (const auto& c : cells) {
                auto vd = cell_vdata(c);
                points.insert(points.end(), vd.vertices.begin(), vd.vertices.end());
                rays.insert(vd.rays.begin(), vd.rays.end());
            }
        }
        return ExtremalProblem::from_points(std::move(points), std::move(rays), std::move(u));
    } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
    }
}

CrossSpec parse_cross_spec(const json& j, const std::string& where) {
    const json& f = expect(j, "factors", where);
    if (!f.is_array()) throw input_error(where + ".factors: expected an array");
    std::vector<CrossFactor> factors;
    for (size_t i = 0; i < f.size(); ++i)
        factors.push_back(
            {parse_extremal_problem(f[i], where + ".factors[" + std::to_string(i) + "]")});
    try {
        return CrossSpec::make(std::move(factors));
    } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
    }
}

ReinhardtDomain parse_reinhardt_domain(const json& j, const std::string& where,
                                       const Rat& truncation) {
    int n = expect_int(expect(j, "n", where), where + ".n");
    if (n < 1) throw input_error(where + ".n: dimension must be >= 1");

    std::vector<bool> flags;
    auto parse_flags = [&](const json& fj, const std::string& fw) {
        if (!fj.is_array() || static_cast<int>(fj.size()) != n)
            throw input_error(fw + ": expected " + std::to_string(n) + " booleans");
        for (size_t i = 0; i < fj.size(); ++i) {
            if (!fj[i].is_boolean())
                throw input_error(fw + "[" + std::to_string(i) + "]: expected a boolean");
            flags.push_back(fj[i].get<bool>());
        }
    };

    if (j.contains("polydisc")) {
        // {|z_j| < r_j} given by exact log-radii; cells are the truncated
        // boxes [log r_j − M, log r_j] with every coordinate receding.
        const json& pd = j.at("polydisc");
        std::string pw = where + ".polydisc";
        RatVec log_radii = parse_point(expect(pd, "log_radii", pw), pw + ".log_radii");
        if (static_cast<int>(log_radii.size()) != n)
            throw input_error(pw + ".log_radii: length != n");
        if (pd.contains("axis_meets"))
            parse_flags(pd.at("axis_meets"), pw + ".axis_meets");
        else
            flags.assign(n, true);
        if (truncation.sgn() <= 0)
            throw input_error(where + ": truncation must be positive");
        std::vector<LPRow> rows;
        std::set<int> ext;
        for (int c = 0; c < n; ++c) {
            RatVec up(n, Rat(0)), down(n, Rat(0));
            up[c] = Rat(1);
            down[c] = Rat(-1);
            rows.push_back({std::move(up), log_radii[c]});
            rows.push_back({std::move(down), truncation - log_radii[c]});
            ext.insert(c);
        }
        Cell cell{HPolytope::make(n, std::move(rows)), std::move(ext)};
        try {
            return ReinhardtDomain::make(n, {std::move(cell)}, std::move(flags));
        } catch (const input_error& e) {
            throw input_error(where + ": " + e.what());
        }
    }

    const json& cj = expect(j, "cells", where);
    if (!cj.is_array()) throw input_error(where + ".cells: expected an array");
    std::vector<Cell> cells;
    for (size_t i = 0; i < cj.size(); ++i)
        cells.push_back(parse_cell(cj[i], where + ".cells[" + std::to_string(i) + "]"));
    parse_flags(expect(j, "axis_meets", where), where + ".axis_meets");
    try {
        return ReinhardtDomain::make(n, std::move(cells), std::move(flags));
    } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
    }
}

ReinhardtCross parse_reinhardt_cross(const json& j, const std::string& where,
                                     const Rat& truncation) {
    const json& bj = expect(j, "blocks", where);
    if (!bj.is_array()) throw input_error(where + ".blocks: expected an array");
    std::vector<ReinhardtCross::Block> blocks;
    for (size_t i = 0; i < bj.size(); ++i) {
        std::string bw = where + ".blocks[" + std::to_string(i) + "]";
        blocks.push_back(
            {parse_reinhardt_domain(expect(bj[i], "A", bw), bw + ".A", truncation),
             parse_reinhardt_domain(expect(bj[i], "D", bw), bw + ".D", truncation)});
    }
    try {
        return ReinhardtCross::make(std::move(blocks));
    } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
    }
}

std::vector<RatVec> parse_points_file(const json& j, const std::string& where) {
    const json& pts = expect(j, "points", where);
    if (!pts.is_array()) throw input_error(where + ".points: expected an array");
    std::vector<RatVec> out;
    for (size_t i = 0; i < pts.size(); ++i)
        out.push_back(parse_point(pts[i], where + ".points[" + std::to_string(i) + "]"));
    return out;
}

std::vector<LogPoint> parse_log_points_file(const json& j, const std::string& where) {
    const json& pts = expect(j, "points", where);
    if (!pts.is_array()) throw input_error(where + ".points: expected an array");
    std::vector<LogPoint> out;
    for (size_t i = 0; i < pts.size(); ++i) {
        std::string pw = where + ".points[" + std::to_string(i) + "]";
        if (!pts[i].is_array()) throw input_error(pw + ": expected an array");
        LogPoint p;
        for (size_t c = 0; c < pts[i].size(); ++c) {
            std::string cw = pw + "[" + std::to_string(c) + "]";
            if (pts[i][c].is_string() && pts[i][c].get<std::string>() == "-inf")
                p.coords.push_back(std::nullopt);
            else
                p.coords.push_back(parse_rat(pts[i][c], cw));
        }
        out.push_back(std::move(p));
    }
    return out;
}

json rat_json(const Rat& r) { return r.str(); }

json point_json(const RatVec& v) {
    json j = json::array();
    for (const auto& c : v) j.push_back(c.str());
    return j;
}

json vdata_json(const VData& vd) {
    json j;
    j["dim"] = vd.dim;
    j["vertices"] = json::array();
    for (const auto& v : vd.vertices) j["vertices"].push_back(point_json(v));
    j["rays"] = json::array();
    for (int r : vd.rays) j["rays"].push_back(r + 1);
    return j;
}

json hpolytope_json(const HPolytope& poly) {
    json j;
    j["dim"] = poly.dim;
    j["rows"] = json::array();
    for (const auto& r : poly.rows) j["rows"].push_back({{"a", point_json(r.a)}, {"b", r.b.str()}});
    return j;
}

json cell_json(const Cell& cell) {
    json j = hpolytope_json(cell.poly);
    j["ext"] = json::array();
    for (int r : cell.ext) j["ext"].push_back(r + 1);
    return j;
}

json phi_identities_json(const PhiIdentityReport& rep) {
    json out;
    for (const auto& e : rep.entries) {
        json item;
        item["pass"] = e.pass;
        if (!e.pass) item["counterexample"] = e.counterexample;
        out[e.property] = std::move(item);
    }
    out["flagged"] = rep.flagged;
    return out;
}

json cross_report_json(const CrossReport& rep) {
    json out;
    out["samples"] = rep.samples;
    out["classes"] = {{"inside", rep.inside}, {"boundary", rep.boundary}, {"outside", rep.outside}};
    out["violations"] = json::array();
    for (const auto& v : rep.violations)
        out["violations"].push_back(
            {{"sample", v.sample_index}, {"point", point_json(v.point)}, {"detail", v.detail}});
    if (!rep.notes.empty()) out["notes"] = rep.notes;
    return out;
}

json reinhardt_report_json(const ReinhardtCrossReport& rep) {
    json out = cross_report_json(rep.hull_report);
    out["axis_checks"] = json::array();
    for (const auto& c : rep.axis_checks)
        out["axis_checks"].push_back({{"block", c.block + 1},
                                      {"coord", c.coord + 1},
                                      {"witness", c.witness},
                                      {"in_cross", c.in_cross}});
    out["hstar_samples_checked"] = rep.hstar_samples_checked;
    out["hstar_mismatches"] = rep.hstar_mismatches;
    return out;
}

json doh_json(const DohResult& res) {
    json out;
    out["status"] = res.is_doh ? "doh" : res.inconclusive ? "inconclusive" : "not_doh";
    if (!res.reason.empty()) out["reason"] = res.reason;
    if (res.witness) out["witness"] = point_json(*res.witness);
    if (res.axis) out["axis"] = *res.axis + 1;
    return out;
}

json envelope_json(const EnvelopeResult& res) {
    json out;
    out["hull"] = vdata_json(res.hull);
    out["axis_meets"] = res.axis_meets;
    if (res.hrep) out["hrep"] = hpolytope_json(*res.hrep);
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

}  // namespace logconv
