#pragma once

// System-file parsing and the CLI job runner shared by the rrc binary and
// the tests.
//
// Input grammar: three labeled sections, '#' comments, one polynomial per
// line:
//     params: y1 y2 y3
//     vars: x1 x2
//     polys:
//     x1^2 + x2^2 - y1
//     x1*x2 + y2*x2 + y3*x1

#include <fstream>
#include <iostream>
#include <sstream>

#include "jsonio.hpp"
#include "parse.hpp"

namespace rrc {

inline ParametricSystem parse_system(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<std::string> params, vars;
    std::vector<std::pair<int, std::string>> poly_lines;
    enum { None, Params, Vars, Polys } section = None;

    auto split_names = [](const std::string& s) {
        std::vector<std::string> out;
        std::istringstream is(s);
        std::string w;
        while (is >> w) out.push_back(w);
        return out;
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto strip = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            size_t b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        if (line.rfind("params:", 0) == 0) {
            params = split_names(line.substr(7));
            section = Params;
        } else if (line.rfind("vars:", 0) == 0) {
            vars = split_names(line.substr(5));
            section = Vars;
        } else if (line.rfind("polys:", 0) == 0) {
            std::string rest = strip(line.substr(6));
            if (!rest.empty()) poly_lines.push_back({lineno, rest});
            section = Polys;
        } else if (section == Params) {
            for (auto& w : split_names(line)) params.push_back(w);
        } else if (section == Vars) {
            for (auto& w : split_names(line)) vars.push_back(w);
        } else if (section == Polys) {
            poly_lines.push_back({lineno, line});
        } else {
            throw ParseError(lineno, 1, "expected a section header (params:, vars:, polys:)");
        }
    }
    if (params.empty()) throw ParseError(lineno, 1, "no parameters declared");
    if (vars.empty()) throw ParseError(lineno, 1, "no variables declared");
    if (poly_lines.empty()) throw ParseError(lineno, 1, "empty polynomial list");
    CtxPtr ctx;
    try {
        ctx = VarContext::make(params, vars);
    } catch (const Error& e) {
        throw ParseError(lineno, 1, e.what());
    }
    std::vector<MultiPoly> polys;
    for (auto& [ln, txt] : poly_lines) polys.push_back(parse_poly(ctx, txt, ln));
    try {
        return ParametricSystem::make(ctx, std::move(polys));
    } catch (const Error& e) {
        throw ParseError(lineno, 1, e.what());
    }
}

inline ParametricSystem parse_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_system(ss.str());
}

// render a system back into the input grammar
inline std::string render_system(const ParametricSystem& sys) {
    std::ostringstream os;
    os << "params:";
    for (auto& p : sys.ctx->params()) os << " " << p;
    os << "\nvars:";
    for (auto& v : sys.ctx->vars()) os << " " << v;
    os << "\npolys:\n";
    for (auto& f : sys.polys) os << f.str() << "\n";
    return os.str();
}

struct JobConfig {
    std::string input_path;
    std::string mode = "hermite-full"; // hermite-weak | hermite-full | sturm |
                                       // cross-validate | matrix-only | sample-points
    std::vector<std::string> x_order;  // permutation of the declared variables
    std::uint64_t seed = 42;           // fixed default for reproducibility
    std::string json_path;
    bool print_matrix = false;
    int lambda = -1;
    std::uint32_t prime = 65521;
    std::string fast_mode = "auto"; // auto | on | off
    // sample-points mode input
    std::vector<std::string> sp_params;
    std::vector<std::string> sp_polys;
};

namespace detail {

inline OrderSpec order_from(const JobConfig& cfg, const ParametricSystem& sys) {
    if (cfg.x_order.empty()) return OrderSpec::block();
    std::vector<int> perm;
    for (auto& name : cfg.x_order) {
        int slot = sys.ctx->slot_of(name);
        if (slot < 0 || !sys.ctx->is_var_slot(slot)) throw Error("--x-order names unknown variable " + name);
        perm.push_back(slot);
    }
    return OrderSpec::block(perm);
}

inline void write_json(const JobConfig& cfg, const Json& j, std::ostream& out) {
    if (cfg.json_path.empty()) return;
    std::ofstream f(cfg.json_path);
    if (!f) throw Error("cannot write " + cfg.json_path);
    f << j.dump(2) << "\n";
    out << "json written to " << cfg.json_path << "\n";
}

inline void print_result(const ClassificationResult& r, std::ostream& out) {
    out << "algorithm: " << r.algorithm << "  (delta = " << r.delta << ", seed = " << r.seed
        << ")\n";
    out << "w_infinity: " << r.w_infinity.str() << "\n";
    if (r.w_H) out << "w_H: " << r.w_H->str() << "\n";
    if (!r.minors.empty()) {
        out << "leading principal minors:\n";
        for (size_t i = 0; i < r.minors.size(); ++i)
            out << "  M" << i + 1 << " = " << r.minors[i].str() << "\n";
    }
    if (!r.subresultants.empty()) {
        out << "subresultant coefficients:\n";
        for (size_t i = 0; i < r.subresultants.size(); ++i)
            out << "  s" << i << " = " << r.subresultants[i].str() << "\n";
    }
    out << "cells (" << r.cells.size() << "):\n";
    for (auto& c : r.cells) {
        out << "  signs [";
        for (size_t i = 0; i < c.signs.size(); ++i) out << (i ? "," : "") << (c.signs[i] > 0 ? "+" : "-");
        out << "]  at (";
        for (size_t i = 0; i < c.sample.size(); ++i) out << (i ? ", " : "") << c.sample[i].get_str();
        out << ")  ->  " << c.count << " real solution" << (c.count == 1 ? "" : "s") << "\n";
    }
    out << "formulas (" << r.realizability << "):\n";
    for (auto& [count, conds] : r.formulas) {
        out << "  " << count << " real: ";
        for (size_t k = 0; k < conds.size(); ++k) {
            out << (k ? "  v  " : "") << "[";
            for (size_t i = 0; i < conds[k].size(); ++i)
                out << (i ? "," : "") << (conds[k][i] > 0 ? "+" : "-");
            out << "]";
        }
        out << "\n";
    }
    for (auto& w : r.warnings) out << "warning: " << w << "\n";
}

} // namespace detail

// Executes the configured job.  Exit codes: 0 success, 2 NotZeroDimensional,
// 3 IdenticallyZeroDeterminant, 4 parse error, 1 anything else.
inline int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.mode == "sample-points") {
            if (cfg.sp_params.empty()) throw Error("sample-points needs --params");
            CtxPtr yctx = VarContext::make(cfg.sp_params, {})->params_only();
            std::vector<MultiPoly> gs;
            for (auto& s : cfg.sp_polys) gs.push_back(parse_poly(yctx, s));
            std::vector<std::string> warnings;
            auto pts = sample_points(gs, yctx, &warnings);
            Json j;
            j["points"] = Json::array();
            for (auto& p : pts) j["points"].push_back(point_json(p));
            if (!warnings.empty()) j["warnings"] = warnings;
            out << j.dump(2) << "\n";
            if (!cfg.json_path.empty()) {
                std::ofstream f(cfg.json_path);
                f << j.dump(2) << "\n";
            }
            return 0;
        }

        ParametricSystem sys = parse_system_file(cfg.input_path);
        OrderSpec order = detail::order_from(cfg, sys);

        if (cfg.mode == "matrix-only") {
            HermiteMatrix H = cfg.lambda >= 0 ? interp_hermite(sys, cfg.lambda, order)
                                              : drl_matrix(sys, order);
            Json j;
            j["delta"] = H.delta();
            Json basis = Json::array();
            for (auto& b : H.basis.b)
                basis.push_back(MultiPoly::monomial(sys.ctx, b, Rat(1)).str());
            j["basis"] = basis;
            j["w_infinity"] = H.w_inf.str();
            Json rows = Json::array();
            for (int i = 0; i < H.delta(); ++i) {
                Json row = Json::array();
                for (int k = 0; k < H.delta(); ++k) row.push_back(H.h.at(i, k).str());
                rows.push_back(row);
            }
            j["matrix"] = rows;
            if (cfg.print_matrix) {
                out << "basis:";
                for (auto& b : j["basis"]) out << " " << b.get<std::string>();
                out << "\nw_infinity: " << H.w_inf.str() << "\n";
                for (int i = 0; i < H.delta(); ++i) {
                    out << "[";
                    for (int k = 0; k < H.delta(); ++k)
                        out << (k ? ", " : "") << H.h.at(i, k).str();
                    out << "]\n";
                }
            } else {
                out << "delta = " << H.delta() << ", w_infinity = " << H.w_inf.str() << "\n";
            }
            detail::write_json(cfg, j, out);
            return 0;
        }

        if (cfg.mode == "hermite-weak") {
            auto r = weak_rrc_hermite(sys, cfg.seed, order);
            detail::print_result(r, out);
            detail::write_json(cfg, result_json(r), out);
            return 0;
        }
        if (cfg.mode == "hermite-full") {
            RrcOptions opt;
            opt.order = order;
            opt.fast = cfg.fast_mode == "on"    ? RrcOptions::On
                       : cfg.fast_mode == "off" ? RrcOptions::Off
                                                : RrcOptions::Auto;
            auto r = rrc_hermite(sys, cfg.seed, opt);
            detail::print_result(r, out);
            detail::write_json(cfg, result_json(r), out);
            return 0;
        }
        if (cfg.mode == "sturm") {
            auto r = rrc_sturm(sys, cfg.seed, order);
            detail::print_result(r, out);
            detail::write_json(cfg, result_json(r), out);
            return 0;
        }
        if (cfg.mode == "cross-validate") {
            auto rep = cross_validate(sys, cfg.seed, order);
            out << "agreement: yes (" << rep.points_checked << " points checked, "
                << rep.points_skipped << " skipped on boundaries)\n";
            out << "realized counts:";
            for (int c : rep.counts_hermite) out << " " << c;
            out << "\n";
            detail::write_json(cfg, cross_json(rep, cfg.seed), out);
            return 0;
        }
        throw Error("unknown mode: " + cfg.mode);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const NotZeroDimensionalError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const IdenticallyZeroDeterminantError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace rrc
