// rrc: classify the number of distinct real solutions of a parametric
// polynomial system as the parameters vary.

#include <CLI11.hpp>

#include <rrc/cli.hpp>

int main(int argc, char** argv) {
    CLI::App app{"exact real-root classification for parametric polynomial systems"};
    app.require_subcommand(0, 1);

    rrc::JobConfig cfg;
    std::string x_order_csv;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", cfg.seed, "seed for the Las Vegas choices (default 42)");
        cmd->add_option("--x-order", x_order_csv, "variable priority, e.g. x2,x1");
        cmd->add_option("--json", cfg.json_path, "write the JSON result here");
    };

    auto* solve = app.add_subcommand("solve", "run a classification driver");
    solve->add_option("--input", cfg.input_path, "system file")->required();
    solve->add_option("--mode", cfg.mode,
                      "hermite-weak | hermite-full | sturm | cross-validate | matrix-only | sample-points");
    solve->add_option("--lambda", cfg.lambda, "degree bound for the interpolation fast path");
    solve->add_option("--prime", cfg.prime, "prime for the mod-p minor probe");
    solve->add_option("--fast-mode", cfg.fast_mode, "auto | on | off");
    solve->add_flag("--print-matrix", cfg.print_matrix, "print the parametric Hermite matrix");
    add_common(solve);

    auto* matrix = app.add_subcommand("matrix", "print the parametric Hermite matrix");
    matrix->add_option("--input", cfg.input_path, "system file")->required();
    matrix->add_option("--lambda", cfg.lambda, "degree bound for the interpolation fast path");
    add_common(matrix);

    auto* sp = app.add_subcommand("sample-points", "points per connected component of g_i != 0");
    std::string params_csv;
    sp->add_option("--params", params_csv, "parameter names, e.g. \"y1 y2\"")->required();
    sp->add_option("polys", cfg.sp_polys, "polynomials in the parameters")->required();
    add_common(sp);

    CLI11_PARSE(app, argc, argv);

    if (matrix->parsed()) {
        cfg.mode = "matrix-only";
        cfg.print_matrix = true;
    }
    if (sp->parsed()) {
        cfg.mode = "sample-points";
        std::istringstream is(params_csv);
        std::string w;
        while (is >> w) cfg.sp_params.push_back(w);
    }
    if (!x_order_csv.empty()) {
        std::string cur;
        for (char c : x_order_csv + ",") {
            if (c == ',' || c == ' ') {
                if (!cur.empty()) cfg.x_order.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
    }
    if (!solve->parsed() && !matrix->parsed() && !sp->parsed()) {
        std::cerr << app.help();
        return 1;
    }
    return rrc::run(cfg, std::cout, std::cerr);
}
