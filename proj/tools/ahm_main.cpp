#include <CLI11.hpp>

#include "ahm/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"almost Hermitian geometry lab"};
    app.require_subcommand(1);

    ahm::RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--samples", cfg.samples, "sample count");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--step", cfg.step, "finite-difference step");
        sub->add_option("--out", cfg.out_json, "JSON output path");
        sub->add_option("--csv", cfg.out_csv, "CSV output path");
        sub->add_flag("--timestamp", cfg.timestamp,
                      "include a wall-clock timestamp in outputs");
        sub->add_option("--config", config_path, "JSON RunConfig file");
    };

    auto* verify = app.add_subcommand("verify", "identity suite on a manifold");
    verify->add_option("--manifold", cfg.manifold)->required();
    add_common(verify);

    auto* report = app.add_subcommand("report", "chart and curvature summary");
    report->add_option("--manifold", cfg.manifold)->required();
    add_common(report);

    auto* schwarz = app.add_subcommand("schwarz", "pullback-metric bound check");
    schwarz->add_option("--source", cfg.source)->required();
    schwarz->add_option("--target", cfg.target)->required();
    schwarz->add_option("--map", cfg.map_name);
    schwarz->add_option("--k1", cfg.k1);
    schwarz->add_option("--k2", cfg.k2);
    schwarz->add_flag("--auto-bounds", cfg.auto_bounds);
    add_common(schwarz);

    auto* hc = app.add_subcommand("hessian-compare",
                                  "distance Hessian vs. the bound matrix");
    hc->add_option("--manifold", cfg.manifold)->required();
    hc->add_option("--rays", cfg.rays);
    hc->add_option("--radii", cfg.radii)->delimiter(',');
    hc->add_option("--scale", cfg.scale,
                   "Hessian convention scale applied to X before X <= Y");
    add_common(hc);

    auto* ec = app.add_subcommand("exhaustion-certify",
                                  "gradient/Hessian certificate for log(1+r^2)");
    ec->add_option("--manifold", cfg.manifold)->required();
    add_common(ec);

    CLI11_PARSE(app, argc, argv);

    cfg.command = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) {
        try {
            std::ifstream in(config_path);
            if (!in) throw ahm::ConfigError("cannot open " + config_path);
            ahm::Json j;
            in >> j;
            cfg = ahm::config_from_json(j);
        } catch (const std::exception& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }
    }
    return ahm::run(cfg);
}
