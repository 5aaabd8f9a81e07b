#include "report.hpp"

#include "CLI11.hpp"

#include <iostream>

using kramers::cli::CommandError;
using kramers::cli::RunConfig;

int main(int argc, char** argv)
{
    CLI::App app{"Kramers' problem for linearized hyperbolic moment equations"};
    app.require_subcommand(0, 1);

    std::string config_path, format, orders, chis, output;
    int order = 0, n_points = 0, n_cells = 0, reference_order = 0, threads = 0, chi_points = 0;
    double chi = 0, kn = 0, sigma12 = 0, y_min = 0, y_max = 0, chi_min = 0, chi_max = 0;
    std::vector<double> y_list;

    app.add_option("--config", config_path, "JSON config; flags override its values");
    auto* o_order = app.add_option("--order", order, "moment order M >= 3");
    auto* o_chi = app.add_option("--chi", chi, "accommodation coefficient in (0, 1]");
    auto* o_kn = app.add_option("--knudsen", kn, "Knudsen number");
    auto* o_sigma = app.add_option("--sigma12", sigma12, "far-field shear stress");
    auto* o_ymin = app.add_option("--y-min", y_min, "grid start");
    auto* o_ymax = app.add_option("--y-max", y_max, "grid end; oracle domain length for 'oracle'");
    auto* o_npts = app.add_option("--n-points", n_points, "uniform grid points");
    auto* o_ylist = app.add_option("--y-list", y_list, "explicit grid")->delimiter(',');
    auto* o_orders = app.add_option("--orders", orders, "order list: a:b, a:b:step or a,b,c");
    auto* o_chis = app.add_option("--chis", chis, "chi list: a,b,c");
    auto* o_chimin = app.add_option("--chi-min", chi_min, "det-scan chi range start");
    auto* o_chimax = app.add_option("--chi-max", chi_max, "det-scan chi range end");
    auto* o_chipts = app.add_option("--chi-points", chi_points, "det-scan chi points");
    auto* o_cells = app.add_option("--n-cells", n_cells, "oracle cells");
    auto* o_ref = app.add_option("--reference-order", reference_order, "viscosity reference order");
    auto* o_threads = app.add_option("--threads", threads, "worker threads for sweeps");
    auto* o_out = app.add_option("--output", output, "output path, '-' for stdout");
    auto* o_fmt = app.add_option("--format", format, "csv or json");

    const char* commands[][2] = {
        {"solve", "boundary constants, slip coefficient and wall values"},
        {"profile", "u_tilde, defect and viscosity ratio on a grid"},
        {"slip-sweep", "slip coefficient over orders x chis"},
        {"spectrum", "layer decay rates per order"},
        {"viscosity", "effective viscosity against fitted models and a reference order"},
        {"oracle", "discrete-ordinates equivalence report"},
        {"convergence", "successive-order differences of zeta and the defect"},
        {"det-scan", "boundary-matrix determinant and conditioning scan"},
    };
    for (const auto& c : commands)
        app.add_subcommand(c[0], c[1])->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kramers::cli::kExitValidation;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : kramers::cli::load_config_file(config_path);
        if (!app.get_subcommands().empty())
            cfg.command = kramers::cli::parse_command(app.get_subcommands().front()->get_name());
        if (*o_order) cfg.order = order;
        if (*o_chi) cfg.chi = chi;
        if (*o_kn) cfg.kn = kn;
        if (*o_sigma) cfg.sigma12 = sigma12;
        if (*o_ymin) cfg.y_min = y_min;
        if (*o_ymax) cfg.y_max = y_max;
        if (*o_npts) cfg.n_points = n_points;
        if (*o_ylist) cfg.y_list = y_list;
        if (*o_orders) cfg.orders = kramers::cli::parse_order_list(orders);
        if (*o_chis) cfg.chis = kramers::cli::parse_double_list(chis);
        if (*o_chimin) cfg.chi_min = chi_min;
        if (*o_chimax) cfg.chi_max = chi_max;
        if (*o_chipts) cfg.chi_points = chi_points;
        if (*o_cells) cfg.n_cells = n_cells;
        if (*o_ref) cfg.reference_order = reference_order;
        if (*o_threads) cfg.threads = threads;
        if (*o_out) cfg.output = output;
        if (*o_fmt) cfg.format = kramers::cli::parse_format(format);
        return kramers::cli::execute(cfg);
    } catch (const CommandError& e) {
        std::cerr << "kramers: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "kramers: " << e.what() << '\n';
        return kramers::cli::kExitFailure;
    }
}
