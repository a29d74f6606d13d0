#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qring/bound_states.hpp"
#include "qring/config.hpp"
#include "qring/sweep.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    qring::CliOverrides overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config_path, "INI config file")
        ->envname("QRING_CONFIG");
    cmd->add_flag("--symmetric", args.overrides.symmetric,
                  "copy node_I junction parameters to node_II");
    cmd->add_option("--d", args.overrides.d, "arm length; sets xi_I = d, xi_II = 0");
    cmd->add_option("--k-min", args.overrides.k_min, "sweep lower wavenumber");
    cmd->add_option("--k-max", args.overrides.k_max, "sweep upper wavenumber");
    cmd->add_option("--flux-min", args.overrides.flux_min, "sweep lower flux phase");
    cmd->add_option("--flux-max", args.overrides.flux_max, "sweep upper flux phase");
    cmd->add_option("--points", args.overrides.points, "number of sweep points");
    cmd->add_option("--k", args.overrides.k, "fixed wavenumber");
    cmd->add_option("-o,--output", args.overrides.output, "output file (default stdout)");
    cmd->add_option("--format", args.overrides.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", args.overrides.seed, "random seed for verify");
}

qring::RunConfig load(const CommonArgs& args) {
    if (args.config_path.empty())
        throw qring::config_error(
            "no config given: pass -c/--config or set QRING_CONFIG");
    return qring::parse_config(args.config_path, args.overrides);
}

template <typename Rows, typename CsvFn, typename JsonFn>
void emit(const qring::RunConfig& cfg, const Rows& rows, CsvFn csv, JsonFn json) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path, std::ios::binary);
        if (!file)
            throw qring::config_error("cannot open output file '" + cfg.output_path + "'");
        os = &file;
    }
    if (cfg.format == qring::OutputFormat::csv)
        csv(rows, *os);
    else
        json(rows, *os);
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const size_t dot = path.find_last_of('.');
    const size_t slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum ring with double Y-junctions: scattering, localized "
                 "states and flux response"};
    app.require_subcommand(1);

    CommonArgs args;
    bool inject_error = false;
    std::string wavefunction_out;

    CLI::App* smatrix = app.add_subcommand("smatrix", "node and ring S-matrix entries at fixed k");
    CLI::App* sweep_k = app.add_subcommand("sweep-k", "reflection/transmission across a k range");
    CLI::App* sweep_flux =
        app.add_subcommand("sweep-flux", "response across a flux range at fixed k");
    CLI::App* localized =
        app.add_subcommand("localized", "search a k range for localized states");
    CLI::App* verify =
        app.add_subcommand("verify", "compare closed forms against the direct solvers");
    for (CLI::App* cmd : {smatrix, sweep_k, sweep_flux, localized, verify})
        add_common(cmd, args);
    localized->add_option("--wavefunction-out", wavefunction_out,
                          "CSV file for sampled wavefunctions (one per state, "
                          "suffixed _n<index>)");
    verify->add_flag("--inject-error", inject_error,
                     "corrupt one cached matrix to exercise the failure path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (smatrix->parsed()) {
            const qring::RunConfig cfg = load(args);
            std::ofstream file;
            std::ostream* os = &std::cout;
            if (!cfg.output_path.empty()) {
                file.open(cfg.output_path, std::ios::binary);
                os = &file;
            }
            qring::write_smatrix(cfg, *os);
        } else if (sweep_k->parsed()) {
            const qring::RunConfig cfg = load(args);
            emit(cfg, qring::compute_k_sweep(cfg), qring::write_k_sweep_csv,
                 qring::write_k_sweep_json);
        } else if (sweep_flux->parsed()) {
            const qring::RunConfig cfg = load(args);
            emit(cfg, qring::compute_flux_sweep(cfg), qring::write_flux_sweep_csv,
                 qring::write_flux_sweep_json);
        } else if (localized->parsed()) {
            const qring::RunConfig cfg = load(args);
            const auto rows = qring::compute_localized(cfg);
            emit(cfg, rows, qring::write_localized_csv, qring::write_localized_json);
            if (!wavefunction_out.empty()) {
                for (const auto& row : rows) {
                    if (!row.state) continue;
                    const std::string path = with_suffix(
                        wavefunction_out, "_n" + std::to_string(row.n_estimate));
                    std::ofstream wf(path, std::ios::binary);
                    if (!wf)
                        throw qring::config_error("cannot open '" + path + "'");
                    qring::write_wavefunction_csv(*row.state, wf);
                }
            }
        } else if (verify->parsed()) {
            qring::VerifyOptions opts;
            opts.inject_error = inject_error;
            if (args.overrides.seed) opts.seed = *args.overrides.seed;
            if (!args.config_path.empty()) {
                qring::RunConfig cfg = load(args);
                cfg.verify = true;
                opts.ring = cfg.ring;
                opts.seed = cfg.seed;
            }
            return qring::run_verify(opts, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
