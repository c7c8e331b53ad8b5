#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "hnla/commands.hpp"

namespace {

using hnla::cli::Command;
using hnla::cli::OutputFormat;
using hnla::cli::RunConfig;

void add_common_flags(CLI::App *app, RunConfig &cfg) {
    app->add_option("--gain", cfg.gain, "amplitude gain g")->envname("HNLA_GAIN");
    app->add_option("--tolerance", cfg.tolerance, "pass/fail tolerance for reported distances")
        ->envname("HNLA_TOLERANCE");
    app->add_option("--n-max", cfg.n_max_override,
                    "manual Fock cutoff (overrides the automatic tail-bound choice)")
        ->envname("HNLA_N_MAX");
    app->add_option("--output", cfg.output_path, "output path (default stdout)")
        ->envname("HNLA_OUTPUT");
}

void add_format_flag(CLI::App *app, RunConfig &cfg, const std::string &dflt) {
    static const std::map<std::string, OutputFormat> formats{
        {"csv", OutputFormat::csv}, {"json", OutputFormat::json}};
    app->add_option("--format", cfg.format, "output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->default_str(dflt)
        ->envname("HNLA_FORMAT");
}

void add_squeezing_flags(CLI::App *app, RunConfig &cfg, bool list) {
    const char *db_help = list ? "squeezing in dB (repeatable / comma separated)"
                               : "squeezing in dB";
    const char *r_help = list ? "squeezing in natural units (repeatable / comma separated)"
                              : "squeezing in natural units";
    auto *db = app->add_option("--squeezing-db", cfg.squeezing_db, db_help)
                   ->delimiter(',')
                   ->envname("HNLA_SQUEEZING_DB");
    auto *r = app->add_option("--squeezing-r", cfg.squeezing_r, r_help)
                  ->delimiter(',')
                  ->envname("HNLA_SQUEEZING_R");
    db->excludes(r);
    r->excludes(db);
}

void add_grid_flags(CLI::App *app, RunConfig &cfg) {
    static const std::map<std::string, hnla::ensemble::GridKind> kinds{
        {"gauss-hermite", hnla::ensemble::GridKind::gauss_hermite},
        {"uniform", hnla::ensemble::GridKind::uniform},
        {"radial", hnla::ensemble::GridKind::radial}};
    app->add_option("--grid-points", cfg.grid.points, "grid node count (per axis / radial)")
        ->envname("HNLA_GRID_POINTS");
    app->add_option("--grid-sigmas", cfg.grid.sigmas,
                    "grid half-range in standard deviations (finite-range kinds)")
        ->envname("HNLA_GRID_SIGMAS");
    app->add_option("--grid-kind", cfg.grid.kind, "grid kind")
        ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case))
        ->envname("HNLA_GRID_KIND");
    app->add_option("--angular-points", cfg.grid.angular_points,
                    "angular node count (radial grids)")
        ->envname("HNLA_ANGULAR_POINTS");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"numerical lab for the heralded noiseless linear amplifier viewed as a "
                 "phase-insensitive squeezer"};
    app.require_subcommand(1);

    RunConfig cfg;

    CLI::App *fig1 = app.add_subcommand(
        "fig1", "fidelity / success-probability trade-off of the truncated device (CSV)");
    add_common_flags(fig1, cfg);
    add_format_flag(fig1, cfg, "csv");
    add_squeezing_flags(fig1, cfg, true);
    fig1->add_option("--n-trunc", cfg.n_trunc, "largest truncation photon number N")
        ->envname("HNLA_N_TRUNC");
    fig1->add_option("--n-from", cfg.n_from, "smallest truncation photon number N");

    CLI::App *transform = app.add_subcommand(
        "transform", "closed-form parameter map for one squeezed coherent state (JSON)");
    add_common_flags(transform, cfg);
    add_format_flag(transform, cfg, "json");
    add_squeezing_flags(transform, cfg, false);
    double alpha_re = 0.0;
    double alpha_im = 0.0;
    transform->add_option("--alpha-re", alpha_re, "Re alpha");
    transform->add_option("--alpha-im", alpha_im, "Im alpha");
    transform->add_option("--phi", cfg.phi, "squeezing angle in radians");
    transform->add_flag("--emit-state", cfg.emit_state,
                        "include the output state's Fock amplitudes in the JSON");

    CLI::App *nosignal =
        app.add_subcommand("nosignal", "no-signaling verdict for the homodyne ensembles (JSON)");
    add_common_flags(nosignal, cfg);
    add_format_flag(nosignal, cfg, "json");
    nosignal->add_option("--s", cfg.s, "two-mode squeezing parameter")->envname("HNLA_S");
    add_grid_flags(nosignal, cfg);

    CLI::App *epr = app.add_subcommand(
        "epr", "photon-number Bayes scenario on one arm of an EPR state (JSON)");
    add_common_flags(epr, cfg);
    add_format_flag(epr, cfg, "json");
    epr->add_option("--s", cfg.s, "two-mode squeezing parameter")->envname("HNLA_S");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return hnla::cli::exit_invalid_config;
    }

    CLI::App *active = fig1;
    if (fig1->parsed())
        cfg.command = Command::fig1;
    else if (transform->parsed()) {
        cfg.command = Command::transform;
        cfg.alpha = {alpha_re, alpha_im};
        active = transform;
    } else if (nosignal->parsed()) {
        cfg.command = Command::nosignal;
        active = nosignal;
    } else {
        cfg.command = Command::epr;
        active = epr;
    }
    if (active->count("--format") == 0 && std::getenv("HNLA_FORMAT") == nullptr)
        cfg.format = cfg.command == Command::fig1 ? OutputFormat::csv : OutputFormat::json;
    cfg.squeezing_in_db = cfg.squeezing_r.empty();

    return hnla::cli::run(cfg);
}
