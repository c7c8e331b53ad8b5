#include "hnla/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hnla/json_io.hpp"

namespace hnla::cli {

namespace {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

nlohmann::json complex_pair(const std::complex<double> &c) {
    return nlohmann::json::array({c.real(), c.imag()});
}

std::vector<double> squeezing_values(const RunConfig &cfg) {
    std::vector<double> rs;
    if (cfg.squeezing_in_db)
        for (double db : cfg.squeezing_db)
            rs.push_back(amp::squeezing_from_db(db));
    else
        rs = cfg.squeezing_r;
    return rs;
}

} // namespace

std::string validate(const RunConfig &cfg) {
    if (!std::isfinite(cfg.gain) || cfg.gain < 1.0)
        return "gain must be finite and >= 1 (attenuation is out of scope)";
    if (cfg.command == Command::fig1 && cfg.gain <= 1.0)
        return "fig1: gain must be > 1";
    if (cfg.command == Command::fig1 || cfg.command == Command::transform) {
        const bool has_db = !cfg.squeezing_db.empty();
        const bool has_r = !cfg.squeezing_r.empty();
        if (has_db == has_r)
            return "exactly one of --squeezing-db / --squeezing-r is required";
        if (has_r != !cfg.squeezing_in_db)
            return "squeezing unit flag disagrees with the values provided";
        if (cfg.command == Command::transform &&
            (has_db ? cfg.squeezing_db.size() : cfg.squeezing_r.size()) != 1)
            return "transform takes exactly one squeezing value";
        for (double r : cfg.squeezing_r)
            if (!(r >= 0.0) || !std::isfinite(r))
                return "squeezing r values must be finite and >= 0";
        for (double db : cfg.squeezing_db)
            if (!(db >= 0.0) || !std::isfinite(db))
                return "squeezing dB values must be finite and >= 0";
    }
    if (cfg.command == Command::fig1) {
        if (cfg.n_from < 0 || cfg.n_trunc < cfg.n_from)
            return "fig1: need 0 <= n_from <= n_trunc";
        if (cfg.format != OutputFormat::csv && cfg.format != OutputFormat::json)
            return "fig1: format must be csv or json";
    } else if (cfg.format == OutputFormat::csv)
        return "only the fig1 command emits CSV; use --format json";
    if (cfg.command == Command::nosignal || cfg.command == Command::epr) {
        if (!(cfg.s > 0.0) || !std::isfinite(cfg.s))
            return "s must be finite and > 0";
    }
    if (cfg.command == Command::nosignal) {
        if (cfg.grid.points < 1)
            return "grid points must be >= 1";
        if (cfg.grid.angular_points < 1)
            return "angular points must be >= 1";
        if (!(cfg.grid.sigmas > 0.0))
            return "grid sigmas must be > 0";
        if (cfg.grid.kind == ensemble::GridKind::radial)
            return "nosignal discretizes a 1-D quadrature; use gauss-hermite or uniform";
    }
    if (!(cfg.tolerance > 0.0))
        return "tolerance must be > 0";
    if (cfg.n_max_override > 100000)
        return "n_max override is impractically large";
    return {};
}

CommandResult cmd_fig1(const RunConfig &cfg) {
    CommandResult res;
    const std::vector<double> rs = squeezing_values(cfg);

    struct Row {
        double db;
        int n;
        bool ok;
        amp::TruncatedSqueezerResult values;
    };
    std::vector<Row> rows;
    for (size_t i = 0; i < rs.size(); ++i) {
        const double r = rs[i];
        const double db = cfg.squeezing_in_db ? cfg.squeezing_db[i] : amp::squeezing_to_db(r);
        for (int n = cfg.n_from; n <= cfg.n_trunc; ++n) {
            Row row{db, n, true, {}};
            try {
                row.values = amp::truncated_squeezer(r, 0.0, amp::HnlaConfig(cfg.gain, n));
            } catch (const unphysical_gain_error &) {
                row.ok = false;
            }
            rows.push_back(row);
        }
    }

    if (cfg.format == OutputFormat::csv) {
        std::ostringstream out;
        out << "squeezing_db,N,fidelity,p_succ_operational,p_succ_norm_ratio\n";
        for (const Row &row : rows) {
            out << fmt12(row.db) << ',' << row.n << ',';
            if (row.ok)
                out << fmt12(row.values.fidelity) << ',' << fmt12(row.values.p_succ) << ','
                    << fmt12(row.values.p_succ_norm_ratio) << '\n';
            else
                out << "unphysical-gain,unphysical-gain,unphysical-gain\n";
        }
        res.payload = out.str();
    } else {
        nlohmann::json j;
        j["command"] = "fig1";
        j["gain"] = cfg.gain;
        j["rows"] = nlohmann::json::array();
        for (const Row &row : rows) {
            nlohmann::json entry{{"squeezing_db", row.db}, {"N", row.n}};
            if (row.ok) {
                entry["fidelity"] = row.values.fidelity;
                entry["p_succ_operational"] = row.values.p_succ;
                entry["p_succ_norm_ratio"] = row.values.p_succ_norm_ratio;
            } else
                entry["error"] = "unphysical-gain";
            j["rows"].push_back(std::move(entry));
        }
        res.payload = j.dump(2) + "\n";
    }
    return res;
}

CommandResult cmd_transform(const RunConfig &cfg) {
    CommandResult res;
    const double r = squeezing_values(cfg).front();
    const fock::SqueezedCoherentParams params(cfg.alpha, r, cfg.phi);

    try {
        const amp::TransformResult tr = amp::transform_params(params, cfg.gain);
        const amp::QuadratureGains gains = amp::quadrature_gains(r, cfg.gain);

        // Brute-force cross-check of the closed form on the same input.
        const int n_max = cfg.n_max_override > 0
                              ? cfg.n_max_override
                              : std::max(amp::auto_cutoff(params, 1e-12),
                                         amp::auto_cutoff(tr.params_out, 1e-12));
        const fock::FockVector input = fock::coherent_squeezed_coeffs(params, n_max);
        const amp::FiltrationResult brute = amp::apply_filtration_bruteforce(input, cfg.gain);
        const fock::FockVector expected = fock::coherent_squeezed_coeffs(tr.params_out, n_max);
        const double fidelity_deficit = 1.0 - fock::overlap_fidelity(brute.state, expected);
        const double weight_rel_residual =
            std::abs(brute.rel_weight - tr.rel_success_weight) / tr.rel_success_weight;

        nlohmann::json j{{"command", "transform"},
                         {"alpha", complex_pair(params.alpha)},
                         {"r", params.r},
                         {"phi", params.phi},
                         {"gain", cfg.gain},
                         {"alpha_prime", complex_pair(tr.params_out.alpha)},
                         {"r_prime", tr.params_out.r},
                         {"gain_x", gains.gain_x},
                         {"gain_p", gains.gain_p},
                         {"rel_success_weight", tr.rel_success_weight},
                         {"crosscheck", nlohmann::json{{"n_max", n_max},
                                                       {"fidelity_deficit", fidelity_deficit},
                                                       {"weight_rel_residual", weight_rel_residual}}}};
        if (cfg.emit_state)
            j["state_out"] = expected;
        res.payload = j.dump(2) + "\n";
    } catch (const unphysical_gain_error &err) {
        res.exit_code = exit_physics_violation;
        res.diagnostic = err.what();
        res.payload = nlohmann::json{{"command", "transform"}, {"error", err.what()}}.dump(2) + "\n";
    }
    return res;
}

CommandResult cmd_nosignal(const RunConfig &cfg) {
    CommandResult res;
    try {
        const ensemble::NoSignalReport report =
            ensemble::no_signaling_check(cfg.s, cfg.gain, cfg.grid, cfg.n_max_override);
        res.payload = nlohmann::json(report).dump(2) + "\n";

        std::ostringstream violated;
        if (!(report.d_xp < cfg.tolerance))
            violated << "d_xp = " << report.d_xp << " >= tolerance " << cfg.tolerance << "; ";
        if (!(report.d_x_thermal < cfg.tolerance))
            violated << "d_x_thermal = " << report.d_x_thermal << " >= tolerance "
                     << cfg.tolerance << "; ";
        if (!(report.d_p_thermal < cfg.tolerance))
            violated << "d_p_thermal = " << report.d_p_thermal << " >= tolerance "
                     << cfg.tolerance << "; ";
        if (!(report.identity_residual_max < 1e-10))
            violated << "identity_residual_max = " << report.identity_residual_max
                     << " >= 1e-10; ";
        if (!(report.cutoff_tail_bound < cfg.tolerance))
            violated << "cutoff_tail_bound = " << report.cutoff_tail_bound
                     << " >= tolerance " << cfg.tolerance
                     << " (n_max too small to certify the distances); ";
        if (!violated.str().empty()) {
            res.exit_code = exit_physics_violation;
            res.diagnostic = "budget violated: " + violated.str();
        }
    } catch (const unphysical_gain_error &err) {
        res.exit_code = exit_physics_violation;
        res.diagnostic = err.what();
        res.payload = nlohmann::json{{"command", "nosignal"}, {"error", err.what()}}.dump(2) + "\n";
    }
    return res;
}

CommandResult cmd_epr(const RunConfig &cfg) {
    CommandResult res;
    try {
        const double sp = ensemble::amplify_epr(cfg.s, cfg.gain);
        const double q_prime = std::tanh(sp) * std::tanh(sp);
        const int n_max = cfg.n_max_override > 0
                              ? cfg.n_max_override
                              : std::max(ensemble::thermal_auto_cutoff(cfg.s, 1e-16),
                                         ensemble::thermal_auto_cutoff(sp, 1e-16)) +
                                    8;
        const ensemble::PhotonNumberScenario scenario =
            ensemble::photon_number_scenario(cfg.s, cfg.gain, n_max);

        double bayes_residual = 0.0;
        double geometric = 1.0 - q_prime;
        for (double p : scenario.p_conditioned) {
            bayes_residual = std::max(bayes_residual, std::abs(p - geometric));
            geometric *= q_prime;
        }

        nlohmann::json j{{"command", "epr"},
                         {"s", cfg.s},
                         {"g", cfg.gain},
                         {"s_prime", sp},
                         {"nu", std::sinh(cfg.s) * std::sinh(cfg.s)},
                         {"nu_prime", std::sinh(sp) * std::sinh(sp)},
                         {"n_max", n_max},
                         {"mean_photon_before", scenario.mean_before},
                         {"mean_photon_conditioned", scenario.mean_conditioned},
                         {"bayes_residual_max", bayes_residual}};
        res.payload = j.dump(2) + "\n";
        if (!(bayes_residual < cfg.tolerance)) {
            res.exit_code = exit_physics_violation;
            std::ostringstream msg;
            msg << "budget violated: bayes_residual_max = " << bayes_residual
                << " >= tolerance " << cfg.tolerance;
            res.diagnostic = msg.str();
        }
    } catch (const unphysical_gain_error &err) {
        res.exit_code = exit_physics_violation;
        res.diagnostic = err.what();
        res.payload = nlohmann::json{{"command", "epr"}, {"error", err.what()}}.dump(2) + "\n";
    }
    return res;
}

void write_file_atomic(const std::string &path, const std::string &payload) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open temporary output file " + tmp.string());
        out << payload;
        out.flush();
        if (!out)
            throw std::runtime_error("failed writing " + tmp.string());
    }
    fs::rename(tmp, target);
}

int run(const RunConfig &cfg) {
    const std::string problem = validate(cfg);
    if (!problem.empty()) {
        std::cerr << "invalid config: " << problem << "\n";
        return exit_invalid_config;
    }

    CommandResult res;
    try {
        switch (cfg.command) {
        case Command::fig1:
            res = cmd_fig1(cfg);
            break;
        case Command::transform:
            res = cmd_transform(cfg);
            break;
        case Command::nosignal:
            res = cmd_nosignal(cfg);
            break;
        case Command::epr:
            res = cmd_epr(cfg);
            break;
        }
    } catch (const unphysical_gain_error &err) {
        std::cerr << err.what() << "\n";
        return exit_physics_violation;
    } catch (const cutoff_too_large_error &err) {
        std::cerr << err.what() << "\n";
        return exit_physics_violation;
    } catch (const std::exception &err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_invalid_config;
    }

    if (!res.diagnostic.empty())
        std::cerr << res.diagnostic << "\n";
    if (cfg.output_path.empty())
        std::cout << res.payload;
    else
        write_file_atomic(cfg.output_path, res.payload);
    return res.exit_code;
}

} // namespace hnla::cli
