#include "luzawa/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "luzawa/bgp.hpp"
#include "luzawa/closed_form.hpp"
#include "luzawa/errors.hpp"
#include "luzawa/foc.hpp"
#include "luzawa/growth.hpp"

namespace luzawa::cli {

namespace {

using nlohmann::json;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NoRoot:
        case ErrorKind::NonConvergent:
        case ErrorKind::EvalDomain: return kExitDerivationFailed;
        default: return kExitInvalidInput;
    }
}

// Runs a command body, mapping library errors onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const json::exception& e) {
        err << "error: malformed parameter file: " << e.what() << '\n';
        return kExitInvalidInput;
    }
}

// Writes to --out when given, otherwise to `out`.
int emit(const RunConfig& config, std::ostream& out, const std::string& text) {
    if (config.out_path.empty()) {
        out << text;
        return kExitOk;
    }
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidInput, "out", "cannot open " + config.out_path);
    file << text;
    return kExitOk;
}

void check_config(const RunConfig& config) {
    if (!(config.t_max > 0.0)) throw Error(ErrorKind::InvalidInput, "t-max", "must be > 0");
    if (config.steps < 2) throw Error(ErrorKind::InvalidInput, "steps", "must be >= 2");
    if (!(config.tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tol", "must be > 0");
    if (config.format != "csv" && config.format != "json") {
        throw Error(ErrorKind::InvalidInput, "format", "expected csv or json");
    }
}

std::vector<std::string> split_families(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct Column {
    const char* name;
    double TrajectoryPoint::*field;
};

constexpr std::array<Column, 9> kTrajectoryColumns = {{
    {"c", &TrajectoryPoint::c},
    {"k", &TrajectoryPoint::k},
    {"h", &TrajectoryPoint::h},
    {"u", &TrajectoryPoint::u},
    {"lambda", &TrajectoryPoint::lambda},
    {"mu", &TrajectoryPoint::mu},
    {"h_star", &TrajectoryPoint::h_star},
    {"mu_star", &TrajectoryPoint::mu_star},
    {"z", &TrajectoryPoint::z},
}};

struct RateColumn {
    const char* name;
    double GrowthRates::*field;
};

constexpr std::array<RateColumn, 6> kRateColumns = {{
    {"g_c", &GrowthRates::g_c},
    {"g_k", &GrowthRates::g_k},
    {"g_h", &GrowthRates::g_h},
    {"g_u", &GrowthRates::g_u},
    {"g_lambda", &GrowthRates::g_lambda},
    {"g_mu", &GrowthRates::g_mu},
}};

struct Setup {
    ValidatedParams params;
    SolutionConstants constants;
};

Setup prepare(const RunConfig& config, const std::string& family_tag) {
    check_config(config);
    const ValidatedParams p = validate(load_params_file(config.params_path));
    const SolutionFamily family = parse_family(family_tag);
    p.require_window();
    return {p, derive_constants(family, p, config.k0, config.h0)};
}

void warn_on_labor_share(const std::vector<TrajectoryPoint>& rows, std::ostream& err) {
    for (const auto& row : rows) {
        if (row.u > 1.0) {
            err << "warning: labor share u = " << format_number(row.u) << " exceeds 1 at t = "
                << format_number(row.t) << '\n';
            return;
        }
    }
}

}  // namespace

std::string format_number(double x) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return buf.data();
}

ModelParams parse_params_json(const std::string& text) {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw Error(ErrorKind::InvalidInput, "params", "expected a JSON object");
    auto number = [&](const char* key) {
        if (!doc.contains(key)) throw Error(ErrorKind::InvalidInput, key, "missing parameter");
        const json& v = doc.at(key);
        if (!v.is_number()) throw Error(ErrorKind::InvalidInput, key, "must be a number");
        return v.get<double>();
    };
    ModelParams p;
    p.sigma = number("sigma");
    p.rho = number("rho");
    p.beta = number("beta");
    p.gamma = number("gamma");
    p.pi = number("pi");
    p.delta = number("delta");
    p.theta = number("theta");
    return p;
}

ModelParams load_params_file(const std::string& path) {
    if (path.empty()) throw Error(ErrorKind::InvalidInput, "params", "--params is required");
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "params", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_params_json(ss.str());
}

int cmd_bgp(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ValidatedParams p = validate(load_params_file(config.params_path));
        const BgpSummary s = bgp_summary(p);
        json doc = {
            {"g_c", s.g_c},     {"g_k", s.g_k},     {"g_h", s.g_h},
            {"g_hstar", s.g_hstar}, {"g_u", s.g_u}, {"u_bar", s.u_bar},
            {"xi", s.xi},       {"z_bar", s.z_bar}, {"k_over_hphi", s.k_over_hphi},
        };
        return emit(config, out, doc.dump(2) + "\n");
    });
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Setup setup = prepare(config, config.family);
        std::vector<TrajectoryPoint> rows;
        for (const double t : uniform_grid(0.0, config.t_max, config.steps)) {
            rows.push_back(evaluate(setup.constants, setup.params, t));
        }
        warn_on_labor_share(rows, err);

        std::ostringstream text;
        if (config.format == "json") {
            json doc = json::array();
            for (const auto& row : rows) {
                json obj = {{"t", row.t}};
                for (const auto& col : kTrajectoryColumns) obj[col.name] = row.*(col.field);
                doc.push_back(obj);
            }
            text << doc.dump(2) << '\n';
        } else {
            text << "t";
            for (const auto& col : kTrajectoryColumns) text << ',' << col.name;
            text << '\n';
            for (const auto& row : rows) {
                text << format_number(row.t);
                for (const auto& col : kTrajectoryColumns) {
                    text << ',' << format_number(row.*(col.field));
                }
                text << '\n';
            }
        }
        return emit(config, out, text.str());
    });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Setup setup = prepare(config, config.family);
        double TrajectoryPoint::*corrupted = nullptr;
        if (!config.corrupt_column.empty()) {
            for (const auto& col : kTrajectoryColumns) {
                if (config.corrupt_column == col.name) corrupted = col.field;
            }
            if (corrupted == nullptr) {
                throw Error(ErrorKind::InvalidInput, "corrupt-column",
                            "unknown column '" + config.corrupt_column + "'");
            }
        }
        const TrajectoryClosure closure = [&](double t) {
            TrajectoryPoint pt = evaluate(setup.constants, setup.params, t);
            if (corrupted != nullptr) pt.*corrupted *= config.corrupt_scale;
            return pt;
        };
        const ResidualReport report = residual_report(
            closure, setup.params, uniform_grid(0.0, config.t_max, config.steps));
        const bool ok = report.passed(config.tol);

        json doc;
        doc["family"] = std::string(to_string(setup.constants.family));
        doc["tol"] = config.tol;
        doc["max_rel_ode_residual"] = {
            {"k", report.k},           {"h_star", report.h_star}, {"c_rate", report.c_rate},
            {"u_rate", report.u_rate}, {"lambda", report.lambda}, {"mu_star", report.mu_star},
        };
        doc["max_rel_static_residual"] = {
            {"lambda_c_sigma", report.static_lambda},
            {"z_costate_ratio", report.static_z},
        };
        doc["max_rel_consistency_residual"] = report.consistency;
        doc["transversality_decay_ok"] = report.transversality_decay_ok;
        doc["grid"] = report.grid;
        doc["passed"] = ok;
        emit(config, out, doc.dump(2) + "\n");
        return ok ? kExitOk : kExitVerificationFailed;
    });
}

int cmd_growth(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Setup setup = prepare(config, config.family);
        std::ostringstream text;
        text << "t";
        for (const auto& col : kRateColumns) text << ',' << col.name;
        text << '\n';
        for (const double t : uniform_grid(0.0, config.t_max, config.steps)) {
            const GrowthRates g = growth_rates(setup.constants, setup.params, t);
            text << format_number(t);
            for (const auto& col : kRateColumns) text << ',' << format_number(g.*(col.field));
            text << '\n';
        }
        return emit(config, out, text.str());
    });
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::vector<std::string> tags = split_families(config.family);
        if (tags.size() < 2) {
            throw Error(ErrorKind::InvalidInput, "family",
                        "compare needs at least two comma-separated families");
        }
        std::vector<Setup> setups;
        std::vector<std::string> names;
        for (const auto& tag : tags) {
            setups.push_back(prepare(config, tag));
            names.emplace_back(to_string(setups.back().constants.family));
        }

        std::ostringstream text;
        text << "t";
        for (const auto& name : names) {
            for (const auto& col : kRateColumns) text << ',' << name << '_' << col.name;
        }
        for (std::size_t i = 0; i < names.size(); ++i) {
            for (std::size_t j = i + 1; j < names.size(); ++j) {
                for (const auto& col : kRateColumns) {
                    text << ",gap_" << names[i] << '_' << names[j] << '_' << col.name;
                }
            }
        }
        text << '\n';

        for (const double t : uniform_grid(0.0, config.t_max, config.steps)) {
            std::vector<GrowthRates> rates;
            for (const auto& s : setups) rates.push_back(growth_rates(s.constants, s.params, t));
            text << format_number(t);
            for (const auto& g : rates) {
                for (const auto& col : kRateColumns) text << ',' << format_number(g.*(col.field));
            }
            for (std::size_t i = 0; i < rates.size(); ++i) {
                for (std::size_t j = i + 1; j < rates.size(); ++j) {
                    for (const auto& col : kRateColumns) {
                        text << ','
                             << format_number(std::abs(rates[i].*(col.field) -
                                                       rates[j].*(col.field)));
                    }
                }
            }
            text << '\n';
        }
        return emit(config, out, text.str());
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-form paths of the Lucas-Uzawa model with externalities"};
    app.require_subcommand(1);
    RunConfig config;

    auto add_common = [&](CLI::App* sub, bool trajectory) {
        sub->add_option("--params", config.params_path, "Parameter JSON file")->required();
        sub->add_option("--out", config.out_path, "Output file (default stdout)");
        if (!trajectory) return;
        sub->add_option("--family", config.family,
                        "General1|General2|General3|SigmaBeta1|SigmaBeta2");
        sub->add_option("--k0", config.k0, "Initial physical capital");
        sub->add_option("--h0", config.h0, "Initial human capital (original variable)");
        sub->add_option("--t-max", config.t_max, "Grid end time");
        sub->add_option("--steps", config.steps, "Number of grid points");
        sub->add_option("--tol", config.tol, "Verification threshold");
        sub->add_option("--format", config.format, "csv|json");
    };

    CLI::App* bgp = app.add_subcommand("bgp", "Balanced-growth-path summary as JSON");
    add_common(bgp, false);
    CLI::App* simulate = app.add_subcommand("simulate", "Trajectory of one family on a grid");
    add_common(simulate, true);
    CLI::App* verify = app.add_subcommand("verify", "Residuals against the first-order system");
    add_common(verify, true);
    verify->add_option("--corrupt-column", config.corrupt_column, "Test hook: column to corrupt");
    verify->add_option("--corrupt-scale", config.corrupt_scale, "Test hook: scale factor");
    CLI::App* growth = app.add_subcommand("growth", "Growth rates of one family on a grid");
    add_common(growth, true);
    CLI::App* compare = app.add_subcommand("compare", "Side-by-side growth rates of families");
    add_common(compare, true);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    if (bgp->parsed()) return cmd_bgp(config, out, err);
    if (simulate->parsed()) return cmd_simulate(config, out, err);
    if (verify->parsed()) return cmd_verify(config, out, err);
    if (growth->parsed()) return cmd_growth(config, out, err);
    return cmd_compare(config, out, err);
}

}  // namespace luzawa::cli
