#include "tslice/app.hpp"

#include "tslice/curves.hpp"
#include "tslice/json_io.hpp"
#include "tslice/sho.hpp"
#include "tslice/spin_dimer.hpp"
#include "tslice/spin_single.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace tslice::app {

using nlohmann::json;

std::vector<unsigned> parse_l_list(std::string_view text)
{
    auto parse_one = [&](std::string_view item) -> unsigned {
        if (item.empty()) throw UsageError("empty entry in L list '" + std::string(text) + "'");
        unsigned long v = 0;
        for (char c : item) {
            if (c < '0' || c > '9') throw UsageError("bad L value '" + std::string(item) + "'");
            v = v * 10 + static_cast<unsigned long>(c - '0');
            if (v > 1'000'000) throw UsageError("L value too large: '" + std::string(item) + "'");
        }
        if (v == 0) throw UsageError("L entries must be >= 1");
        return static_cast<unsigned>(v);
    };

    std::vector<unsigned> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (auto dots = item.find(".."); dots != std::string_view::npos) {
            unsigned a = parse_one(item.substr(0, dots));
            unsigned b = parse_one(item.substr(dots + 2));
            if (b < a) throw UsageError("descending L range '" + std::string(item) + "'");
            for (unsigned l = a; l <= b; ++l) out.push_back(l);
        } else {
            out.push_back(parse_one(item));
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string format_number(double x)
{
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

namespace {

ModelSpec model_for(const RunConfig& c, unsigned L)
{
    try {
        switch (c.model) {
        case ModelKind::Sho: return sho_model(L);
        case ModelKind::SingleSpin: return single_spin_model(c.s, c.J, L);
        case ModelKind::Dimer: return dimer_model(c.J, c.Jprime, L);
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown model");
}

json model_json(const ModelSpec& m)
{
    json j{{"kind", to_string(m.kind)}, {"L", m.L}};
    if (m.kind == ModelKind::SingleSpin) {
        j["s"] = to_string(m.s);
        j["J"] = to_string(m.J);
    } else if (m.kind == ModelKind::Dimer) {
        j["J"] = to_string(m.J);
        j["Jprime"] = to_string(m.Jprime);
    }
    return j;
}

json optional_rational(const std::optional<Rational>& q)
{
    return q ? json(to_string(*q)) : json(nullptr);
}

json limits_json(const ZeroTemperatureLimits& l)
{
    return {{"U", optional_rational(l.U)}, {"Utilde", optional_rational(l.Utilde)}, {"C", optional_rational(l.C)}};
}

json sample_json(const ThermoSample& s)
{
    return {{"beta", s.beta}, {"T", s.T},
            {"Z", s.Z},       {"U", s.U},
            {"Utilde", s.Utilde ? json(*s.Utilde) : json(nullptr)},
            {"C", s.C}};
}

// Numbers in JSON go through the same 12-digit formatting as CSV so output is stable.
json rounded(const json& j)
{
    if (j.is_number_float()) return json::parse(format_number(j.get<double>()));
    if (j.is_object() || j.is_array()) {
        json copy = j;
        for (auto& v : copy) v = rounded(v);
        return copy;
    }
    return j;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + path + "'");
    f << text;
}

std::string dump(const json& j) { return rounded(j).dump(2) + "\n"; }

} // namespace

std::string curve_csv(const ThermoCurve& curve)
{
    std::ostringstream os;
    os << "beta,T,L,Z,U,Utilde,C\n";
    for (const auto& s : curve.samples) {
        os << format_number(s.beta) << ',' << format_number(s.T) << ',';
        if (!curve.exact) os << curve.model.L;
        os << ',' << format_number(s.Z) << ',' << format_number(s.U) << ',';
        if (s.Utilde) os << format_number(*s.Utilde);
        os << ',' << format_number(s.C) << '\n';
    }
    return os.str();
}

int cmd_curve(const RunConfig& config, std::ostream& out)
{
    std::vector<double> betas;
    try {
        betas = beta_grid(config.beta_min, config.beta_max, config.steps, config.spacing);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (config.L_list.empty()) throw UsageError("empty L list");

    const std::string name = to_string(config.model);
    const std::filesystem::path dir = config.out.empty() ? std::filesystem::path(".") : std::filesystem::path(config.out);
    std::filesystem::create_directories(dir);

    std::vector<ModelSpec> models;
    for (unsigned L : config.L_list) models.push_back(model_for(config, L));
    const ThermoCurve exact = exact_curve(models.front(), betas);

    json limits{{"exact", limits_json(exact_zero_temperature_limits(models.front()))}, {"approximants", json::array()}};
    for (const auto& m : models)
        limits["approximants"].push_back({{"L", m.L}, {"limits", limits_json(zero_temperature_limits(m))}});

    std::vector<std::string> written;
    if (config.format == OutputFormat::Csv) {
        for (const auto& m : models) {
            auto path = dir / (name + "_L" + std::to_string(m.L) + ".csv");
            write_text(path.string(), curve_csv(model_curve(m, betas)), out);
            written.push_back(path.string());
        }
        auto exact_path = dir / (name + "_exact.csv");
        write_text(exact_path.string(), curve_csv(exact), out);
        written.push_back(exact_path.string());
        auto limits_path = dir / (name + "_limits.json");
        write_text(limits_path.string(), dump(json{{"model", model_json(models.front())}, {"limits", limits}}), out);
        written.push_back(limits_path.string());
    } else {
        json doc{{"model", model_json(models.front())}, {"curves", json::array()}};
        for (const auto& m : models) {
            json samples = json::array();
            for (const auto& s : model_curve(m, betas).samples) samples.push_back(sample_json(s));
            doc["curves"].push_back({{"L", m.L}, {"samples", samples}});
        }
        json exact_samples = json::array();
        for (const auto& s : exact.samples) exact_samples.push_back(sample_json(s));
        doc["exact"] = {{"samples", exact_samples}};
        doc["limits"] = limits;
        auto path = dir / (name + "_curves.json");
        write_text(path.string(), dump(doc), out);
        written.push_back(path.string());
    }
    for (const auto& w : written) out << w << '\n';
    return exit_ok;
}

int cmd_dos(const RunConfig& config, std::ostream& out)
{
    if (config.L_list.size() != 1) throw UsageError("dos takes a single L");
    const ModelSpec model = model_for(config, config.L_list.front());

    if (model.kind == ModelKind::Sho) {
        if (config.steps < 2) throw UsageError("need at least two energy steps");
        if (!(config.e_max > config.e_min)) throw UsageError("e-max must exceed e-min");
        std::ostringstream os;
        os << "E,g\n";
        for (unsigned i = 0; i < config.steps; ++i) {
            double E = config.e_min + (config.e_max - config.e_min) * i / (config.steps - 1);
            os << format_number(E) << ',' << format_number(sho_dos(model.L, E)) << '\n';
        }
        write_text(config.out, os.str(), out);
        return exit_ok;
    }

    const DeltaComb comb = model.kind == ModelKind::SingleSpin ? spin_dos(model.s, model.J, model.L)
                                                               : dimer_dos(model.J, model.Jprime, model.L);
    write_text(config.out, to_json(comb).dump() + "\n", out);
    return exit_ok;
}

int cmd_series(const RunConfig& config, std::ostream& out)
{
    if (config.order > 8) throw UsageError("series order must be <= 8");
    if (config.model == ModelKind::Sho) throw UsageError("series is defined for the spin models");

    std::vector<std::pair<unsigned, std::vector<Rational>>> rows;
    for (unsigned L : config.L_list) {
        const ModelSpec m = model_for(config, L);
        rows.emplace_back(L, m.kind == ModelKind::Dimer ? dimer_series(m.J, m.Jprime, L, config.order)
                                                        : exppoly_taylor(spin_zl_exppoly(m.s, m.J, L), config.order));
    }

    std::ostringstream os;
    if (config.format == OutputFormat::Json) {
        json doc{{"model", to_string(config.model)}, {"order", config.order}, {"rows", json::array()}};
        for (const auto& [L, coeffs] : rows) doc["rows"].push_back({{"L", L}, {"coefficients", to_json(coeffs)}});
        os << doc.dump(2) << '\n';
    } else {
        os << "L";
        for (unsigned k = 0; k <= config.order; ++k) os << ",c" << k;
        os << '\n';
        for (const auto& [L, coeffs] : rows) {
            os << L;
            for (const auto& c : coeffs) os << ',' << to_string(c);
            os << '\n';
        }
    }
    write_text(config.out, os.str(), out);
    return exit_ok;
}

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    if (config.L_list.size() != 1) throw UsageError("check takes a single L");
    if (config.model == ModelKind::Sho) throw UsageError("check drives the auxiliary-field integrals of the spin models");
    if (!(config.beta > 0)) throw UsageError("beta must be positive");
    const ModelSpec m = model_for(config, config.L_list.front());
    const bool energy = config.quantity == "u";
    if (!energy && config.quantity != "z") throw UsageError("quantity must be z or u");

    double closed = 0;
    if (m.kind == ModelKind::SingleSpin)
        closed = energy ? spin_ul(m.s, m.J, m.L, config.beta) : spin_zl(m.s, m.J, m.L, config.beta);
    else
        closed = energy ? dimer_ul(m.J, m.Jprime, m.L, config.beta) : dimer_zl(m.J, m.Jprime, m.L, config.beta);

    FieldIntegralEstimate est;
    json report{{"model", model_json(m)}, {"beta", config.beta}, {"quantity", config.quantity}};
    try {
        if (config.method == "quadrature") {
            if (energy) throw UsageError("quadrature check covers Z only; use --method mc for U");
            est = quadrature_z(m, config.beta, config.nodes, config.workers);
        } else if (config.method == "mc") {
            MonteCarloOptions opts{config.samples, config.seed, config.channel, config.workers};
            est = energy ? monte_carlo_u(m, config.beta, opts) : monte_carlo_z(m, config.beta, opts);
        } else {
            throw UsageError("method must be quadrature or mc");
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    const double error = est.value.real() - closed;
    bool pass = false;
    report["method"] = config.method;
    report["closed_form"] = closed;
    report["estimate"] = est.value.real();
    report["estimate_imag"] = est.value.imag();
    report["error"] = error;
    report["n_samples"] = est.n_samples;
    if (est.method == EstimateMethod::Quadrature) {
        report["tolerance"] = 1e-6;
        pass = std::abs(error) <= 1e-6;
    } else {
        report["std_error"] = est.std_error;
        report["sigma_distance"] = est.std_error > 0 ? std::abs(error) / est.std_error : 0.0;
        report["avg_sign"] = est.avg_sign ? json(*est.avg_sign) : json(nullptr);
        report["n_negative"] = est.n_negative;
        report["seed"] = config.seed;
        report["channel"] = config.channel == Channel::Real ? "real" : "mixed";
        pass = std::abs(error) <= 3 * est.std_error;
        if (config.channel == Channel::Real && est.n_negative > 0)
            err << "warning: " << est.n_negative << " samples with negative integrand in the real channel\n";
    }
    report["pass"] = pass;
    write_text(config.out, dump(report), out);
    return pass ? exit_ok : exit_validation_failure;
}

namespace {

// Flat key=value lines; '#' starts a comment. Keys may be written with or without "--".
std::vector<std::string> config_tokens(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file '" + path + "'");
    std::vector<std::string> tokens;
    std::string line;
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        s.erase(0, s.find_first_not_of(ws));
        s.erase(s.find_last_not_of(ws) + 1);
        return s;
    };
    while (std::getline(f, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.rfind("--", 0) != 0) key = "--" + key;
        tokens.push_back(key);
        tokens.push_back(value);
    }
    return tokens;
}

struct RawOptions {
    std::string model, s = "1/2", j = "1", jprime = "0", l_list, l, spacing = "linear", format = "csv", channel = "real";
    std::string config;
};

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    // Splice config-file values in front of the command-line flags so the latter win.
    std::vector<std::string> argv_text = args;
    for (std::size_t i = 1; i + 1 < argv_text.size(); ++i) {
        if (argv_text[i] != "--config") continue;
        try {
            auto tokens = config_tokens(argv_text[i + 1]);
            std::size_t sub = 1;
            argv_text.erase(argv_text.begin() + static_cast<long>(i), argv_text.begin() + static_cast<long>(i) + 2);
            argv_text.insert(argv_text.begin() + static_cast<long>(sub) + 1, tokens.begin(), tokens.end());
        } catch (const UsageError& e) {
            err << "error: " << e.what() << '\n';
            return exit_usage;
        }
        break;
    }

    CLI::App app{"Finite-L time-slice approximants for exactly solvable quantum models"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    RunConfig config;
    RawOptions raw;

    auto add_model = [&](CLI::App* sub) {
        sub->add_option("--model", raw.model, "sho | spin | dimer")->required();
        sub->add_option("--s", raw.s, "spin magnitude (single spin)");
        sub->add_option("--j", raw.j, "coupling J (exact decimal or p/q)");
        sub->add_option("--jprime", raw.jprime, "self-interaction J' (dimer)");
        sub->add_option("--l-list", raw.l_list, "slice counts: 1,3,5 or 1..10");
        sub->add_option("--l", raw.l, "single slice count");
        sub->add_option("--format", raw.format, "csv | json");
        sub->add_option("--out", config.out, "output path");
        sub->add_option("--workers", config.workers, "worker threads (0 = all cores)");
        sub->add_option("--config", raw.config, "key=value config file");
    };

    auto* curve = app.add_subcommand("curve", "thermodynamic curves per L plus the exact curve");
    add_model(curve);
    curve->add_option("--beta-min", config.beta_min);
    curve->add_option("--beta-max", config.beta_max);
    curve->add_option("--steps", config.steps);
    curve->add_option("--spacing", raw.spacing, "linear | log");

    auto* dos = app.add_subcommand("dos", "density of states: exact comb (spins) or sampled CSV (oscillator)");
    add_model(dos);
    dos->add_option("--e-min", config.e_min);
    dos->add_option("--e-max", config.e_max);
    dos->add_option("--steps", config.steps);

    auto* series = app.add_subcommand("series", "exact high-temperature series of Z_L");
    add_model(series);
    series->add_option("--order", config.order);

    auto* check = app.add_subcommand("check", "cross-validate closed forms against the field integral");
    add_model(check);
    check->add_option("--beta", config.beta);
    check->add_option("--method", config.method, "quadrature | mc");
    check->add_option("--quantity", config.quantity, "z | u");
    check->add_option("--samples", config.samples);
    check->add_option("--seed", config.seed);
    check->add_option("--channel", raw.channel, "real | mixed");
    check->add_option("--nodes", config.nodes, "Gauss-Hermite nodes per dimension");

    std::vector<const char*> argv;
    for (const auto& a : argv_text) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        config.subcommand = app.get_subcommands().front()->get_name();
        try {
            config.model = parse_model_kind(raw.model);
            config.s = parse_rational(raw.s);
            config.J = parse_rational(raw.j);
            config.Jprime = parse_rational(raw.jprime);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (!raw.l.empty() && !raw.l_list.empty()) throw UsageError("give either --l or --l-list");
        if (!raw.l.empty()) config.L_list = parse_l_list(raw.l);
        if (!raw.l_list.empty()) config.L_list = parse_l_list(raw.l_list);

        if (raw.spacing == "log") config.spacing = Spacing::Log;
        else if (raw.spacing != "linear") throw UsageError("spacing must be linear or log");
        if (raw.format == "json") config.format = OutputFormat::Json;
        else if (raw.format != "csv") throw UsageError("format must be csv or json");
        if (raw.channel == "mixed") config.channel = Channel::Mixed;
        else if (raw.channel != "real") throw UsageError("channel must be real or mixed");

        if (config.subcommand == "curve") return cmd_curve(config, out);
        if (config.subcommand == "dos") return cmd_dos(config, out);
        if (config.subcommand == "series") return cmd_series(config, out);
        return cmd_check(config, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace tslice::app
