#include "salemap/harness.hpp"

#include "salemap/apcount.hpp"
#include "salemap/error.hpp"
#include "salemap/intsets.hpp"
#include "salemap/io.hpp"
#include "salemap/reports.hpp"
#include "salemap/salemgen.hpp"
#include "salemap/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

namespace salemap::harness {

namespace {

using reports::Json;

Format format_or(const RunConfig& c, Format fallback) { return c.format.value_or(fallback); }

// Scalars print as "key value"; nested objects flatten with dotted keys;
// arrays print their length.
void render_text(const Json& j, const std::string& prefix, std::string& out) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            render_text(*it, key, out);
        } else if (it->is_array()) {
            out += key + " [" + std::to_string(it->size()) + " entries]\n";
        } else if (it->is_string()) {
            out += key + " " + it->get<std::string>() + "\n";
        } else {
            out += key + " " + it->dump() + "\n";
        }
    }
}

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
    if (c.out.empty()) {
        out << text;
    } else {
        io::write_file(c.out, text);
    }
}

void emit_report(const RunConfig& c, std::ostream& out, const Json& j) {
    const Format f = format_or(c, Format::json);
    if (f == Format::csv) throw ParameterError("csv output is only available for spectrum");
    if (f == Format::text) {
        std::string text;
        render_text(j, "", text);
        emit(c, out, text);
    } else {
        emit(c, out, reports::dump(j));
    }
}

DiscreteSet input_set(const RunConfig& c) {
    if (c.in.empty()) throw ParameterError("--in is required");
    return io::read_set(c.in);
}

void run_construct(const RunConfig& c, std::ostream& out) {
    Json summary;
    summary["kind"] = c.kind;
    DiscreteSet set;
    std::optional<ConstructionTrace> trace;
    if (c.kind == "cantor") {
        set = cantor_build(c.depth);
        summary["depth"] = c.depth;
    } else if (c.kind == "full") {
        if (c.ambient < 1) throw ParameterError("--ambient must be positive for --kind full");
        set = DiscreteSet::full(c.ambient);
    } else if (c.kind == "points") {
        if (c.points.empty()) throw ParameterError("--points is required for --kind points");
        set = scale_embed(io::read_points(c.points), c.target);
    } else if (c.kind == "salem") {
        SalemConfig cfg;
        cfg.branching = c.branching;
        cfg.keep = c.keep;
        cfg.depth = c.depth;
        cfg.seed = c.seed;
        cfg.max_retries = c.max_retries;
        cfg.eta_override = c.eta;
        cfg.verify_blocks = c.verify_blocks;
        cfg.full_range_check = c.full_range_check;
        trace = construct(cfg);
        set = trace->final_set();
        summary["config"] = reports::to_json(cfg);
        summary["seed"] = cfg.seed;
        Json cards = Json::array();
        for (int m = 0; m <= cfg.depth; ++m) cards.push_back(trace->set_at(m).cardinality());
        summary["stageCardinalities"] = std::move(cards);
        const PsiSeries series = psi_series(*trace);
        summary["psiDiff"] = reports::to_json(psi_diff_check(series, cfg));
        if (c.beta) summary["finalDecay"] = reports::to_json(final_decay_report(*trace, *c.beta));
    } else {
        throw ParameterError("unknown --kind '" + c.kind + "' (cantor, salem, full, points)");
    }
    summary["ambient"] = set.ambient();
    summary["cardinality"] = set.cardinality();
    if (set.ambient() >= 2) summary["density"] = reports::to_json(fractional_density_fit(set));

    if (trace && !c.trace.empty()) {
        io::write_file(c.trace, reports::dump(reports::trace_json(*trace, c.out)));
        summary["tracePath"] = c.trace;
    }

    if (c.out.empty()) {
        out << (format_or(c, Format::text) == Format::json ? io::format_set_json(set) : io::format_set_text(set));
        return;
    }
    io::write_set(c.out, set, io::set_format_for(c.out));
    summary["setPath"] = c.out;
    const Format f = format_or(c, Format::json);
    if (f == Format::text) {
        std::string text;
        render_text(summary, "", text);
        out << text;
    } else {
        out << reports::dump(summary);
    }
}

void run_spectrum(const RunConfig& c, std::ostream& out) {
    const Spectrum s = dft_indicator(input_set(c));
    const Format f = format_or(c, Format::csv);
    if (f == Format::csv) {
        emit(c, out, io::spectrum_csv(s));
    } else {
        emit_report(c, out, reports::to_json(s));
    }
}

void run_decay(const RunConfig& c, std::ostream& out) {
    const DiscreteSet set = input_set(c);
    const Spectrum s = dft_indicator(set);
    DecayOptions opts;
    opts.beta = c.beta;
    opts.index = c.symmetric_index ? IndexMode::symmetric : IndexMode::raw;
    if (c.form == "kn") {
        opts.form = DecayForm::k_times_modulus;
    } else if (c.form == "k") {
        opts.form = DecayForm::k_only;
    } else {
        throw ParameterError("--form must be 'kn' or 'k'");
    }
    if (c.k_min || c.k_max) opts.range = FrequencyRange{c.k_min.value_or(1), c.k_max.value_or(set.ambient() - 1)};
    Json j;
    j["ambient"] = set.ambient();
    j["decay"] = reports::to_json(decay_fit(s, opts));
    emit_report(c, out, j);
}

void run_count(const RunConfig& c, std::ostream& out) {
    DiscreteSet set = input_set(c);
    const Int original = set.ambient();
    if (c.oddify) set = oddify(set);
    Json j = reports::to_json(count_aps(set, parse_method(c.method)));
    j["inputAmbient"] = original;
    j["oddified"] = set.ambient() != original;
    emit_report(c, out, j);
}

void run_guarantee(const RunConfig& c, std::ostream& out) {
    const DiscreteSet set = input_set(c);
    UniformityParams p = UniformityParams::from_set(set, c.epsilon);
    if (c.alpha) {
        p.alpha = *c.alpha;
        p.delta = c.delta.value_or(static_cast<double>(set.cardinality()) /
                                   std::pow(static_cast<double>(set.ambient()), p.alpha));
    } else if (c.delta) {
        throw ParameterError("--delta requires --alpha");
    }
    Json j;
    j["ambient"] = set.ambient();
    j["cardinality"] = set.cardinality();
    j["params"] = {{"delta", p.delta}, {"alpha", p.alpha}, {"epsilon", p.epsilon}, {"beta", p.beta()}};
    j["guarantee"] = reports::to_json(uniformity_guarantee(set, p));
    j["genuineCount"] = genuine_ap_count(set);
    emit_report(c, out, j);
}

void run_verify(const RunConfig& c, std::ostream& out) {
    DiscreteSet set = input_set(c);
    const Int original = set.ambient();
    if (c.oddify) set = oddify(set);
    FejerParams fejer;
    if (c.fejer_k == "auto") {
        fejer = auto_fejer(set.ambient());
    } else {
        std::size_t used = 0;
        long long k = 0;
        try {
            k = std::stoll(c.fejer_k, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != c.fejer_k.size()) throw ParameterError("--fejer-k must be 'auto' or an integer");
        fejer.cutoff = k;
    }
    if (c.symmetric_fejer) fejer.variant = FejerVariant::symmetric;
    Theorem41Options opts;
    opts.beta = c.beta;
    opts.epsilon = c.epsilon;
    opts.index = c.symmetric_index ? IndexMode::symmetric : IndexMode::raw;
    Json j = reports::to_json(theorem41_verify(set, fejer, opts));
    j["inputAmbient"] = original;
    j["oddified"] = set.ambient() != original;
    emit_report(c, out, j);
}

void run_smear(const RunConfig& c, std::ostream& out) {
    const DiscreteSet set = input_set(c);
    const SmearingReport rep = smearing_diagnostic(set);
    if (format_or(c, Format::json) == Format::csv) {
        std::string text = "k,groupSum,rhs,ratio,exceeds\n";
        char buf[160];
        for (const auto& r : rep.rows) {
            std::snprintf(buf, sizeof buf, "%lld,%.15g,%.15g,%.15g,%d\n", static_cast<long long>(r.k), r.group_sum,
                          r.rhs, r.ratio, r.exceeds ? 1 : 0);
            text += buf;
        }
        emit(c, out, text);
        return;
    }
    Json j;
    j["ambient"] = set.ambient();
    j["smearing"] = reports::to_json(rep);
    emit_report(c, out, j);
}

std::optional<std::string> config_path(std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw ParameterError("--config needs a file argument");
            std::string path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            return path;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            std::string path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            return path;
        }
    }
    return std::nullopt;
}

bool flag_given(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0 || a == "--no-" + key;
    });
}

// key=value lines become --key=value unless the flag is already present.
void apply_config_file(std::vector<std::string>& args, const std::string& path) {
    std::istringstream in(io::read_file(path));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        auto strip = [](std::string s) {
            const auto f = s.find_first_not_of(" \t\r");
            const auto l = s.find_last_not_of(" \t\r");
            return f == std::string::npos ? std::string{} : s.substr(f, l - f + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty()) throw ParameterError("config line " + std::to_string(lineno) + ": empty key");
        if (!flag_given(args, key)) args.push_back("--" + key + "=" + value);
    }
}

const std::map<std::string, Format> kFormats{{"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};

}  // namespace

void execute(const RunConfig& config, std::ostream& out) {
    switch (config.command) {
        case Command::construct: return run_construct(config, out);
        case Command::spectrum: return run_spectrum(config, out);
        case Command::decay: return run_decay(config, out);
        case Command::count_aps: return run_count(config, out);
        case Command::guarantee: return run_guarantee(config, out);
        case Command::verify: return run_verify(config, out);
        case Command::smear: return run_smear(config, out);
    }
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    bool verify_oddify = true;

    CLI::App app{"Fractional-density sets, spectra and 3-term progression counts", "salemap"};
    app.require_subcommand(1);
    app.allow_extras(false);

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input) sub->add_option("--in", cfg.in, "input set file (text or JSON)")->required();
        sub->add_option("--out", cfg.out, "output path (default: stdout)");
        sub->add_option("--format", cfg.format, "output format")->transform(CLI::CheckedTransformer(kFormats).description(""))->option_text("json|csv|text");
    };

    auto* construct_cmd = app.add_subcommand("construct", "build a set");
    add_common(construct_cmd, false);
    construct_cmd->add_option("--kind", cfg.kind, "cantor, salem, full or points")->capture_default_str();
    construct_cmd->add_option("--depth", cfg.depth, "Cantor depth or construction depth j")->capture_default_str();
    construct_cmd->add_option("--branching", cfg.branching, "N: blocks per interval")->capture_default_str();
    construct_cmd->add_option("--keep", cfg.keep, "t: blocks kept per interval")->capture_default_str();
    construct_cmd->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    construct_cmd->add_flag("--verify-blocks", cfg.verify_blocks, "enforce the eta condition per block");
    construct_cmd->add_option("--eta", cfg.eta, "override the eta threshold");
    construct_cmd->add_option("--max-retries", cfg.max_retries, "draws per block")->capture_default_str();
    construct_cmd->add_flag("--full-range-check", cfg.full_range_check, "verify blocks over all k in [1, N^j)");
    construct_cmd->add_option("--ambient", cfg.ambient, "ambient N for --kind full");
    construct_cmd->add_option("--points", cfg.points, "file of reals in [0,1] for --kind points");
    construct_cmd->add_option("--target", cfg.target, "target N for --kind points");
    construct_cmd->add_option("--trace", cfg.trace, "write the construction trace JSON here");
    construct_cmd->add_option("--beta", cfg.beta, "report final decay at this beta (salem)");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "indicator spectrum");
    add_common(spectrum_cmd, true);

    auto* decay_cmd = app.add_subcommand("decay", "fit the decay envelope");
    add_common(decay_cmd, true);
    decay_cmd->add_option("--beta", cfg.beta, "fix beta and fit only C");
    decay_cmd->add_option("--k-min", cfg.k_min, "first frequency checked");
    decay_cmd->add_option("--k-max", cfg.k_max, "last frequency checked");
    decay_cmd->add_flag("--symmetric", cfg.symmetric_index, "use min(k, N-k) for |k|");
    decay_cmd->add_option("--form", cfg.form, "kn: C (kN)^{-beta/2}; k: C k^{-beta/2}")->capture_default_str();

    auto* count_cmd = app.add_subcommand("count-aps", "count 3-term progressions");
    add_common(count_cmd, true);
    count_cmd->add_option("--method", cfg.method, "direct, spectral or both")->capture_default_str();
    count_cmd->add_flag("--oddify", cfg.oddify, "extend an even ambient by one");

    auto* guarantee_cmd = app.add_subcommand("guarantee", "middle-third uniformity guarantee");
    add_common(guarantee_cmd, true);
    guarantee_cmd->add_option("--alpha", cfg.alpha, "density exponent (default: fitted)");
    guarantee_cmd->add_option("--delta", cfg.delta, "density constant (default: |A|/N^alpha)");
    guarantee_cmd->add_option("--epsilon", cfg.epsilon, "beta = 2 alpha - 2 - epsilon")->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "decay checks and Lambda_3 decomposition");
    add_common(verify_cmd, true);
    verify_cmd->add_option("--fejer-k", cfg.fejer_k, "Fejer cutoff K or 'auto' (floor(N^{1/3}))")->capture_default_str();
    verify_cmd->add_option("--beta", cfg.beta, "fix beta instead of fitting it");
    verify_cmd->add_option("--epsilon", cfg.epsilon, "epsilon for the guarantee")->capture_default_str();
    verify_cmd->add_flag("--oddify,!--no-oddify", verify_oddify, "extend an even ambient by one (default on)");
    verify_cmd->add_flag("--symmetric-fejer", cfg.symmetric_fejer, "pair frequencies k and N-k in the kernel");
    verify_cmd->add_flag("--symmetric", cfg.symmetric_index, "use min(k, N-k) for |k| in the decay fit");

    auto* smear_cmd = app.add_subcommand("smear", "smearing diagnostic for the [0,3N) embedding");
    add_common(smear_cmd, true);

    try {
        std::vector<std::string> args = raw_args;
        if (auto path = config_path(args)) apply_config_file(args, *path);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        if (app.got_subcommand(construct_cmd)) cfg.command = Command::construct;
        if (app.got_subcommand(spectrum_cmd)) cfg.command = Command::spectrum;
        if (app.got_subcommand(decay_cmd)) cfg.command = Command::decay;
        if (app.got_subcommand(count_cmd)) cfg.command = Command::count_aps;
        if (app.got_subcommand(guarantee_cmd)) cfg.command = Command::guarantee;
        if (app.got_subcommand(smear_cmd)) cfg.command = Command::smear;
        if (app.got_subcommand(verify_cmd)) {
            cfg.command = Command::verify;
            cfg.oddify = verify_oddify;
        }
        execute(cfg, out);
        return kExitOk;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitParameter;
    }
}

}  // namespace salemap::harness
