#include "cli/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "chaosmark/chaos_analysis.hpp"
#include "chaosmark/modulation.hpp"
#include "chaosmark/tm_encoding.hpp"
#include "cli/io.hpp"
#include "cli/report.hpp"

namespace chaosmark::cli {

using nlohmann::ordered_json;

namespace {

struct SchemeOptions {
    std::string scheme = "ss";
    std::optional<std::size_t> nv;
    std::optional<std::size_t> nc;
    double gamma = 1.0;
    double alpha = 1.0;
    double lambda = 1.0;
    double eta = 1.0;
    double bound_n = 1e6;
    std::uint64_t key = 0;
    bool no_orthonormalize = false;
};

struct EmbedOptions {
    SchemeOptions scheme;
    std::string host;
    std::string message;
    std::string message_file;
    std::string out;
    std::string meta;
};

struct DecodeOptions {
    SchemeOptions scheme;
    std::string stego;
    std::string out;
    std::string format = "json";
};

struct AnalyzeOptions {
    std::size_t nv = 4;
    double bound_n = 10.0;
    std::size_t truncation = 64;
    double tolerance = 1e-9;
    std::optional<std::uint64_t> seed;
    std::size_t prefix_len = 8;
    std::string point;
    std::string target;
    std::string format = "json";
    std::string out;
    double r = 0.1;
    double eps = 0.5;
    std::size_t n_max = 100;
    std::size_t trials = 500;
    std::vector<double> scales = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    std::string pair = "random";
};

struct TmOptions {
    std::string machine;
    std::string tape;
    std::int64_t head = 0;
    std::size_t max_steps = 1000;
    std::string format = "json";
    std::string out;
};

void add_scheme_options(CLI::App* cmd, SchemeOptions& o) {
    cmd->add_option("--scheme", o.scheme, "Modulation: ss, iss or nw")->capture_default_str();
    cmd->add_option("--nv", o.nv, "Vector dimension (defaults to the input length)");
    cmd->add_option("--nc", o.nc, "Payload bits");
    cmd->add_option("--gamma", o.gamma, "SS distortion level")->capture_default_str();
    cmd->add_option("--alpha", o.alpha, "ISS amplitude")->capture_default_str();
    cmd->add_option("--lambda", o.lambda, "ISS host rejection in [0,1]")->capture_default_str();
    cmd->add_option("--eta", o.eta, "NW scaling")->capture_default_str();
    cmd->add_option("--bound-n", o.bound_n, "Bound N on strategy components")->capture_default_str();
    cmd->add_option("--key", o.key, "Carrier key")->capture_default_str();
    cmd->add_flag("--no-orthonormalize", o.no_orthonormalize, "Keep raw Gaussian carriers");
}

SchemeConfig scheme_config(const SchemeOptions& o, std::size_t nv, std::size_t nc) {
    SchemeConfig cfg;
    cfg.nv = nv;
    cfg.nc = nc;
    cfg.gamma = o.gamma;
    cfg.alpha = o.alpha;
    cfg.lambda = o.lambda;
    cfg.eta = o.eta;
    cfg.bound_n = o.bound_n;
    cfg.key = o.key;
    cfg.orthonormalize = !o.no_orthonormalize;
    cfg.validate();
    return cfg;
}

ordered_json scheme_json(const SchemeConfig& cfg, Scheme scheme) {
    ordered_json j;
    j["scheme"] = to_string(scheme);
    j["nv"] = cfg.nv;
    j["nc"] = cfg.nc;
    j["gamma"] = cfg.gamma;
    j["alpha"] = cfg.alpha;
    j["lambda"] = cfg.lambda;
    j["eta"] = cfg.eta;
    j["bound_n"] = cfg.bound_n;
    j["key_fingerprint"] = key_fingerprint(cfg.key);
    j["orthonormalize"] = cfg.orthonormalize;
    return j;
}

std::size_t resolve_nv(const SchemeOptions& o, const VectorN& v, const std::string& path) {
    if (o.nv && *o.nv != v.size()) {
        throw DimensionError("--nv " + std::to_string(*o.nv) + " does not match '" + path + "' of length " +
                             std::to_string(v.size()));
    }
    return v.size();
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

int cmd_embed(const EmbedOptions& o, std::ostream& out) {
    const Scheme scheme = parse_scheme(o.scheme.scheme);
    const VectorN host = read_vector(o.host);
    if (o.message.empty() == o.message_file.empty()) {
        throw PreconditionError("give exactly one of --message or --message-file");
    }
    const std::string message_text = o.message.empty() ? read_text_file(o.message_file) : o.message;
    std::string_view trimmed = message_text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
    const Message m = parse_message(trimmed);
    if (o.scheme.nc && *o.scheme.nc != m.size()) {
        throw PreconditionError("message has " + std::to_string(m.size()) + " bits but --nc is " +
                                std::to_string(*o.scheme.nc));
    }
    const SchemeConfig cfg = scheme_config(o.scheme, resolve_nv(o.scheme, host, o.host), m.size());
    const CarrierSet carriers = generate_carriers(cfg);
    const VectorN stego = embed(host, m, carriers, cfg, scheme);
    write_vector(o.out, stego);

    ordered_json meta = report_header("embed", scheme_json(cfg, scheme));
    meta["host"] = o.host;
    meta["stego"] = o.out;
    meta["distortion_linf"] = d_inf(stego, host);
    const std::string meta_path = o.meta.empty() ? o.out + ".meta.json" : o.meta;
    write_text_file(meta_path, meta.dump(2) + "\n");
    out << "wrote " << o.out << " and " << meta_path << "\n";
    return kSuccess;
}

int cmd_decode(const DecodeOptions& o, std::ostream& out) {
    const Scheme scheme = parse_scheme(o.scheme.scheme);
    const ReportFormat format = parse_format(o.format);
    if (!o.scheme.nc) throw PreconditionError("decode requires --nc");
    const VectorN stego = read_vector(o.stego);
    const SchemeConfig cfg = scheme_config(o.scheme, resolve_nv(o.scheme, stego, o.stego), *o.scheme.nc);
    const CarrierSet carriers = generate_carriers(cfg);
    const DecodeResult result = decode(stego, carriers, cfg, scheme);

    ordered_json config = scheme_json(cfg, scheme);
    config["stego"] = o.stego;
    std::string text;
    if (format == ReportFormat::Json) {
        ordered_json j = report_header("decode", config);
        j["message"] = result.message.to_bit_string();
        j["ties"] = result.ties;
        text = j.dump(2) + "\n";
    } else {
        text = "index,bit,tie\n";
        for (std::size_t i = 0; i < result.message.size(); ++i) {
            const bool tie = std::find(result.ties.begin(), result.ties.end(), i) != result.ties.end();
            text += std::to_string(i) + "," + std::to_string(result.message.bits[i]) + "," + (tie ? "true" : "false") +
                    "\n";
        }
    }
    emit(o.out, text, out);
    return kSuccess;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    if (const char* env = std::getenv("CHAOSMARK_SEED"); env != nullptr && *env != '\0') {
        std::uint64_t v = 0;
        const std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw PreconditionError("CHAOSMARK_SEED must be an unsigned integer");
        }
        return v;
    }
    return 0;
}

int cmd_analyze(const std::string& sub, const AnalyzeOptions& o, std::ostream& out) {
    const ReportFormat format = parse_format(o.format);
    const std::uint64_t seed = resolve_seed(o.seed);
    SpaceConfig space{o.nv, o.bound_n, o.truncation, o.tolerance};
    space.validate();

    std::mt19937_64 gen(seed);
    auto load_or_random = [&](const std::string& path) {
        PhasePoint p = path.empty() ? random_phase_point(o.nv, o.bound_n, o.prefix_len, gen) : read_phase_point(path);
        if (p.nv() != space.nv) {
            throw DimensionError("phase point dimension " + std::to_string(p.nv()) + " does not match --nv " +
                                 std::to_string(space.nv));
        }
        return p;
    };

    ordered_json config;
    config["subcommand"] = sub;
    config["nv"] = o.nv;
    config["bound_n"] = o.bound_n;
    config["truncation"] = o.truncation;
    config["tolerance"] = o.tolerance;
    config["seed"] = seed;
    config["prefix_len"] = o.prefix_len;
    config["point"] = o.point.empty() ? "random" : o.point;

    std::vector<PhasePoint> inputs;
    std::optional<WitnessReport> report;
    std::optional<OrbitTrace> trace;
    bool witness = true;

    if (sub == "sensitivity") {
        config["r"] = o.r;
        inputs.push_back(load_or_random(o.point));
        report = witness_sensitivity(inputs[0], o.r, space);
    } else if (sub == "transitivity") {
        config["r"] = o.r;
        config["target"] = o.target.empty() ? "random" : o.target;
        inputs.push_back(load_or_random(o.point));
        inputs.push_back(load_or_random(o.target));
        report = witness_strong_transitivity(inputs[0], o.r, inputs[1], space);
    } else if (sub == "regularity") {
        config["eps"] = o.eps;
        inputs.push_back(load_or_random(o.point));
        report = witness_regularity(inputs[0], o.eps, space);
    } else if (sub == "expansivity") {
        config.erase("point");
        config.erase("prefix_len");
        config["eps"] = o.eps;
        config["n_max"] = o.n_max;
        report = expansivity_counterexample(o.eps, o.n_max, space);
    } else if (sub == "continuity") {
        witness = false;
        config["scales"] = o.scales;
        inputs.push_back(load_or_random(o.point));
        trace = continuity_probe(inputs[0], o.scales, space);
    } else if (sub == "scan") {
        witness = false;
        config["r"] = o.r;
        config["trials"] = o.trials;
        config["n_max"] = o.n_max;
        inputs.push_back(load_or_random(o.point));
        const double best = empirical_sensitivity_scan(inputs[0], o.r, o.trials, o.n_max, seed, space);
        WitnessReport r;
        r.property = Property::Sensitivity;
        r.tolerance = space.tolerance;
        r.inputs = {{"r", o.r}, {"trials", static_cast<double>(o.trials)}, {"n_max", static_cast<double>(o.n_max)}};
        r.iterations_used = o.n_max;
        r.measured = {{"max_separation", best}, {"sensitivity_constant", o.bound_n / 2.0}};
        r.verdict = best >= o.bound_n / 2.0 - space.tolerance;
        report = std::move(r);
    } else if (sub == "trace") {
        witness = false;
        config["pair"] = o.pair;
        config["n_max"] = o.n_max;
        if (o.pair == "expansivity") {
            config["eps"] = o.eps;
            const WitnessReport w = expansivity_counterexample(o.eps, 0, space);
            inputs = w.constructed;
        } else if (o.pair == "sensitivity") {
            config["r"] = o.r;
            inputs.push_back(load_or_random(o.point));
            inputs.push_back(witness_sensitivity(inputs[0], o.r, space).constructed.at(0));
        } else if (o.pair == "random") {
            config["r"] = o.r;
            inputs.push_back(load_or_random(o.point));
            inputs.push_back(o.target.empty() ? sensitivity_trial_point(inputs[0], o.r, seed, 0, space)
                                              : load_or_random(o.target));
        } else {
            throw PreconditionError("--pair must be random, sensitivity or expansivity");
        }
        trace = divergence_trace(inputs[0], inputs[1], o.n_max, space);
    } else {
        throw PreconditionError("unknown analyze subcommand '" + sub + "'");
    }

    std::string text;
    if (format == ReportFormat::Json) {
        ordered_json j = report_header("analyze " + sub, config);
        ordered_json points = ordered_json::array();
        for (const auto& p : inputs) points.push_back(to_json(p));
        j["input_points"] = std::move(points);
        if (report) j["report"] = to_json(*report);
        if (trace) j["trace"] = to_json(*trace);
        text = j.dump(2) + "\n";
    } else {
        text = report ? witness_csv(*report, config) : trace_csv(*trace);
    }
    emit(o.out, text, out);
    if (witness && report && !report->verdict) return kVerdictFalse;
    return kSuccess;
}

int cmd_tm(const TmOptions& o, std::ostream& out) {
    const ReportFormat format = parse_format(o.format);
    const TuringMachine machine = parse_machine(read_text_file(o.machine));
    const TmConfiguration start = initial_configuration(machine, o.tape, o.head);
    const RunResult result = tm_run(machine, start, o.max_steps);
    const auto [tape, origin] = result.config.trimmed();

    ordered_json config;
    config["machine"] = o.machine;
    config["tape"] = o.tape;
    config["head"] = o.head;
    config["max_steps"] = o.max_steps;
    std::string text;
    if (format == ReportFormat::Json) {
        ordered_json j = report_header("tm", config);
        j["tape"] = tape;
        j["tape_origin"] = origin;
        j["head"] = result.config.head();
        j["state"] = result.config.state();
        j["steps"] = result.steps;
        j["halted"] = result.halted;
        j["status"] = to_string(result.status);
        text = j.dump(2) + "\n";
    } else {
        text = "key,value\n";
        text += "tape," + tape + "\n";
        text += "tape_origin," + std::to_string(origin) + "\n";
        text += "head," + std::to_string(result.config.head()) + "\n";
        text += "state," + result.config.state() + "\n";
        text += "steps," + std::to_string(result.steps) + "\n";
        text += std::string("halted,") + (result.halted ? "true" : "false") + "\n";
        text += "status," + std::string(to_string(result.status)) + "\n";
    }
    emit(o.out, text, out);
    return kSuccess;
}

void add_analyze_common(CLI::App* cmd, AnalyzeOptions& o) {
    cmd->add_option("--nv", o.nv, "Vector dimension")->capture_default_str();
    cmd->add_option("--bound-n", o.bound_n, "Bound N")->capture_default_str();
    cmd->add_option("--series-truncation", o.truncation, "Terms of d_s summed when no closed form applies")
        ->capture_default_str();
    cmd->add_option("--tolerance", o.tolerance, "Verification tolerance")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Seed for random points (falls back to CHAOSMARK_SEED, then 0)");
    cmd->add_option("--prefix-len", o.prefix_len, "Prefix length of random points")->capture_default_str();
    cmd->add_option("--point", o.point, "Phase point JSON file (random when omitted)");
    cmd->add_option("--format", o.format, "Report format: json or csv")->capture_default_str();
    cmd->add_option("--out", o.out, "Report path (stdout when omitted)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spread-spectrum embedding and chaos-analysis toolkit", "chaosmark"};
    app.require_subcommand(1);

    EmbedOptions embed_opts;
    auto* embed_cmd = app.add_subcommand("embed", "Embed a payload into a host vector");
    add_scheme_options(embed_cmd, embed_opts.scheme);
    embed_cmd->add_option("--host", embed_opts.host, "Host vector file (.json, .csv, .pgm)")->required();
    embed_cmd->add_option("--message", embed_opts.message, "Payload as 0/1 string or 0x-prefixed hex");
    embed_cmd->add_option("--message-file", embed_opts.message_file, "File holding the payload string");
    embed_cmd->add_option("--out", embed_opts.out, "Stego vector output (.json or .csv)")->required();
    embed_cmd->add_option("--meta", embed_opts.meta, "Metadata output (default <out>.meta.json)");

    DecodeOptions decode_opts;
    auto* decode_cmd = app.add_subcommand("decode", "Recover a payload from a stego vector");
    add_scheme_options(decode_cmd, decode_opts.scheme);
    decode_cmd->add_option("--stego", decode_opts.stego, "Stego vector file")->required();
    decode_cmd->add_option("--format", decode_opts.format, "Report format: json or csv")->capture_default_str();
    decode_cmd->add_option("--out", decode_opts.out, "Report path (stdout when omitted)");

    AnalyzeOptions analyze_opts;
    auto* analyze_cmd = app.add_subcommand("analyze", "Run chaos witnesses, scans and traces");
    analyze_cmd->require_subcommand(1);
    std::string analyze_sub;
    auto add_sub = [&](const char* name, const char* help) {
        auto* c = analyze_cmd->add_subcommand(name, help);
        add_analyze_common(c, analyze_opts);
        c->callback([&analyze_sub, name] { analyze_sub = name; });
        return c;
    };
    auto* sens = add_sub("sensitivity", "Sensitivity witness (separation >= N/2)");
    sens->add_option("--r", analyze_opts.r, "Ball radius")->capture_default_str();
    auto* trans = add_sub("transitivity", "Strong transitivity witness");
    trans->add_option("--r", analyze_opts.r, "Radius of the source ball")->capture_default_str();
    trans->add_option("--target", analyze_opts.target, "Target phase point JSON (random when omitted)");
    auto* reg = add_sub("regularity", "Periodic-point density witness");
    reg->add_option("--eps", analyze_opts.eps, "Closeness")->capture_default_str();
    auto* expan = add_sub("expansivity", "Non-expansivity counterexample");
    expan->add_option("--eps", analyze_opts.eps, "Candidate expansivity constant")->capture_default_str();
    expan->add_option("--n-max", analyze_opts.n_max, "Iterations")->capture_default_str();
    auto* cont = add_sub("continuity", "Sequential continuity probe");
    cont->add_option("--scales", analyze_opts.scales, "Strictly decreasing perturbation sizes")->delimiter(',');
    auto* scan = add_sub("scan", "Monte-Carlo sensitivity scan");
    scan->add_option("--r", analyze_opts.r, "Ball radius")->capture_default_str();
    scan->add_option("--trials", analyze_opts.trials, "Random perturbations")->capture_default_str();
    scan->add_option("--n-max", analyze_opts.n_max, "Iterations per trial")->capture_default_str();
    auto* tr = add_sub("trace", "Orbit divergence trace");
    tr->add_option("--pair", analyze_opts.pair, "random, sensitivity or expansivity")->capture_default_str();
    tr->add_option("--target", analyze_opts.target, "Second phase point for --pair random");
    tr->add_option("--r", analyze_opts.r, "Radius for random/sensitivity pairs")->capture_default_str();
    tr->add_option("--eps", analyze_opts.eps, "eps for the expansivity pair")->capture_default_str();
    tr->add_option("--n-max", analyze_opts.n_max, "Last step")->capture_default_str();

    TmOptions tm_opts;
    auto* tm_cmd = app.add_subcommand("tm", "Simulate a Turing machine as an iterated map");
    tm_cmd->add_option("--machine", tm_opts.machine, "Machine description file")->required();
    tm_cmd->add_option("--tape", tm_opts.tape, "Initial tape from cell 0");
    tm_cmd->add_option("--head", tm_opts.head, "Initial head position")->capture_default_str();
    tm_cmd->add_option("--max-steps", tm_opts.max_steps, "Step budget")->capture_default_str()->check(
        CLI::PositiveNumber);
    tm_cmd->add_option("--format", tm_opts.format, "Output format: json or csv")->capture_default_str();
    tm_cmd->add_option("--out", tm_opts.out, "Output path (stdout when omitted)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    try {
        if (embed_cmd->parsed()) return cmd_embed(embed_opts, out);
        if (decode_cmd->parsed()) return cmd_decode(decode_opts, out);
        if (analyze_cmd->parsed()) return cmd_analyze(analyze_sub, analyze_opts, out);
        if (tm_cmd->parsed()) return cmd_tm(tm_opts, out);
    } catch (const IoError& e) {
        err << "chaosmark: " << e.what() << "\n";
        return kIoError;
    } catch (const ParseError& e) {
        err << "chaosmark: " << e.what() << "\n";
        return kIoError;
    } catch (const Error& e) {
        err << "chaosmark: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "chaosmark: " << e.what() << "\n";
        return kIoError;
    }
    return kUsageError;
}

}  // namespace chaosmark::cli
