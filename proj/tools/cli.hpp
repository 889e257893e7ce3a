#ifndef BIGRAPHIC_TOOLS_CLI_HPP
#define BIGRAPHIC_TOOLS_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bigraphic/campaign.hpp"
#include "bigraphic/core.hpp"
#include "bigraphic/gale_ryser.hpp"
#include "bigraphic/interval_criteria.hpp"
#include "bigraphic/io.hpp"
#include "bigraphic/oracle.hpp"

namespace bigraphic::cli
{

enum ExitCode : int { holds = 0, fails = 1, input_error = 2, budget_exceeded = 3 };

struct Options
{
    std::string format = "json";
    std::string input;
    bool edges = false;
    std::uint64_t budget = 10'000'000;
    std::uint64_t seed = 0;
    std::uint64_t count = 100;
    std::size_t m_max = 4;
    std::size_t n_max = 4;
    Degree deg_max = 5;
    std::string mode = "unconstrained";
    unsigned workers = 1;
};

namespace detail
{

using io::Json;

class UsageError : public InputError
{
public:
    using InputError::InputError;
};

inline std::string read_input(const std::string& path, std::istream& in)
{
    if (path.empty() || path == "-")
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw UsageError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

inline Json header(const std::string& command, const std::string& status)
{
    Json doc = Json::object();
    doc["command"] = command;
    doc["status"] = status;
    return doc;
}

inline std::string text_violations(const CheckReport& report)
{
    std::string out;
    for (const auto& v : report.violations)
        out += std::string(family_tag(v.family)) + " " + std::string(family_index_name(v.family)) +
               "=" + std::to_string(v.index) + ": " + std::to_string(v.lhs) + " > " +
               std::to_string(v.rhs) + "\n";
    return out;
}

inline std::string text_sequence(const std::vector<Degree>& seq)
{
    std::string out = "(";
    for (std::size_t i = 0; i < seq.size(); ++i)
        out += (i ? "," : "") + std::to_string(seq[i]);
    return out + ")";
}

inline std::string text_witness(const Witness& w)
{
    return "witness P=" + text_sequence(w.pair.p) + " Q=" + text_sequence(w.pair.q) +
           " failing_r=" + std::to_string(w.failing_r) + " construction=" + w.construction_tag + "\n";
}

struct Output
{
    int code = ExitCode::holds;
    Json doc;
    std::string text;
    bool text_only = false; // emitted as text regardless of --format
};

inline Output report_output(const std::string& command, const CheckReport& report)
{
    const std::string status = report.holds() ? "holds" : "fails";
    Output o{report.holds() ? ExitCode::holds : ExitCode::fails, header(command, status), {}};
    io::append(o.doc, report);
    o.text = status + "\n" + text_violations(report);
    return o;
}

inline const IntervalPair& need_intervals(const io::InstanceDocument& doc, const std::string& command)
{
    if (!doc.has_intervals())
        throw UsageError(command + " expects an 'intervals' document");
    return doc.intervals();
}

inline const DegreePair& need_degrees(const io::InstanceDocument& doc, const std::string& command)
{
    if (doc.has_intervals())
        throw UsageError(command + " expects a 'degrees' document");
    return doc.degrees();
}

inline std::string text_record_line(std::uint64_t seed, const ValidationRecord& rec)
{
    std::string line = "seed=" + std::to_string(seed) + " m=" + std::to_string(rec.instance.m()) +
                       " n=" + std::to_string(rec.instance.n());
    if (rec.partial)
        return line + " partial\n";
    auto v = [](Verdict x) { return x == Verdict::holds ? "H" : "F"; };
    const auto& p = rec.predictions;
    line += std::string(" existence=") + v(p.existence) + " sufficient=" + v(p.sufficient) +
            " necessary=" + v(p.necessary) + " exact=" + (p.exact ? v(*p.exact) : "NA") +
            " truth=" + std::string(kind_name(rec.ground_truth.kind)) +
            " pairs=" + std::to_string(rec.valid_pairs);
    if (rec.necessity_witness)
        line += " witness=" + rec.necessity_witness->construction_tag;
    line += " findings=" + std::to_string(rec.findings.size());
    for (const auto& f : rec.findings) line += " [" + f.tag + "]";
    return line + "\n";
}

inline Output run_fuzz(const Options& opt)
{
    CampaignParams params;
    params.seed = opt.seed;
    params.count = opt.count;
    params.gen = {opt.m_max, opt.n_max, opt.deg_max,
                  opt.mode == "exact" ? GenMode::exact_sum_hypotheses : GenMode::unconstrained};
    params.budget = opt.budget;
    params.workers = opt.workers;

    if (params.gen.m_max < 1 || params.gen.n_max < 1 || params.gen.deg_max < 1)
        throw UsageError("--m-max, --n-max and --deg-max must be at least 1");
    if (params.gen.deg_max > max_degree_value || params.gen.m_max > max_sequence_length ||
        params.gen.n_max > max_sequence_length)
        throw UsageError("generator parameters exceed the input caps");

    const auto entries = run_campaign(params);
    const auto digest = summarize(entries);

    Output o;
    o.code = digest.finding_count() == 0 ? ExitCode::holds : ExitCode::fails;
    o.doc = header("fuzz", digest.finding_count() == 0 ? "clean" : "findings");

    Json p = Json::object();
    p["seed"] = opt.seed;
    p["count"] = opt.count;
    p["m_max"] = opt.m_max;
    p["n_max"] = opt.n_max;
    p["deg_max"] = opt.deg_max;
    p["mode"] = opt.mode;
    p["budget"] = opt.budget;
    o.doc["params"] = std::move(p);

    Json records = Json::array();
    for (const auto& [seed, rec] : entries) {
        Json r = Json::object();
        r["seed"] = seed;
        const auto body = io::to_json(rec);
        for (const auto& [k, v] : body.items()) r[k] = v;
        records.push_back(std::move(r));
        o.text += text_record_line(seed, rec);
    }
    o.doc["records"] = std::move(records);

    Json d = Json::object();
    d["instances"] = digest.instances;
    d["partial"] = digest.partial;
    d["forcibly"] = digest.forcibly;
    d["vacuously_forcibly"] = digest.vacuous;
    d["not_forcibly"] = digest.not_forcibly;
    d["vacuous_necessity_failures"] = digest.vacuous_necessity_failures;
    d["witnesses_from_construction"] = digest.witnesses_from_construction;
    d["witnesses_from_enumeration"] = digest.witnesses_from_enumeration;
    Json f = Json::object();
    for (const auto& [tag, count] : digest.findings) f[tag] = count;
    d["findings"] = std::move(f);
    d["finding_count"] = digest.finding_count();
    o.doc["digest"] = d;

    o.text += "digest";
    for (const auto& [k, v] : d.items())
        if (!v.is_object())
            o.text += " " + k + "=" + v.dump();
    o.text += "\n";
    for (const auto& [tag, count] : digest.findings)
        o.text += "findings " + tag + "=" + std::to_string(count) + "\n";
    return o;
}

inline Output dispatch(const std::string& command, const Options& opt, std::istream& in)
{
    if (command == "fuzz")
        return run_fuzz(opt);

    const auto doc = io::parse_instance(read_input(opt.input, in));

    if (command == "check-bigraphic")
        return report_output(command, is_bigraphic(need_degrees(doc, command)));

    if (command == "realize") {
        const auto& pair = need_degrees(doc, command);
        try {
            const auto g = realize(pair);
            Output o{ExitCode::holds, header(command, "realized"), {}};
            io::append(o.doc, g);
            o.text = opt.edges ? io::format_edges(g) : "realized\n" + io::format_edges(g);
            o.text_only = opt.edges;
            return o;
        } catch (const NotBigraphicError& e) {
            Output o = report_output(command, e.report());
            o.doc["status"] = "not_bigraphic";
            o.text = "not_bigraphic\n" + text_violations(e.report());
            return o;
        }
    }

    const auto& ip = need_intervals(doc, command);
    if (command == "check-existence")
        return report_output(command, check_existence(ip));
    if (command == "forcibly-sufficient")
        return report_output(command, check_sufficient(ip));
    if (command == "forcibly-necessary")
        return report_output(command, check_necessary(ip));

    if (command == "forcibly-exact") {
        try {
            return report_output(command, check_exact(ip));
        } catch (const NotApplicableError& e) {
            Output o{ExitCode::fails, header(command, "not_applicable"), {}};
            o.doc["sum_d"] = e.sum_d;
            o.doc["sum_a"] = e.sum_a;
            o.doc["sum_c"] = e.sum_c;
            o.doc["sum_b"] = e.sum_b;
            o.text = std::string("not_applicable\n") + e.what() + "\n";
            return o;
        }
    }

    if (command == "forcibly-brute") {
        const auto v = brute_forcibly(ip, opt.budget);
        const auto status = io::status_name(v.kind);
        Output o{v.kind == ForciblyKind::not_forcibly ? ExitCode::fails : ExitCode::holds,
                 header(command, status), {}};
        io::append(o.doc, v);
        o.text = status + " pairs_examined=" + std::to_string(v.pairs_examined) + "\n";
        if (v.witness)
            o.text += text_witness(*v.witness);
        return o;
    }

    if (command == "witness") {
        if (check_necessary(ip).holds())
            throw UsageError("witness: the necessary criterion holds, so no witness is implied");
        bool any_valid = false;
        for_each_pair(ip, opt.budget, [&](const DegreePair&) {
            any_valid = true;
            return false;
        });
        if (!any_valid)
            throw UsageError("witness: the instance admits no valid pair");
        const auto w = necessity_witness(ip, opt.budget);
        if (!w) {
            Output o{ExitCode::holds, header(command, "none_found"), {}};
            o.doc["finding"] = "necessary criterion fails yet every valid pair is bigraphic";
            o.text = "none_found\n";
            return o;
        }
        Output o{ExitCode::fails, header(command, "witness"), {}};
        o.doc["witness"] = io::to_json(*w);
        o.text = text_witness(*w);
        return o;
    }

    if (command == "validate") {
        const auto rec = validate(ip, opt.budget);
        if (rec.partial)
            throw BudgetExceeded(opt.budget, 0);
        Output o{rec.findings.empty() ? ExitCode::holds : ExitCode::fails,
                 header(command, rec.findings.empty() ? "clean" : "findings"), {}};
        const auto body = io::to_json(rec);
        for (const auto& [k, v] : body.items()) o.doc[k] = v;
        o.text = text_record_line(0, rec);
        return o;
    }

    throw UsageError("unknown command '" + command + "'");
}

} // namespace detail

/// Runs one CLI invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err)
{
    Options opt;
    CLI::App app{"Bipartite degree-sequence realization over degree intervals", "bigraphic"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub, bool takes_input) {
        sub->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"json", "text"}));
        if (takes_input)
            sub->add_option("input", opt.input, "Instance document (default: standard input)");
    };
    auto budget = [&](CLI::App* sub) {
        sub->add_option("--budget", opt.budget, "Enumeration budget in search states")
            ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
    };

    common(app.add_subcommand("check-bigraphic", "Gale-Ryser test of a degree pair"), true);
    auto* realize_cmd = app.add_subcommand("realize", "Construct a bipartite realization");
    common(realize_cmd, true);
    realize_cmd->add_flag("--edges", opt.edges, "Print the edge list as 'i j' lines");
    common(app.add_subcommand("check-existence", "Does some realization fit the intervals"), true);
    common(app.add_subcommand("forcibly-sufficient", "Sufficient forcibly-bigraphic criterion"), true);
    common(app.add_subcommand("forcibly-necessary", "Necessary forcibly-bigraphic criterion"), true);
    common(app.add_subcommand("forcibly-exact", "Exact criterion under the sum hypotheses"), true);
    for (const char* name : {"forcibly-brute", "witness", "validate"}) {
        auto* sub = app.add_subcommand(name, name == std::string("forcibly-brute")
                                                 ? "Decide forcibly bigraphic by enumeration"
                                             : name == std::string("witness")
                                                 ? "Build a valid non-bigraphic pair"
                                                 : "Cross-check every criterion against enumeration");
        common(sub, true);
        budget(sub);
    }
    auto* fuzz = app.add_subcommand("fuzz", "Validate a stream of seeded random instances");
    common(fuzz, false);
    budget(fuzz);
    fuzz->add_option("--seed", opt.seed, "First instance seed");
    fuzz->add_option("--count", opt.count, "Number of instances");
    fuzz->add_option("--m-max", opt.m_max, "Largest X side")->check(CLI::PositiveNumber);
    fuzz->add_option("--n-max", opt.n_max, "Largest Y side")->check(CLI::PositiveNumber);
    fuzz->add_option("--deg-max", opt.deg_max, "Largest bound")->check(CLI::PositiveNumber);
    fuzz->add_option("--mode", opt.mode, "Instance generator")
        ->check(CLI::IsMember({"unconstrained", "exact"}));
    fuzz->add_option("--workers", opt.workers, "Worker threads")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return ExitCode::input_error;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const auto o = detail::dispatch(command, opt, in);
        if (opt.format == "json" && !o.text_only)
            out << o.doc.dump(2) << "\n";
        else
            out << o.text;
        return o.code;
    } catch (const io::ParseError& e) {
        err << "bigraphic: parse error at " << e.position() << ": " << e.reason() << "\n";
        return ExitCode::input_error;
    } catch (const BudgetExceeded& e) {
        err << "bigraphic: " << e.what() << "\n";
        auto doc = detail::header(command, "budget_exceeded");
        doc["budget"] = e.budget();
        doc["partial_count"] = e.partial_count();
        if (opt.format == "json")
            out << doc.dump(2) << "\n";
        else
            out << "budget_exceeded\n";
        return ExitCode::budget_exceeded;
    } catch (const std::invalid_argument& e) {
        err << "bigraphic: " << e.what() << "\n";
        return ExitCode::input_error;
    }
}

} // namespace bigraphic::cli

#endif // BIGRAPHIC_TOOLS_CLI_HPP
