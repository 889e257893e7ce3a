#ifndef BIGRAPHIC_IO_HPP
#define BIGRAPHIC_IO_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "core.hpp"
#include "gale_ryser.hpp"
#include "interval_criteria.hpp"
#include "oracle.hpp"

namespace bigraphic::io
{

using Json = nlohmann::ordered_json;

/// Input document error. `position` is "line L, column C" for syntax errors
/// and a JSON pointer (e.g. "/intervals/L1/0") for content errors.
class ParseError : public InputError
{
public:
    ParseError(std::string position, std::string reason)
        : InputError(position + ": " + reason), position_(std::move(position)),
          reason_(std::move(reason))
    {}

    const std::string& position() const noexcept { return position_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string position_;
    std::string reason_;
};

/// Either an interval pair or a concrete degree pair, plus free-form metadata.
struct InstanceDocument
{
    std::variant<IntervalPair, DegreePair> body;
    std::map<std::string, std::string> meta;

    bool has_intervals() const noexcept { return std::holds_alternative<IntervalPair>(body); }
    const IntervalPair& intervals() const { return std::get<IntervalPair>(body); }
    const DegreePair& degrees() const { return std::get<DegreePair>(body); }

    friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;
};

namespace detail
{

inline std::string line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

inline Degree degree_at(const Json& j, const std::string& path)
{
    if (j.is_number_unsigned()) {
        const auto v = j.get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(max_degree_value))
            throw ParseError(path, "value exceeds the cap of " + std::to_string(max_degree_value));
        return static_cast<Degree>(v);
    }
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0)
            throw ParseError(path, "negative value " + std::to_string(v));
        if (v > max_degree_value)
            throw ParseError(path, "value exceeds the cap of " + std::to_string(max_degree_value));
        return v;
    }
    throw ParseError(path, "expected a nonnegative integer");
}

inline const Json& array_at(const Json& parent, const char* key, const std::string& path)
{
    const std::string here = path + "/" + key;
    if (!parent.contains(key))
        throw ParseError(path, std::string("missing key '") + key + "'");
    const Json& j = parent.at(key);
    if (!j.is_array())
        throw ParseError(here, "expected an array");
    if (j.empty())
        throw ParseError(here, "list must not be empty");
    if (j.size() > max_sequence_length)
        throw ParseError(here, "list longer than " + std::to_string(max_sequence_length));
    return j;
}

inline IntervalSequence intervals_at(const Json& parent, const char* key, const std::string& path)
{
    const Json& arr = array_at(parent, key, path);
    std::vector<Interval> items;
    items.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string here = path + "/" + key + "/" + std::to_string(i);
        const Json& it = arr[i];
        if (!it.is_array() || it.size() != 2)
            throw ParseError(here, "expected [lo, hi]");
        const Degree lo = degree_at(it[0], here + "/0");
        const Degree hi = degree_at(it[1], here + "/1");
        if (lo > hi)
            throw ParseError(here, "lo " + std::to_string(lo) + " > hi " + std::to_string(hi));
        items.push_back({lo, hi});
    }
    return IntervalSequence(std::move(items));
}

inline std::vector<Degree> degrees_at(const Json& parent, const char* key, const std::string& path)
{
    const Json& arr = array_at(parent, key, path);
    std::vector<Degree> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(degree_at(arr[i], path + "/" + key + "/" + std::to_string(i)));
    return out;
}

} // namespace detail

/// Parses the canonical instance document:
///   {"intervals": {"L1": [[lo,hi],...], "L2": [[lo,hi],...]}, "meta": {...}}
///   {"degrees": {"P": [...], "Q": [...]}, "meta": {...}}
inline InstanceDocument parse_instance(std::string_view text)
{
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0), "malformed JSON");
    }
    if (!root.is_object())
        throw ParseError("/", "expected an object");

    const bool has_intervals = root.contains("intervals");
    const bool has_degrees = root.contains("degrees");
    if (has_intervals == has_degrees)
        throw ParseError("/", "exactly one of 'intervals' or 'degrees' is required");
    for (const auto& [key, value] : root.items())
        if (key != "intervals" && key != "degrees" && key != "meta")
            throw ParseError("/" + key, "unknown key");

    InstanceDocument doc;
    if (has_intervals) {
        const Json& body = root.at("intervals");
        if (!body.is_object())
            throw ParseError("/intervals", "expected an object");
        auto left = detail::intervals_at(body, "L1", "/intervals");
        auto right = detail::intervals_at(body, "L2", "/intervals");
        doc.body = IntervalPair{std::move(left), std::move(right)};
    } else {
        const Json& body = root.at("degrees");
        if (!body.is_object())
            throw ParseError("/degrees", "expected an object");
        auto p = detail::degrees_at(body, "P", "/degrees");
        auto q = detail::degrees_at(body, "Q", "/degrees");
        doc.body = DegreePair{std::move(p), std::move(q)};
    }

    if (root.contains("meta")) {
        const Json& meta = root.at("meta");
        if (!meta.is_object())
            throw ParseError("/meta", "expected an object of strings");
        for (const auto& [key, value] : meta.items()) {
            if (!value.is_string())
                throw ParseError("/meta/" + key, "expected a string");
            doc.meta.emplace(key, value.get<std::string>());
        }
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Emitters. Keys are written in a fixed order.

inline Json to_json(const IntervalSequence& seq)
{
    Json out = Json::array();
    for (const auto& it : seq) out.push_back({it.lo, it.hi});
    return out;
}

inline Json to_json(const IntervalPair& ip)
{
    Json out = Json::object();
    out["L1"] = to_json(ip.left);
    out["L2"] = to_json(ip.right);
    return out;
}

inline Json to_json(const DegreePair& pair)
{
    Json out = Json::object();
    out["P"] = pair.p;
    out["Q"] = pair.q;
    return out;
}

inline Json to_json(const InstanceDocument& doc)
{
    Json out = Json::object();
    if (doc.has_intervals())
        out["intervals"] = to_json(doc.intervals());
    else
        out["degrees"] = to_json(doc.degrees());
    if (!doc.meta.empty()) {
        Json meta = Json::object();
        for (const auto& [k, v] : doc.meta) meta[k] = v;
        out["meta"] = std::move(meta);
    }
    return out;
}

inline std::string_view verdict_name(Verdict v) noexcept
{
    return v == Verdict::holds ? "Holds" : "Fails";
}

inline Verdict verdict_from_name(std::string_view name)
{
    if (name == "Holds") return Verdict::holds;
    if (name == "Fails") return Verdict::fails;
    throw InputError("unknown verdict '" + std::string(name) + "'");
}

inline Json to_json(const Violation& v)
{
    Json out = Json::object();
    out["family"] = family_tag(v.family);
    out[std::string(family_index_name(v.family))] = v.index;
    out["lhs"] = v.lhs;
    out["rhs"] = v.rhs;
    return out;
}

/// Report fields, appended to `out` so callers can prefix command/status keys.
inline void append(Json& out, const CheckReport& report)
{
    out["verdict"] = verdict_name(report.verdict);
    Json violations = Json::array();
    for (const auto& v : report.violations) violations.push_back(to_json(v));
    out["violations"] = std::move(violations);
    Json perms = Json::object();
    for (const auto& sp : report.sort_permutations) perms[sp.label] = sp.perm;
    out["sort_permutations"] = std::move(perms);
    out["degenerate_forced"] = report.degenerate_forced;
}

inline Json to_json(const CheckReport& report)
{
    Json out = Json::object();
    append(out, report);
    return out;
}

inline CheckReport report_from_json(const Json& j)
{
    CheckReport report;
    report.verdict = verdict_from_name(j.at("verdict").get<std::string>());
    for (const auto& v : j.at("violations")) {
        const Family family = family_from_tag(v.at("family").get<std::string>());
        report.violations.push_back({family,
                                     v.at(std::string(family_index_name(family))).get<std::size_t>(),
                                     v.at("lhs").get<Degree>(), v.at("rhs").get<Degree>()});
    }
    for (const auto& [label, perm] : j.at("sort_permutations").items())
        report.sort_permutations.push_back({label, perm.get<std::vector<std::size_t>>()});
    report.degenerate_forced = j.value("degenerate_forced", false);
    return report;
}

inline void append(Json& out, const BipartiteRealization& g)
{
    out["m"] = g.m();
    out["n"] = g.n();
    Json rows = Json::array();
    for (std::size_t i = 0; i < g.m(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < g.n(); ++j) row.push_back(g.at(i, j) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    out["biadjacency"] = std::move(rows);
}

inline Json to_json(const BipartiteRealization& g)
{
    Json out = Json::object();
    append(out, g);
    return out;
}

inline BipartiteRealization realization_from_json(const Json& j)
{
    const auto m = j.at("m").get<std::size_t>();
    const auto n = j.at("n").get<std::size_t>();
    const Json& rows = j.at("biadjacency");
    if (rows.size() != m)
        throw InputError("biadjacency has " + std::to_string(rows.size()) + " rows, expected " +
                         std::to_string(m));
    BipartiteRealization g(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != n)
            throw InputError("biadjacency row " + std::to_string(i) + " has the wrong length");
        for (std::size_t k = 0; k < n; ++k) {
            const int cell = rows[i][k].get<int>();
            if (cell != 0 && cell != 1)
                throw InputError("biadjacency entries must be 0 or 1");
            g.set(i, k, cell == 1);
        }
    }
    return g;
}

/// One "i j" line per edge, 0-based, row-major.
inline std::string format_edges(const BipartiteRealization& g)
{
    std::string out;
    for (const auto& [i, j] : g.edges())
        out += std::to_string(i) + " " + std::to_string(j) + "\n";
    return out;
}

inline BipartiteRealization parse_edges(std::string_view text, std::size_t m, std::size_t n)
{
    BipartiteRealization g(m, n);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream fields(line);
        long long i = -1, j = -1;
        std::string rest;
        if (!(fields >> i >> j) || (fields >> rest) || i < 0 || j < 0 ||
            static_cast<std::size_t>(i) >= m || static_cast<std::size_t>(j) >= n)
            throw InputError("edge list line " + std::to_string(lineno) + ": expected 'i j' in range");
        if (g.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)))
            throw InputError("edge list line " + std::to_string(lineno) + ": repeated edge");
        g.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    return g;
}

inline Json to_json(const Witness& w)
{
    Json out = to_json(w.pair);
    out["failing_r"] = w.failing_r;
    out["construction"] = w.construction_tag;
    return out;
}

inline Witness witness_from_json(const Json& j)
{
    return {{j.at("P").get<std::vector<Degree>>(), j.at("Q").get<std::vector<Degree>>()},
            j.at("failing_r").get<std::size_t>(), j.at("construction").get<std::string>()};
}

inline std::string status_name(ForciblyKind k)
{
    switch (k) {
    case ForciblyKind::forcibly: return "forcibly";
    case ForciblyKind::vacuously_forcibly: return "vacuously_forcibly";
    case ForciblyKind::not_forcibly: return "not_forcibly";
    }
    return "?";
}

inline void append(Json& out, const ForciblyVerdict& v)
{
    out["kind"] = kind_name(v.kind);
    out["pairs_examined"] = v.pairs_examined;
    if (v.witness)
        out["witness"] = to_json(*v.witness);
}

inline Json to_json(const ValidationRecord& rec)
{
    Json out = Json::object();
    out["instance"] = to_json(rec.instance);
    out["partial"] = rec.partial;
    if (rec.partial)
        return out;

    Json pred = Json::object();
    pred["existence"] = verdict_name(rec.predictions.existence);
    pred["sufficient"] = verdict_name(rec.predictions.sufficient);
    pred["necessary"] = verdict_name(rec.predictions.necessary);
    pred["exact"] = rec.predictions.exact ? verdict_name(*rec.predictions.exact) : "NotApplicable";
    out["predictions"] = std::move(pred);

    Json truth = Json::object();
    append(truth, rec.ground_truth);
    truth["valid_pairs"] = rec.valid_pairs;
    truth["bigraphic_pair_exists"] = rec.bigraphic_pair_exists;
    out["ground_truth"] = std::move(truth);

    out["necessity_witness"] =
        rec.necessity_witness ? to_json(*rec.necessity_witness) : Json(nullptr);
    out["vacuous_necessity_failure"] = rec.vacuous_necessity_failure;
    Json findings = Json::array();
    for (const auto& f : rec.findings) findings.push_back({{"tag", f.tag}, {"detail", f.detail}});
    out["findings"] = std::move(findings);
    return out;
}

} // namespace bigraphic::io

#endif // BIGRAPHIC_IO_HPP
