#include "infoflow/io.hpp"

#include <charconv>
#include <cstdio>

#include <json.hpp>

#include "infoflow/errors.hpp"

namespace infoflow::io {

namespace {

using Json = nlohmann::ordered_json;

void require_keys(const Json& obj, std::string_view what, std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional = {}) {
    if (!obj.is_object()) throw SchemaError(std::string(what) + " must be a JSON object");
    for (auto key : required)
        if (!obj.contains(std::string(key)))
            throw SchemaError(std::string(what) + " is missing field \"" + std::string(key) + "\"");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto k : required) known = known || key == k;
        for (auto k : optional) known = known || key == k;
        if (!known) throw SchemaError(std::string(what) + " has unexpected field \"" + key + "\"");
    }
}

std::string string_field(const Json& obj, const char* key, std::string_view what) {
    const Json& v = obj.at(key);
    if (!v.is_string()) throw SchemaError(std::string(what) + " field \"" + key + "\" must be a string");
    return v.get<std::string>();
}

Json header_json(const ReportHeader& h) {
    Json j;
    j["command"] = h.command;
    j["input_digest"] = h.input_digest;
    j["seed"] = h.seed ? Json(*h.seed) : Json(nullptr);
    j["iterations"] = h.iterations ? Json(*h.iterations) : Json(nullptr);
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Minimal CSV cell quoting for free-text columns.
std::string csv_text(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

Json points_json(const SweepResult& sweep) {
    Json points = Json::array();
    for (const auto& p : sweep.points)
        points.push_back({{"n_di", p.n_di}, {"mean_p_di", p.mean_p_di}, {"mean_p_s", p.mean_p_s},
                          {"mean_p_us", p.mean_p_us}});
    return points;
}

}  // namespace

NetworkSpec parse_network_document(std::string_view bytes) {
    Json doc;
    try {
        doc = Json::parse(bytes.begin(), bytes.end());
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed network document: ") + e.what());
    }
    require_keys(doc, "network document", {"stakeholders", "start", "flows"}, {"comment"});

    NetworkSpec spec;
    if (doc.contains("comment")) spec.comment = string_field(doc, "comment", "network document");
    spec.start = string_field(doc, "start", "network document");

    const Json& stakeholders = doc.at("stakeholders");
    if (!stakeholders.is_array()) throw SchemaError("\"stakeholders\" must be an array");
    for (const Json& s : stakeholders) {
        require_keys(s, "stakeholder", {"id", "level"});
        Stakeholder st;
        st.id = string_field(s, "id", "stakeholder");
        if (parse_absorbing(st.id)) throw SchemaError("stakeholder id \"" + st.id + "\" is reserved for an absorbing state");
        const std::string level = string_field(s, "level", "stakeholder");
        const auto parsed = parse_level(level);
        if (!parsed) throw SchemaError("stakeholder \"" + st.id + "\" has unknown level \"" + level + "\"");
        st.level = *parsed;
        spec.stakeholders.push_back(std::move(st));
    }
    if (!spec.index_of(spec.start)) throw SchemaError("start \"" + spec.start + "\" is not a declared stakeholder");

    const Json& flows = doc.at("flows");
    if (!flows.is_array()) throw SchemaError("\"flows\" must be an array");
    for (const Json& f : flows) {
        require_keys(f, "flow", {"from", "to", "frequency"});
        FlowRecord rec;
        rec.from = string_field(f, "from", "flow");
        if (!spec.index_of(rec.from)) throw SchemaError("flow source \"" + rec.from + "\" is not a declared stakeholder");
        const std::string to = string_field(f, "to", "flow");
        if (const auto kind = parse_absorbing(to)) {
            rec.to = *kind;
        } else {
            if (!spec.index_of(to)) throw SchemaError("flow target \"" + to + "\" is not a declared stakeholder");
            rec.to = to;
        }
        if (!f.at("frequency").is_number()) throw SchemaError("flow field \"frequency\" must be a number");
        rec.frequency = f.at("frequency").get<double>();
        spec.flows.push_back(std::move(rec));
    }
    return spec;
}

NetworkSpec parse_network(std::string_view bytes) {
    NetworkSpec spec = parse_network_document(bytes);
    require_valid(spec);
    return spec;
}

std::string emit_network(const NetworkSpec& spec) {
    Json doc;
    if (!spec.comment.empty()) doc["comment"] = spec.comment;
    doc["stakeholders"] = Json::array();
    for (const auto& s : spec.stakeholders)
        doc["stakeholders"].push_back({{"id", s.id}, {"level", std::string(to_string(s.level))}});
    doc["start"] = spec.start;
    doc["flows"] = Json::array();
    for (const auto& f : spec.flows)
        doc["flows"].push_back({{"from", f.from}, {"to", target_label(f.to)}, {"frequency", f.frequency}});
    return dump(doc);
}

std::string input_digest(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string_view to_string(PlugInMode mode) noexcept {
    return mode == PlugInMode::RawFrequency ? "raw" : "posterior-mean";
}

std::string_view to_string(SweepMode mode) noexcept { return mode == SweepMode::MonteCarlo ? "mc" : "plugin"; }

std::string validation_report(const ReportHeader& h, const ValidationReport& report, Format format) {
    if (format == Format::Csv) {
        std::string out = "code,message\n";
        for (const auto& v : report.violations) out += csv_text(v.code) + "," + csv_text(v.message) + "\n";
        return out;
    }
    Json j = header_json(h);
    Json violations = Json::array();
    for (const auto& v : report.violations) violations.push_back({{"code", v.code}, {"message", v.message}});
    j["result"] = {{"valid", report.ok()}, {"violations", violations}};
    return dump(j);
}

std::string evaluation_report(const ReportHeader& h, const NetworkSpec& spec, PlugInMode mode,
                              const AbsorptionResult& result, Format format) {
    const std::size_t n = result.b.rows();
    if (format == Format::Csv) {
        std::string out = "state,p_di,p_s,p_us\n";
        for (std::size_t i = 0; i < n; ++i) {
            out += csv_text(result.state_order[i]);
            for (double v : result.b.row(i)) out += "," + format_double(v);
            out += "\n";
        }
        return out;
    }
    Json j = header_json(h);
    const std::size_t s = *spec.index_of(spec.start);
    Json rows = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        Json row = {{"state", result.state_order[i]}};
        for (AbsorbingKind k : kAbsorbingOrder) row[std::string(to_string(k))] = result.b(i, absorbing_index(k));
        rows.push_back(row);
    }
    j["result"] = {{"mode", std::string(to_string(mode))},
                   {"start", spec.start},
                   {"p_di", result.b(s, absorbing_index(AbsorbingKind::DI))},
                   {"p_s", result.b(s, absorbing_index(AbsorbingKind::S))},
                   {"p_us", result.b(s, absorbing_index(AbsorbingKind::US))},
                   {"state_order", result.state_order},
                   {"absorption", rows}};
    return dump(j);
}

std::string simulation_report(const ReportHeader& h, const NetworkSpec& spec, const SimulationSummary& summary,
                              Format format) {
    if (format == Format::Csv) {
        std::string out = "iteration,p_di,p_s,p_us\n";
        for (std::size_t t = 0; t < summary.samples.size(); ++t) {
            const auto& s = summary.samples[t];
            out += std::to_string(t) + "," + format_double(s.p_di) + "," + format_double(s.p_s) + "," +
                   format_double(s.p_us) + "\n";
        }
        return out;
    }
    Json j = header_json(h);
    Json samples = Json::array();
    for (const auto& s : summary.samples) samples.push_back(Json::array({s.p_di, s.p_s, s.p_us}));
    j["result"] = {{"start", spec.start},
                   {"mean_di", summary.mean_di},
                   {"mean_s", summary.mean_s},
                   {"mean_us", summary.mean_us},
                   {"std_s", summary.std_s},
                   {"histogram", {{"edges", summary.histogram.edges}, {"counts", summary.histogram.counts}}},
                   {"samples", samples}};
    return dump(j);
}

std::string sweep_report(const ReportHeader& h, const SweepResult& sweep, SweepMode mode, Format format) {
    if (format == Format::Csv) {
        std::string out = "n_di,mean_p_di,mean_p_s,mean_p_us\n";
        for (const auto& p : sweep.points)
            out += format_double(p.n_di) + "," + format_double(p.mean_p_di) + "," + format_double(p.mean_p_s) + "," +
                   format_double(p.mean_p_us) + "\n";
        return out;
    }
    Json j = header_json(h);
    j["result"] = {{"stakeholder", sweep.stakeholder},
                   {"mode", std::string(to_string(mode))},
                   {"n_min", sweep.n_min},
                   {"n_max", sweep.n_max},
                   {"p_s_at_min_di", sweep.p_s_at_min_di},
                   {"p_s_at_max_di", sweep.p_s_at_max_di},
                   {"impact_ratio", sweep.impact_ratio},
                   {"points", points_json(sweep)}};
    return dump(j);
}

std::string ranking_report(const ReportHeader& h, const std::vector<RankEntry>& ranking, SweepMode mode,
                           Format format) {
    if (format == Format::Csv) {
        std::string out = "rank,stakeholder,n_di_min,n_di_max,p_s_at_min_di,p_s_at_max_di,impact_ratio\n";
        for (std::size_t k = 0; k < ranking.size(); ++k) {
            const auto& e = ranking[k];
            out += std::to_string(k + 1) + "," + csv_text(e.stakeholder) + "," + format_double(e.sweep.n_min) + "," +
                   format_double(e.sweep.n_max) + "," + format_double(e.sweep.p_s_at_min_di) + "," +
                   format_double(e.sweep.p_s_at_max_di) + "," + format_double(e.impact_ratio) + "\n";
        }
        return out;
    }
    Json j = header_json(h);
    Json rows = Json::array();
    for (std::size_t k = 0; k < ranking.size(); ++k) {
        const auto& e = ranking[k];
        rows.push_back({{"rank", k + 1},
                        {"stakeholder", e.stakeholder},
                        {"n_di_min", e.sweep.n_min},
                        {"n_di_max", e.sweep.n_max},
                        {"p_s_at_min_di", e.sweep.p_s_at_min_di},
                        {"p_s_at_max_di", e.sweep.p_s_at_max_di},
                        {"impact_ratio", e.impact_ratio},
                        {"points", points_json(e.sweep)}});
    }
    j["result"] = {{"mode", std::string(to_string(mode))}, {"ranking", rows}};
    return dump(j);
}

}  // namespace infoflow::io
