#include "cac/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cac {

namespace {

using nlohmann::json;

struct Diagnostics {
    std::vector<std::string> errors;
    void add(const std::string& where, const std::string& what) {
        errors.push_back(where + ": " + what);
    }
    void raise_if_any() const {
        if (errors.empty()) return;
        std::ostringstream os;
        os << "invalid configuration (" << errors.size() << " problem"
           << (errors.size() == 1 ? "" : "s") << "):";
        for (const auto& e : errors) os << "\n  - " << e;
        throw ValidationError(os.str());
    }
};

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed, Diagnostics& diag) {
    for (const auto& [key, value] : obj.items())
        if (allowed.find(key) == allowed.end()) diag.add(where, "unknown key '" + key + "'");
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  Diagnostics& diag, double fallback = 0.0) {
    if (!obj.contains(key)) {
        diag.add(where, "missing key '" + key + "'");
        return fallback;
    }
    if (!obj[key].is_number()) {
        diag.add(where + "." + key, "expected a number");
        return fallback;
    }
    return obj[key].get<double>();
}

}  // namespace

std::string scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::Proposed: return "proposed";
        case SchemeKind::NonPrioritizedAdaptive: return "non-prioritized";
        case SchemeKind::AQoSHandoverPriority: return "aqos-handover-priority";
        case SchemeKind::HardQoS: return "hard-qos";
        case SchemeKind::HardQoSGuard: return "hard-qos-guard";
    }
    return "?";
}

std::optional<SchemeKind> scheme_from_name(const std::string& name) {
    for (SchemeKind k : {SchemeKind::Proposed, SchemeKind::NonPrioritizedAdaptive,
                         SchemeKind::AQoSHandoverPriority, SchemeKind::HardQoS,
                         SchemeKind::HardQoSGuard})
        if (scheme_name(k) == name) return k;
    return std::nullopt;
}

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ValidationError(std::string("configuration is not valid JSON: ") + err.what());
    }
    Diagnostics diag;
    ExperimentConfig cfg;
    if (!root.is_object()) {
        diag.add("top level", "expected an object");
        diag.raise_if_any();
    }
    check_keys(root, "top level", {"system", "sweep", "schemes", "sim", "output", "options"}, diag);

    // system
    if (!root.contains("system") || !root["system"].is_object()) {
        diag.add("system", "missing or not an object");
    } else {
        const json& sys = root["system"];
        check_keys(sys, "system", {"capacity", "dwell_mean", "duration_mean", "classes"}, diag);
        cfg.system.capacity = get_number(sys, "system", "capacity", diag);
        cfg.system.dwell_mean = get_number(sys, "system", "dwell_mean", diag);
        double default_duration = 0.0;
        if (sys.contains("duration_mean"))
            default_duration = get_number(sys, "system", "duration_mean", diag);
        if (!sys.contains("classes") || !sys["classes"].is_array() || sys["classes"].empty()) {
            diag.add("system.classes", "expected a non-empty array");
        } else {
            for (std::size_t i = 0; i < sys["classes"].size(); ++i) {
                const json& jc = sys["classes"][i];
                std::ostringstream where;
                where << "system.classes[" << i << "]";
                TrafficClass cls;
                if (!jc.is_object()) {
                    diag.add(where.str(), "expected an object");
                    continue;
                }
                check_keys(jc, where.str(),
                           {"name", "realtime", "bandwidth", "gamma_new", "gamma_handover", "mix",
                            "duration_mean"},
                           diag);
                cls.name = jc.value("name", "class-" + std::to_string(i));
                if (jc.contains("realtime") && jc["realtime"].is_boolean())
                    cls.realtime = jc["realtime"].get<bool>();
                else
                    diag.add(where.str(), "missing boolean 'realtime'");
                cls.beta_r = get_number(jc, where.str(), "bandwidth", diag);
                cls.mix = get_number(jc, where.str(), "mix", diag);
                if (jc.contains("gamma_new"))
                    cls.gamma_n = get_number(jc, where.str(), "gamma_new", diag);
                if (jc.contains("gamma_handover"))
                    cls.gamma_h = get_number(jc, where.str(), "gamma_handover", diag);
                if (jc.contains("duration_mean"))
                    cls.duration_mean = get_number(jc, where.str(), "duration_mean", diag);
                else if (default_duration > 0.0)
                    cls.duration_mean = default_duration;
                else
                    diag.add(where.str(),
                             "no duration_mean and no system-level duration_mean default");
                cfg.system.classes.push_back(cls);
            }
        }
        for (const auto& msg : validation_errors(cfg.system)) diag.add("system", msg);
    }

    // sweep: {"values": [...]} or {"from":, "to":, "steps":}
    if (!root.contains("sweep") || !root["sweep"].is_object()) {
        diag.add("sweep", "missing or not an object");
    } else {
        const json& sw = root["sweep"];
        check_keys(sw, "sweep", {"values", "from", "to", "steps"}, diag);
        if (sw.contains("values")) {
            if (!sw["values"].is_array() || sw["values"].empty())
                diag.add("sweep.values", "expected a non-empty array of rates");
            else
                for (const auto& v : sw["values"]) {
                    if (!v.is_number()) {
                        diag.add("sweep.values", "expected numbers");
                        break;
                    }
                    cfg.sweep.push_back(v.get<double>());
                }
        } else {
            const double from = get_number(sw, "sweep", "from", diag);
            const double to = get_number(sw, "sweep", "to", diag);
            const int steps = static_cast<int>(get_number(sw, "sweep", "steps", diag, 1));
            if (steps < 1) {
                diag.add("sweep.steps", "must be >= 1");
            } else if (steps == 1) {
                cfg.sweep.push_back(from);
            } else {
                for (int i = 0; i < steps; ++i)
                    cfg.sweep.push_back(from + i * (to - from) / (steps - 1));
            }
        }
        for (double v : cfg.sweep)
            if (!(v > 0.0)) {
                diag.add("sweep", "arrival rates must be > 0");
                break;
            }
        for (std::size_t i = 1; i < cfg.sweep.size(); ++i)
            if (!(cfg.sweep[i] > cfg.sweep[i - 1])) {
                diag.add("sweep", "arrival rates must be strictly increasing");
                break;
            }
    }

    // schemes: strings or {"kind":, "guard_fraction":}
    if (!root.contains("schemes") || !root["schemes"].is_array() || root["schemes"].empty()) {
        diag.add("schemes", "expected a non-empty array");
    } else {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < root["schemes"].size(); ++i) {
            const json& js = root["schemes"][i];
            std::ostringstream where;
            where << "schemes[" << i << "]";
            SchemeSpec spec;
            std::string name;
            if (js.is_string()) {
                name = js.get<std::string>();
            } else if (js.is_object()) {
                check_keys(js, where.str(), {"kind", "guard_fraction"}, diag);
                name = js.value("kind", "");
                if (js.contains("guard_fraction")) {
                    spec.guard_fraction = get_number(js, where.str(), "guard_fraction", diag);
                    if (name != scheme_name(SchemeKind::HardQoSGuard))
                        diag.add(where.str(), "guard_fraction is only valid for hard-qos-guard");
                }
            } else {
                diag.add(where.str(), "expected a scheme name or object");
                continue;
            }
            const auto kind = scheme_from_name(name);
            if (!kind) {
                diag.add(where.str(), "unknown scheme '" + name + "'");
                continue;
            }
            spec.kind = *kind;
            if (spec.guard_fraction < 0.0 || spec.guard_fraction > 1.0)
                diag.add(where.str(), "guard_fraction must lie in [0,1]");
            if (!seen.insert(name).second) diag.add(where.str(), "duplicate scheme '" + name + "'");
            cfg.schemes.push_back(spec);
        }
    }

    // sim (optional)
    if (root.contains("sim")) {
        if (!root["sim"].is_object()) {
            diag.add("sim", "expected an object");
        } else {
            const json& js = root["sim"];
            check_keys(js, "sim", {"horizon", "warmup", "replications", "seed"}, diag);
            SimBlock block;
            block.horizon = get_number(js, "sim", "horizon", diag);
            if (js.contains("warmup")) block.warmup = get_number(js, "sim", "warmup", diag);
            if (js.contains("replications"))
                block.replications = static_cast<int>(get_number(js, "sim", "replications", diag, 1));
            if (js.contains("seed"))
                block.seed = static_cast<std::uint64_t>(get_number(js, "sim", "seed", diag, 1));
            if (block.warmup < 0.0) block.warmup = 0.1 * block.horizon;
            if (!(block.horizon > block.warmup))
                diag.add("sim", "horizon must exceed warmup");
            if (block.replications < 1) diag.add("sim.replications", "must be >= 1");
            cfg.sim = block;
        }
    }

    // output (optional)
    if (root.contains("output")) {
        if (!root["output"].is_object()) {
            diag.add("output", "expected an object");
        } else {
            const json& jo = root["output"];
            check_keys(jo, "output", {"csv", "trace"}, diag);
            cfg.csv_path = jo.value("csv", "");
            cfg.trace_path = jo.value("trace", "");
        }
    }

    // options (optional)
    if (root.contains("options")) {
        if (!root["options"].is_object()) {
            diag.add("options", "expected an object");
        } else {
            const json& jo = root["options"];
            check_keys(jo, "options",
                       {"newcall_floor_rule", "forced_termination_includes_blocking"}, diag);
            const std::string rule = jo.value("newcall_floor_rule", "any-class");
            if (rule == "any-class")
                cfg.options.newcall_floor_rule = NewCallFloorRule::AnyClass;
            else if (rule == "arriving-class")
                cfg.options.newcall_floor_rule = NewCallFloorRule::ArrivingClass;
            else
                diag.add("options.newcall_floor_rule",
                         "expected 'any-class' or 'arriving-class'");
            if (jo.contains("forced_termination_includes_blocking")) {
                if (jo["forced_termination_includes_blocking"].is_boolean())
                    cfg.options.forced_termination_includes_blocking =
                        jo["forced_termination_includes_blocking"].get<bool>();
                else
                    diag.add("options.forced_termination_includes_blocking", "expected a boolean");
            }
        }
    }

    diag.raise_if_any();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open configuration file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace cac
