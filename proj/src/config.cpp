#include "predprey/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace predprey {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw UsageError("SchemaError", "unknown key '" + item.key() + "' in " + where);
        }
    }
}

const json& require_key(const json& obj, const std::string& where, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw UsageError("SchemaError", "missing key '" + key + "' in " + where);
    }
    return *it;
}

double as_number(const json& v, const std::string& name) {
    if (!v.is_number()) {
        throw UsageError("SchemaError", "key '" + name + "' must be a number");
    }
    return v.get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback) {
    const auto it = obj.find(key);
    return it == obj.end() ? fallback : as_number(*it, key);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        for (char& ch : msg) {
            if (ch == '\n') ch = ' ';
        }
        throw UsageError("SyntaxError", msg);
    }
    if (!doc.is_object()) throw UsageError("SchemaError", "top-level document must be an object");
    reject_unknown_keys(doc, "the top level", {"params", "tau", "sim", "hopf", "output"});

    RunConfig cfg;

    const json& jp = require_key(doc, "the top level", "params");
    if (!jp.is_object()) throw UsageError("SchemaError", "'params' must be an object");
    reject_unknown_keys(jp, "'params'", {"lambda", "mu", "r", "K", "alpha", "m", "sigma", "eta"});
    RawParams raw;
    raw.lambda_birth = as_number(require_key(jp, "'params'", "lambda"), "lambda");
    raw.mu = as_number(require_key(jp, "'params'", "mu"), "mu");
    raw.K = as_number(require_key(jp, "'params'", "K"), "K");
    raw.alpha = as_number(require_key(jp, "'params'", "alpha"), "alpha");
    raw.m = as_number(require_key(jp, "'params'", "m"), "m");
    raw.sigma = as_number(require_key(jp, "'params'", "sigma"), "sigma");
    raw.eta = as_number(require_key(jp, "'params'", "eta"), "eta");
    if (jp.contains("r")) raw.r = as_number(jp["r"], "r");
    cfg.params = validate(raw);

    cfg.tau = as_number(require_key(doc, "the top level", "tau"), "tau");
    if (!(cfg.tau > 0.0)) throw UsageError("SchemaError", "key 'tau' must be positive");

    if (doc.contains("sim")) {
        const json& js = doc["sim"];
        if (!js.is_object()) throw UsageError("SchemaError", "'sim' must be an object");
        reject_unknown_keys(js, "'sim'",
                            {"form", "da", "dt_divisor", "t_end", "sample_every", "t_transient",
                             "initial", "snapshot_every"});
        if (js.contains("form")) {
            const json& jf = js["form"];
            if (!jf.is_string() || (jf != "original" && jf != "rescaled")) {
                throw UsageError("SchemaError",
                                 "key 'form' must be \"original\" or \"rescaled\"");
            }
            cfg.sim.form = jf == "original" ? Form::original : Form::rescaled;
        }
        cfg.sim.da = number_or(js, "da", cfg.sim.da);
        if (js.contains("dt_divisor")) {
            cfg.sim.dt_divisor =
                static_cast<int>(as_number(js["dt_divisor"], "dt_divisor"));
        }
        cfg.sim.t_end = number_or(js, "t_end", cfg.sim.t_end);
        cfg.sim.sample_every = number_or(js, "sample_every", cfg.sim.sample_every);
        cfg.sim.t_transient = number_or(js, "t_transient", cfg.sim.t_transient);
        cfg.sim.snapshot_every = number_or(js, "snapshot_every", cfg.sim.snapshot_every);
        if (js.contains("initial")) {
            const json& ji = js["initial"];
            if (!ji.is_object()) throw UsageError("SchemaError", "'initial' must be an object");
            reject_unknown_keys(ji, "'initial'", {"u0_coef", "u0_rate", "V0"});
            InitialData init;
            init.u0_coef = as_number(require_key(ji, "'initial'", "u0_coef"), "u0_coef");
            init.u0_rate = as_number(require_key(ji, "'initial'", "u0_rate"), "u0_rate");
            init.V0 = as_number(require_key(ji, "'initial'", "V0"), "V0");
            cfg.sim.initial = init;
        }
    }

    if (doc.contains("hopf")) {
        const json& jh = doc["hopf"];
        if (!jh.is_object()) throw UsageError("SchemaError", "'hopf' must be an object");
        reject_unknown_keys(jh, "'hopf'", {"k_max"});
        if (jh.contains("k_max")) {
            cfg.hopf.k_max = static_cast<int>(as_number(jh["k_max"], "k_max"));
            if (cfg.hopf.k_max < 0) throw UsageError("SchemaError", "key 'k_max' must be >= 0");
        }
    }

    if (doc.contains("output")) {
        const json& jo = doc["output"];
        if (!jo.is_object()) throw UsageError("SchemaError", "'output' must be an object");
        reject_unknown_keys(jo, "'output'",
                            {"trajectory", "snapshots", "sweep", "snapshot_toggle"});
        for (const char* key : {"trajectory", "snapshots", "sweep"}) {
            if (jo.contains(key)) {
                if (!jo[key].is_string()) {
                    throw UsageError("SchemaError",
                                     "key '" + std::string(key) + "' must be a string path");
                }
                const std::string path = jo[key].get<std::string>();
                if (std::string(key) == "trajectory") cfg.output.trajectory = path;
                if (std::string(key) == "snapshots") cfg.output.snapshots = path;
                if (std::string(key) == "sweep") cfg.output.sweep = path;
            }
        }
        if (jo.contains("snapshot_toggle")) {
            if (!jo["snapshot_toggle"].is_boolean()) {
                throw UsageError("SchemaError", "key 'snapshot_toggle' must be a boolean");
            }
            cfg.output.snapshot_toggle = jo["snapshot_toggle"].get<bool>();
        }
    }

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("SyntaxError", "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace predprey
