#include "clusterlab/report.hpp"

#include <cmath>

#include <json.hpp>

namespace clusterlab {

namespace {

std::string num(double v) {
    if (!std::isfinite(v)) return "null";
    return format_double(v);
}

std::string str(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += "\"";
    return out;
}

std::string bol(bool b) { return b ? "true" : "false"; }

}  // namespace

bool RunReport::all_hard_predicates_pass() const {
    for (const auto& p : predicates)
        if (!p.pass) return false;
    if (has_junctions && junctions.junction_count > 0) {
        if (!junctions.all_valence_three) return false;
        if (junctions.max_dev_from_120_deg > angle_tolerance_deg) return false;
    }
    if (has_solve && trace.status == SolveStatus::TopologyFault) return false;
    return true;
}

std::string report_json(const RunReport& r) {
    std::string s = "{";
    s += "\"schema_version\":\"1\"";
    s += ",\"command\":" + str(r.command);

    s += ",\"scenario\":{\"name\":" + str(r.scenario.name);
    s += ",\"density\":" + density_spec_json(r.scenario.density);
    s += ",\"areas\":[";
    for (size_t i = 0; i < r.scenario.areas.size(); ++i) {
        if (i) s += ",";
        s += num(r.scenario.areas[i]);
    }
    s += "],\"seed\":" + std::to_string(r.scenario.seed);
    s += ",\"custom_file\":" + str(r.scenario.custom_file) + "}";

    s += ",\"config\":{";
    s += "\"max_iters\":" + std::to_string(r.config.max_iters);
    s += ",\"grad_tol_rel\":" + num(r.config.grad_tol_rel);
    s += ",\"area_tol\":" + num(r.config.area_tol);
    s += ",\"remesh_every\":" + std::to_string(r.config.remesh_every);
    s += ",\"target_spacing\":" + num(r.config.target_spacing);
    s += ",\"pop_length\":" + num(r.config.pop_length);
    s += ",\"ls_shrink\":" + num(r.config.ls_shrink);
    s += ",\"ls_armijo\":" + num(r.config.ls_armijo);
    s += ",\"ls_max_halvings\":" + std::to_string(r.config.ls_max_halvings);
    s += ",\"seed\":" + std::to_string(r.config.seed);
    s += ",\"threads\":" + std::to_string(r.threads);
    s += ",\"angle_tolerance_deg\":" + num(r.angle_tolerance_deg) + "}";

    s += ",\"functionals\":{\"areas\":[";
    for (size_t i = 0; i < r.functionals.areas.size(); ++i) {
        if (i) s += ",";
        s += num(r.functionals.areas[i]);
    }
    s += "],\"perimeter\":" + num(r.functionals.perimeter);
    s += ",\"area_path\":" + str(r.functionals.area_path);
    s += ",\"per_arc_perimeter\":[";
    bool first = true;
    for (const auto& [arc, len] : r.functionals.per_arc_perimeter) {
        if (!first) s += ",";
        first = false;
        s += "{\"arc\":" + std::to_string(arc) + ",\"length\":" + num(len) + "}";
    }
    s += "]}";

    if (r.has_solve) {
        s += ",\"solve\":{\"status\":" + str(to_string(r.trace.status));
        s += ",\"iters\":" + std::to_string(r.trace.iters);
        s += ",\"final_perimeter\":" + num(r.trace.final_perimeter);
        s += ",\"final_grad_inf\":" + num(r.trace.final_grad_inf);
        s += ",\"functional_evals\":" + std::to_string(r.trace.functional_evals);
        s += ",\"gradient_evals\":" + std::to_string(r.trace.gradient_evals);
        s += ",\"restore_iters\":" + std::to_string(r.trace.restore_iters);
        s += ",\"remeshes\":" + std::to_string(r.trace.remeshes);
        s += ",\"pops\":" + std::to_string(r.trace.pops);
        s += ",\"fault\":" + str(r.trace.fault) + "}";
    } else {
        s += ",\"solve\":null";
    }

    if (r.has_junctions) {
        s += ",\"junctions\":{\"count\":" + std::to_string(r.junctions.junction_count);
        s += ",\"min_separation\":" + num(r.junctions.min_separation);
        s += ",\"max_dev_from_120_deg\":" + num(r.junctions.max_dev_from_120_deg);
        s += ",\"max_angle_sum_error_deg\":" + num(r.junctions.max_angle_sum_error_deg);
        s += ",\"all_valence_three\":" + bol(r.junctions.all_valence_three);
        s += ",\"items\":[";
        for (size_t i = 0; i < r.junctions.junctions.size(); ++i) {
            const auto& j = r.junctions.junctions[i];
            if (i) s += ",";
            s += "{\"node\":" + std::to_string(j.node_id);
            s += ",\"valence\":" + std::to_string(j.valence);
            s += ",\"max_dev_deg\":" + num(j.max_dev_from_120_deg);
            s += ",\"gaps_deg\":[";
            for (size_t k = 0; k < j.gap_angles_deg.size(); ++k) {
                if (k) s += ",";
                s += num(j.gap_angles_deg[k]);
            }
            s += "]}";
        }
        s += "]}";
    } else {
        s += ",\"junctions\":null";
    }

    if (r.has_regularity) {
        s += ",\"regularity\":{\"gamma_theory\":" + num(r.regularity.gamma_theory);
        s += ",\"eta\":" + num(r.regularity.eta);
        s += ",\"beta\":" + num(r.regularity.beta);
        s += ",\"alpha_h\":" + num(r.regularity.alpha_h);
        s += ",\"k_gamma_max\":" + num(r.regularity.k_gamma_max);
        s += ",\"ceiling\":" + num(r.regularity.ceiling);
        s += ",\"arcs\":[";
        for (size_t i = 0; i < r.regularity.arcs.size(); ++i) {
            const auto& a = r.regularity.arcs[i];
            if (i) s += ",";
            s += "{\"arc\":" + std::to_string(a.arc_id);
            s += ",\"k_gamma\":" + num(a.k_gamma);
            s += ",\"max_turn_rate\":" + num(a.max_turn_rate);
            s += ",\"flagged\":" + bol(a.flagged) + "}";
        }
        s += "]}";
    } else {
        s += ",\"regularity\":null";
    }

    s += ",\"predicates\":[";
    for (size_t i = 0; i < r.predicates.size(); ++i) {
        const auto& p = r.predicates[i];
        if (i) s += ",";
        s += "{\"predicate\":" + str(p.predicate);
        s += ",\"pass\":" + bol(p.pass);
        s += ",\"seed\":" + std::to_string(p.seed);
        s += ",\"note\":" + str(p.note);
        s += ",\"entries\":[";
        for (size_t k = 0; k < p.entries.size(); ++k) {
            const auto& e = p.entries[k];
            if (k) s += ",";
            s += "{\"sample\":" + str(e.sample);
            s += ",\"measured\":" + num(e.measured);
            s += ",\"bound\":" + num(e.bound);
            s += ",\"pass\":" + bol(e.pass) + "}";
        }
        s += "]}";
    }
    s += "]";

    s += ",\"certificates\":{";
    if (r.has_growth) {
        s += "\"growth\":{\"eta\":" + num(r.growth.eta);
        s += ",\"c_vol\":" + num(r.growth.c_vol);
        s += ",\"r_eta\":" + num(r.growth.r_eta);
        s += ",\"fit_residual\":" + num(r.growth.fit_residual);
        s += ",\"n_centers\":" + std::to_string(r.growth.n_centers);
        s += ",\"seed\":" + std::to_string(r.growth.seed) + "}";
    } else {
        s += "\"growth\":null";
    }
    if (r.has_epsbeta) {
        s += ",\"epsbeta\":{\"beta\":" + num(r.epsbeta.beta);
        s += ",\"beta_fitted\":" + num(r.epsbeta.beta_fitted);
        s += ",\"c_per\":" + num(r.epsbeta.c_per);
        s += ",\"eps_bar\":" + num(r.epsbeta.eps_bar);
        s += ",\"r_beta\":" + num(r.epsbeta.r_beta);
        s += ",\"fit_residual\":" + num(r.epsbeta.fit_residual);
        s += ",\"label\":" + str(r.epsbeta.label);
        s += ",\"caveat\":\"upper-bound witness from one competitor family; the "
             "infimal constant can be smaller\"";
        s += ",\"cper_curve\":[";
        for (size_t k = 0; k < r.epsbeta.cper_curve.size(); ++k) {
            if (k) s += ",";
            s += "[" + num(r.epsbeta.cper_curve[k].first) + "," +
                 num(r.epsbeta.cper_curve[k].second) + "]";
        }
        s += "]}";
    } else {
        s += ",\"epsbeta\":null";
    }
    s += "}";

    s += ",\"hard_pass\":" + bol(r.all_hard_predicates_pass());
    s += "}";
    return s;
}

// ---------------------------------------------------------------------------
// Schema

std::string report_schema_json() {
    return R"({
  "type": "object",
  "required": ["schema_version", "command", "scenario", "config", "functionals",
               "solve", "junctions", "regularity", "predicates", "certificates",
               "hard_pass"],
  "properties": {
    "schema_version": {"type": "string", "enum": ["1"]},
    "command": {"type": "string"},
    "scenario": {
      "type": "object",
      "required": ["name", "density", "areas", "seed"],
      "properties": {
        "name": {"type": "string"},
        "density": {"type": "object", "required": ["kind"],
                    "properties": {"kind": {"type": "string"}}},
        "areas": {"type": "array", "items": {"type": "number"}},
        "seed": {"type": "integer"}
      }
    },
    "config": {
      "type": "object",
      "required": ["max_iters", "grad_tol_rel", "area_tol", "remesh_every", "seed"]
    },
    "functionals": {
      "type": "object",
      "required": ["areas", "perimeter", "area_path", "per_arc_perimeter"],
      "properties": {
        "areas": {"type": "array", "items": {"type": "number"}},
        "perimeter": {"type": "number"},
        "area_path": {"type": "string", "enum": ["flux", "triangulation"]},
        "per_arc_perimeter": {"type": "array", "items": {
          "type": "object", "required": ["arc", "length"]}}
      }
    },
    "solve": {"type": ["object", "null"],
              "required": ["status", "iters", "final_perimeter", "fault"]},
    "junctions": {"type": ["object", "null"],
                  "required": ["count", "min_separation", "max_dev_from_120_deg",
                               "all_valence_three", "items"]},
    "regularity": {"type": ["object", "null"],
                   "required": ["gamma_theory", "eta", "beta", "alpha_h",
                                "k_gamma_max", "arcs"]},
    "predicates": {"type": "array", "items": {
      "type": "object",
      "required": ["predicate", "pass", "entries"],
      "properties": {
        "predicate": {"type": "string"},
        "pass": {"type": "boolean"},
        "entries": {"type": "array", "items": {
          "type": "object", "required": ["sample", "measured", "bound", "pass"]}}
      }
    }},
    "certificates": {
      "type": "object",
      "required": ["growth", "epsbeta"],
      "properties": {
        "growth": {"type": ["object", "null"],
                   "required": ["eta", "c_vol", "r_eta"]},
        "epsbeta": {"type": ["object", "null"],
                    "required": ["beta", "c_per", "eps_bar", "label", "cper_curve"]}
      }
    },
    "hard_pass": {"type": "boolean"}
  }
})";
}

namespace {

using nlohmann::json;

bool type_matches(const json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "number") return value.is_number() || value.is_null();
    if (type == "integer") return value.is_number_integer();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

bool check_schema(const json& value, const json& schema, const std::string& path,
                  std::string* error) {
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else if (t.is_array()) {
            for (const auto& alt : t)
                if (type_matches(value, alt.get<std::string>())) { ok = true; break; }
        }
        if (!ok) {
            if (error) *error = path + ": type mismatch";
            return false;
        }
    }
    if (value.is_null()) return true;  // nullable fields stop here
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema["enum"])
            if (alt == value) { ok = true; break; }
        if (!ok) {
            if (error) *error = path + ": not in enum";
            return false;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& req : schema["required"]) {
                if (!value.contains(req.get<std::string>())) {
                    if (error) *error = path + ": missing " + req.get<std::string>();
                    return false;
                }
            }
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin(); it != schema["properties"].end();
                 ++it) {
                if (!value.contains(it.key())) continue;
                if (!check_schema(value[it.key()], it.value(), path + "." + it.key(),
                                  error))
                    return false;
            }
    }
    if (value.is_array() && schema.contains("items")) {
        for (size_t i = 0; i < value.size(); ++i)
            if (!check_schema(value[i], schema["items"], path + "[" + std::to_string(i) + "]",
                              error))
                return false;
    }
    return true;
}

}  // namespace

bool validate_report_schema(const std::string& report_text,
                            const std::string& schema_text, std::string* error) {
    json report, schema;
    try {
        report = json::parse(report_text);
        schema = json::parse(schema_text);
    } catch (const json::parse_error& e) {
        if (error) *error = e.what();
        return false;
    }
    return check_schema(report, schema, "$", error);
}

}  // namespace clusterlab
