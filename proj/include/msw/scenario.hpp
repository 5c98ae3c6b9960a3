#pragma once

// Batch front end: scenario files name a field, a genus, a dictionary of
// objects, and a list of tasks; reports are deterministic JSON for a given
// (scenario, seed) pair.

#include "msw/props_families.hpp"

namespace msw {

struct Scenario {
    FieldDescriptor field;
    int g = 1;
    Json objects;  // validated object table
    Json tasks;    // validated task list
};

namespace detail {

inline const std::set<std::string>& known_commands() {
    static const std::set<std::string> cmds{"witt", "sylvester", "maslov",
                                            "cocycle", "phi", "decompose", "props"};
    return cmds;
}

template <class F>
void validate_objects(const SymplecticSpace<F>& sp, const Json& objects) {
    for (auto& [name, obj] : objects.items()) {
        const std::string where = "objects." + name;
        if (!obj.is_object() || !obj.contains("type") || !obj["type"].is_string())
            throw InputError(where + ": expected object with string 'type'");
        std::string type = obj["type"];
        if (type == "lagrangian") {
            if (!obj.contains("basis")) throw InputError(where + ": lagrangian needs 'basis'");
            auto b = matrix_from_json(sp.field, obj["basis"], 2 * sp.g, sp.g, where + ".basis");
            try {
                Lagrangian<F> l(sp, b);
            } catch (const std::domain_error& e) {
                throw InputError(where + ": " + e.what());
            }
        } else if (type == "symplectic") {
            if (!obj.contains("matrix")) throw InputError(where + ": symplectic needs 'matrix'");
            auto m = matrix_from_json(sp.field, obj["matrix"], 2 * sp.g, 2 * sp.g, where + ".matrix");
            if (!is_symplectic(sp, m)) throw InputError(where + ": matrix is not symplectic");
        } else if (type == "form") {
            if (!obj.contains("gram")) throw InputError(where + ": form needs 'gram'");
            if (!obj["gram"].is_array()) throw InputError(where + ".gram: expected array");
            int n = static_cast<int>(obj["gram"].size());
            auto m = matrix_from_json(sp.field, obj["gram"], n, n, where + ".gram");
            if (!m.is_symmetric()) throw InputError(where + ".gram: not symmetric");
        } else if (type == "sturm") {
            sturm_from_json(sp, obj, where);
        } else {
            throw InputError(where + ": unknown object type '" + type + "'");
        }
    }
}

inline std::string object_type(const Json& objects, const std::string& name) {
    return objects[name]["type"].get<std::string>();
}

inline void expect_args(const Json& task, const Json& objects, const std::string& where,
                        size_t min_args, size_t max_args) {
    if (!task.contains("args") || !task["args"].is_array())
        throw InputError(where + ": expected 'args' array");
    size_t n = task["args"].size();
    if (n < min_args || n > max_args)
        throw InputError(where + ": expected between " + std::to_string(min_args) + " and " +
                         std::to_string(max_args) + " arguments");
    for (auto& a : task["args"]) {
        if (!a.is_string()) throw InputError(where + ": arguments must be object names");
        if (!objects.contains(a.get<std::string>()))
            throw InputError(where + ": unknown object '" + a.get<std::string>() + "'");
    }
}

inline void expect_types(const Json& task, const Json& objects, const std::string& where,
                         const std::string& type) {
    for (auto& a : task["args"]) {
        auto name = a.get<std::string>();
        if (object_type(objects, name) != type)
            throw InputError(where + ": '" + name + "' must have type " + type);
    }
}

inline void validate_tasks(const Json& tasks, const Json& objects) {
    for (size_t i = 0; i < tasks.size(); ++i) {
        const std::string where = "tasks[" + std::to_string(i) + "]";
        const auto& t = tasks[i];
        if (!t.is_object() || !t.contains("command") || !t["command"].is_string())
            throw InputError(where + ": expected object with string 'command'");
        std::string cmd = t["command"].get<std::string>();
        if (!known_commands().count(cmd)) throw InputError(where + ": unknown command '" + cmd + "'");
        if (cmd == "witt") {
            expect_args(t, objects, where, 1, 1);
            expect_types(t, objects, where, "form");
        } else if (cmd == "sylvester") {
            expect_args(t, objects, where, 1, 64);
            auto first = t["args"][0].get<std::string>();
            if (t["args"].size() == 1) {
                if (object_type(objects, first) != "sturm")
                    throw InputError(where + ": single-argument sylvester expects a sturm word");
            } else {
                expect_types(t, objects, where, "lagrangian");
            }
        } else if (cmd == "maslov") {
            expect_args(t, objects, where, 3, 3);
            expect_types(t, objects, where, "lagrangian");
        } else if (cmd == "cocycle") {
            expect_args(t, objects, where, 2, 2);
            expect_types(t, objects, where, "symplectic");
        } else if (cmd == "phi" || cmd == "decompose") {
            expect_args(t, objects, where, 1, 1);
            expect_types(t, objects, where, "symplectic");
        } else {  // props
            if (!t.contains("family") || !t["family"].is_string())
                throw InputError(where + ": props needs a string 'family'");
            auto fam = t["family"].get<std::string>();
            if (fam != "all" && !find_family(fam))
                throw InputError(where + ": unknown property family '" + fam + "'");
            if (t.contains("cases") && (!t["cases"].is_number_integer() || t["cases"].get<int>() < 1))
                throw InputError(where + ": 'cases' must be a positive integer");
            if (t.contains("seed") && !t["seed"].is_number_integer())
                throw InputError(where + ": 'seed' must be an integer");
        }
    }
}

template <class F>
Lagrangian<F> load_lagrangian(const SymplecticSpace<F>& sp, const Json& objects,
                              const std::string& name) {
    return Lagrangian<F>(sp, matrix_from_json(sp.field, objects[name]["basis"], 2 * sp.g, sp.g, name));
}
template <class F>
SymplecticMap<F> load_symplectic(const SymplecticSpace<F>& sp, const Json& objects,
                                 const std::string& name) {
    return SymplecticMap<F>(sp, matrix_from_json(sp.field, objects[name]["matrix"], 2 * sp.g,
                                                 2 * sp.g, name));
}

template <class F>
Json run_task(const SymplecticSpace<F>& sp, const Json& objects, const Json& task,
              std::uint64_t seed) {
    const F& K = sp.field;
    std::string cmd = task["command"].get<std::string>();
    Json result;
    if (cmd == "witt") {
        auto name = task["args"][0].get<std::string>();
        int n = static_cast<int>(objects[name]["gram"].size());
        SymmetricForm<F> q(matrix_from_json(K, objects[name]["gram"], n, n, name));
        auto [reg, rad] = regularize(q);
        result["class"] = witt_to_json(K, witt_class(q));
        result["mod_I2"] = mod_I2_to_json(K, mod_I2(witt_class(q)));
        result["support_dim"] = q.support_dim();
        result["radical_dim"] = rad;
        result["is_neutral"] = is_neutral(q);
    } else if (cmd == "sylvester") {
        SymmetricForm<F> s(Matrix<F>(K, 0, 0));
        if (task["args"].size() == 1) {
            auto w = sturm_from_json(sp, objects[task["args"][0].get<std::string>()],
                                     task["args"][0].get<std::string>());
            s = sylvester_of_sturm(sp, w);
        } else {
            std::vector<Lagrangian<F>> nodes;
            for (auto& a : task["args"]) nodes.push_back(load_lagrangian(sp, objects, a.get<std::string>()));
            s = sylvester_matrix(sp, LagrangianPath<F>(sp, std::move(nodes)));
        }
        result["gram"] = matrix_to_json(s.gram);
        result["class"] = witt_to_json(K, witt_class(s));
    } else if (cmd == "maslov") {
        auto a = load_lagrangian(sp, objects, task["args"][0].get<std::string>());
        auto b = load_lagrangian(sp, objects, task["args"][1].get<std::string>());
        auto c = load_lagrangian(sp, objects, task["args"][2].get<std::string>());
        auto cls = maslov_triple(sp, a, b, c, seed);
        result["class"] = witt_to_json(K, cls);
        // Theorem (5) data, reported side by side and not asserted equal.
        result["two_mu_bl"] = witt_to_json(K, witt_add(K, cls, cls));
        result["ternary_form_class"] = witt_to_json(K, witt_class(kashiwara_form(sp, a, b, c)));
    } else if (cmd == "cocycle") {
        auto x = load_symplectic(sp, objects, task["args"][0].get<std::string>());
        auto y = load_symplectic(sp, objects, task["args"][1].get<std::string>());
        result["class"] = witt_to_json(K, mu_cocycle(sp, x, y));
    } else if (cmd == "phi") {
        auto x = load_symplectic(sp, objects, task["args"][0].get<std::string>());
        result["value"] = mod_I2_to_json(K, phi(sp, x));
        auto closed = phi_closed_form(sp, x);
        result["closed_form"] = closed ? mod_I2_to_json(K, *closed) : Json("not applicable");
    } else if (cmd == "decompose") {
        auto x = load_symplectic(sp, objects, task["args"][0].get<std::string>());
        auto w = decompose(sp, x);
        result["word"] = sturm_to_json(K, w);
        result["evaluates_to"] = matrix_to_json(evaluate(sp, w).matrix);
    }
    return result;
}

}  // namespace detail

inline Scenario parse_scenario(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError("scenario: expected a JSON object");
    if (!j.contains("field")) throw InputError("scenario: missing 'field'");
    Scenario sc;
    sc.field = field_from_json(j["field"]);
    if (!j.contains("g") || !j["g"].is_number_integer() || j["g"].get<int>() < 1)
        throw InputError("scenario: 'g' must be an integer >= 1");
    sc.g = j["g"].get<int>();
    sc.objects = j.value("objects", Json::object());
    if (!sc.objects.is_object()) throw InputError("scenario: 'objects' must be an object");
    sc.tasks = j.value("tasks", Json::array());
    if (!sc.tasks.is_array()) throw InputError("scenario: 'tasks' must be an array");
    dispatch_field(sc.field, [&](auto K) {
        SymplecticSpace<decltype(K)> sp(K, sc.g);
        detail::validate_objects(sp, sc.objects);
        return 0;
    });
    detail::validate_tasks(sc.tasks, sc.objects);
    return sc;
}

inline Json run_scenario(const Scenario& sc, std::uint64_t seed) {
    Json report;
    report["seed"] = seed;
    report["field"] = field_to_json(sc.field);
    report["g"] = sc.g;
    Json tasks = Json::array();
    Json props = Json::array();
    int task_errors = 0, prop_failures = 0;
    for (size_t i = 0; i < sc.tasks.size(); ++i) {
        const auto& t = sc.tasks[i];
        Json entry;
        entry["index"] = i;
        entry["command"] = t["command"];
        std::string cmd = t["command"].get<std::string>();
        if (cmd == "props") {
            std::string fam = t["family"].get<std::string>();
            int cases = t.value("cases", 100);
            std::uint64_t fam_seed = t.contains("seed") ? t["seed"].get<std::uint64_t>() : seed;
            std::vector<FamilyReport> reports;
            if (fam == "all") {
                for (auto& spec : family_registry()) reports.push_back(run_family(spec, cases, fam_seed));
            } else {
                reports.push_back(run_family(*find_family(fam), cases, fam_seed));
            }
            Json rj = Json::array();
            for (auto& r : reports) {
                prop_failures += static_cast<int>(r.failures.size());
                auto jj = family_report_to_json(r);
                props.push_back(jj);
                rj.push_back(std::move(jj));
            }
            entry["status"] = "ok";
            entry["result"] = std::move(rj);
        } else {
            try {
                auto result = dispatch_field(sc.field, [&](auto K) {
                    SymplecticSpace<decltype(K)> sp(K, sc.g);
                    return detail::run_task(sp, sc.objects, t, seed);
                });
                entry["status"] = "ok";
                entry["result"] = std::move(result);
            } catch (const std::exception& e) {
                entry["status"] = "error";
                entry["error"] = e.what();
                ++task_errors;
            }
        }
        tasks.push_back(std::move(entry));
    }
    report["tasks"] = std::move(tasks);
    report["props"] = std::move(props);
    Json summary;
    summary["tasks"] = sc.tasks.size();
    summary["task_errors"] = task_errors;
    summary["prop_failures"] = prop_failures;
    report["summary"] = std::move(summary);
    return report;
}

// 0: everything passed; 1: a task or property failed. Input errors exit 2
// before a report exists.
inline int exit_code(const Json& report) {
    const auto& s = report["summary"];
    if (s["task_errors"].get<int>() > 0 || s["prop_failures"].get<int>() > 0) return 1;
    return 0;
}

}  // namespace msw
