#pragma once

// Seeded property families over the (field, genus) grid. Both the CLI `props`
// subcommand and the acceptance suite run these; a failing case embeds the
// generated objects and the seeds needed to replay it.

#include "msw/json_io.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace msw {

struct CaseOutcome {
    bool ok = true;
    std::string message;
    Json repro;  // object values that witnessed a failure
    Json info;   // boolean side-channel observations, tallied per family
};

struct PropFailure {
    int case_index = 0;
    std::uint64_t case_seed = 0;
    std::string field;
    int g = 0;
    std::string message;
    Json repro;
};

struct FamilyReport {
    std::string family;
    int cases = 0;
    int passed = 0;
    std::uint64_t seed = 0;
    std::vector<PropFailure> failures;
    std::map<std::string, int> info_counts;  // true-counts of CaseOutcome::info booleans
};

using CaseFn = std::function<CaseOutcome(const FieldDescriptor&, int, std::uint64_t)>;

struct FamilySpec {
    std::string name;
    std::string description;
    CaseFn run;
    bool fixed_grid = false;  // family ignores (field, g) rotation; used by witt-structure
};

namespace detail {

// ---- random object generation (all derived from the case seed) ----

template <class F>
SturmWord<F> random_word(const SymplecticSpace<F>& sp, Rng& rng, int min_len, int max_len,
                         std::int64_t bound = 9) {
    int len = static_cast<int>(rng.int_in(min_len, max_len));
    int start = static_cast<int>(rng.next_below(2));
    std::vector<Matrix<F>> letters;
    letters.reserve(len);
    for (int i = 0; i < len; ++i) letters.push_back(random_symmetric(sp.field, sp.g, rng, bound));
    return SturmWord<F>(start, std::move(letters));
}

template <class F>
SymplecticMap<F> random_symplectic(const SymplecticSpace<F>& sp, Rng& rng, int factors = 3,
                                   std::int64_t bound = 4, bool with_h = true) {
    auto m = Matrix<F>::identity(sp.field, 2 * sp.g);
    for (int i = 0; i < factors; ++i) {
        switch (rng.next_below(with_h ? 3 : 2)) {
            case 0: m = m * generator_lower(sp, random_symmetric(sp.field, sp.g, rng, bound)).matrix; break;
            case 1: m = m * generator_upper(sp, random_symmetric(sp.field, sp.g, rng, bound)).matrix; break;
            default: m = m * generator_h(sp, random_invertible(sp.field, sp.g, rng, 3)).matrix; break;
        }
    }
    return SymplecticMap<F>(sp, std::move(m));
}

template <class F>
Lagrangian<F> random_lagrangian(const SymplecticSpace<F>& sp, Rng& rng) {
    auto base = rng.next_below(2) ? standard_L(sp) : standard_L_dual(sp);
    return act(sp, random_symplectic(sp, rng, 2), base);
}

// Random path of the given length: the path of a random word, pushed around by
// a random symplectic map and possibly reversed. Consecutive transversality is
// structural.
template <class F>
LagrangianPath<F> random_path(const SymplecticSpace<F>& sp, Rng& rng, int length,
                              std::int64_t bound = 6) {
    int letters = length;  // word with k letters gives a path of length k
    SturmWord<F> w = letters > 0 ? random_word(sp, rng, letters, letters, bound)
                                 : SturmWord<F>::empty_word();
    LagrangianPath<F> p = letters > 0
        ? path_of_sturm(sp, w)
        : LagrangianPath<F>(sp, {standard_L(sp), standard_L_dual(sp)});
    auto phi = random_symplectic(sp, rng, 2, bound);
    std::vector<Lagrangian<F>> nodes;
    nodes.reserve(p.nodes.size());
    for (auto& node : p.nodes) nodes.push_back(act(sp, phi, node));
    LagrangianPath<F> out(sp, std::move(nodes));
    if (rng.next_below(2)) return out.reversed(sp);
    return out;
}

template <class F>
SturmWord<F> random_kernel_word(const SymplecticSpace<F>& sp, Rng& rng) {
    auto w = random_word(sp, rng, 1, 2, 2);
    auto back = inverse_word(decompose(sp, evaluate(sp, w)));
    return concat(sp, w, back);
}

template <class F>
Json path_to_json(const LagrangianPath<F>& p) {
    Json nodes = Json::array();
    for (auto& n : p.nodes) nodes.push_back(matrix_to_json(n.basis));
    return nodes;
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// A hyperbolic sum: g copies of [[0,1],[1,0]].
template <class F>
SymmetricForm<F> hyperbolic_sum(const F& field, int copies) {
    Matrix<F> m(field, 2 * copies, 2 * copies);
    for (int i = 0; i < copies; ++i) {
        m(2 * i, 2 * i + 1) = field.one();
        m(2 * i + 1, 2 * i) = field.one();
    }
    return SymmetricForm<F>(std::move(m));
}

}  // namespace detail

const std::vector<FamilySpec>& family_registry();

inline const FamilySpec* find_family(const std::string& name) {
    for (auto& f : family_registry())
        if (f.name == name) return &f;
    return nullptr;
}

// Rotates cases through the (field, genus) grid and tallies outcomes.
inline FamilyReport run_family(const FamilySpec& spec, int cases, std::uint64_t seed) {
    static const std::vector<FieldDescriptor> kFields = {
        FieldDescriptor::prime_field(3), FieldDescriptor::prime_field(5),
        FieldDescriptor::prime_field(7), FieldDescriptor::rationals()};
    FamilyReport report;
    report.family = spec.name;
    report.cases = cases;
    report.seed = seed;
    for (int i = 0; i < cases; ++i) {
        const auto& field = kFields[i % kFields.size()];
        int g = 1 + (i / static_cast<int>(kFields.size())) % 3;
        std::uint64_t case_seed = mix_seed(mix_seed(seed, detail::fnv1a(spec.name)), i);
        CaseOutcome out;
        try {
            out = spec.run(field, g, case_seed);
        } catch (const std::exception& e) {
            out.ok = false;
            out.message = std::string("exception: ") + e.what();
        }
        for (auto& [k, v] : out.info.items())
            if (v.is_boolean()) report.info_counts[k] += v.get<bool>() ? 1 : 0;
        if (out.ok) {
            ++report.passed;
        } else {
            PropFailure f;
            f.case_index = i;
            f.case_seed = case_seed;
            f.field = field_to_json(field).dump();
            f.g = g;
            f.message = out.message;
            f.repro = std::move(out.repro);
            report.failures.push_back(std::move(f));
        }
    }
    return report;
}

inline Json family_report_to_json(const FamilyReport& r) {
    Json j;
    j["family"] = r.family;
    j["cases"] = r.cases;
    j["passed"] = r.passed;
    j["seed"] = r.seed;
    if (!r.info_counts.empty()) {
        Json info;
        for (auto& [k, v] : r.info_counts) info[k] = v;
        j["observations"] = std::move(info);
    }
    Json fails = Json::array();
    for (auto& f : r.failures) {
        Json jf;
        jf["case"] = f.case_index;
        jf["case_seed"] = f.case_seed;
        jf["field"] = Json::parse(f.field);
        jf["g"] = f.g;
        jf["message"] = f.message;
        if (!f.repro.is_null()) jf["repro"] = f.repro;
        fails.push_back(std::move(jf));
    }
    j["failures"] = std::move(fails);
    return j;
}

}  // namespace msw
