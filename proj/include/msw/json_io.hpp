#pragma once

// JSON encoding of exact values. Every scalar travels as a decimal string
// ("a/b" for non-integral rationals) so nothing ever round-trips through
// floating point; integers are also accepted on input. Reports use
// nlohmann::ordered_json with fixed key order, so byte-identical output for
// identical inputs is structural.

#include "msw/sturm.hpp"

#include <json.hpp>

#include <string>

namespace msw {

using Json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

inline Json field_to_json(const FieldDescriptor& d) {
    Json j;
    if (d.kind == FieldKind::Rationals) {
        j["kind"] = "rationals";
    } else {
        j["kind"] = "prime_field";
        j["p"] = d.p;
    }
    return j;
}

inline FieldDescriptor field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw InputError("field: expected object with string 'kind'");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "rationals" || kind == "Q") return FieldDescriptor::rationals();
    if (kind == "prime_field" || kind == "Fp") {
        if (!j.contains("p") || !j["p"].is_number_integer())
            throw InputError("field: prime_field requires integer 'p'");
        std::int64_t p = j["p"].get<std::int64_t>();
        if (p == 2) throw InputError("field: characteristic 2 unsupported");
        try {
            return FieldDescriptor::prime_field(p);
        } catch (const std::domain_error& e) {
            throw InputError(std::string("field: ") + e.what());
        }
    }
    throw InputError("field: unknown kind '" + kind + "'");
}

template <class F>
Json elem_to_json(const F& field, const typename F::Elem& e) {
    return field.to_string(e);
}

template <class F>
typename F::Elem elem_from_json(const F& field, const Json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return field.from_int(j.get<std::int64_t>());
        if (j.is_string()) return field.parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw InputError(where + ": " + e.what());
    }
    throw InputError(where + ": expected integer or decimal string");
}

template <class F>
Json matrix_to_json(const Matrix<F>& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(elem_to_json(m.field(), m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class F>
Matrix<F> matrix_from_json(const F& field, const Json& j, int rows, int cols, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw InputError(where + ": expected " + std::to_string(rows) + " rows");
    Matrix<F> m(field, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            throw InputError(where + ": row " + std::to_string(i) + " must have " +
                             std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c)
            m(i, c) = elem_from_json(field, j[i][c],
                                     where + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
    return m;
}

template <class F>
Json witt_to_json(const F& field, const WittClass<F>& c) {
    Json j;
    j["rank_mod_2"] = c.rank_mod_2;
    j["disc"] = field.class_to_string(c.disc);
    if constexpr (F::kind == FieldKind::Rationals) {
        j["signature"] = c.signature;
        if (!c.residues.empty()) {
            Json res;
            for (auto& [p, rp] : c.residues) {
                Json r;
                r["rank_mod_2"] = rp.rank_mod_2;
                r["disc"] = rp.disc.str();
                res[p.str()] = std::move(r);
            }
            j["residues"] = std::move(res);
        }
    }
    return j;
}

template <class F>
Json mod_I2_to_json(const F& field, const WittModI2<F>& c) {
    Json j;
    j["rank_mod_2"] = c.rank_mod_2;
    j["disc"] = field.class_to_string(c.disc);
    return j;
}

template <class F>
Json sturm_to_json(const F& field, const SturmWord<F>& w) {
    Json j;
    j["start_parity"] = w.start;
    Json letters = Json::array();
    for (auto& q : w.letters) letters.push_back(matrix_to_json(q));
    j["letters"] = std::move(letters);
    (void)field;
    return j;
}

template <class F>
SturmWord<F> sturm_from_json(const SymplecticSpace<F>& sp, const Json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("start_parity") || !j.contains("letters"))
        throw InputError(where + ": sturm word needs start_parity and letters");
    if (!j["start_parity"].is_number_integer())
        throw InputError(where + ".start_parity: expected 0 or 1");
    int m = j["start_parity"].get<int>();
    if (m != 0 && m != 1) throw InputError(where + ".start_parity: expected 0 or 1");
    if (!j["letters"].is_array()) throw InputError(where + ".letters: expected array");
    std::vector<Matrix<F>> letters;
    for (size_t k = 0; k < j["letters"].size(); ++k) {
        auto q = matrix_from_json(sp.field, j["letters"][k], sp.g, sp.g,
                                  where + ".letters[" + std::to_string(k) + "]");
        if (!q.is_symmetric())
            throw InputError(where + ".letters[" + std::to_string(k) + "]: not symmetric");
        letters.push_back(std::move(q));
    }
    return SturmWord<F>(m, std::move(letters));
}

}  // namespace msw
