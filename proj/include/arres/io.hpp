#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include <arres/jk.hpp>

namespace arres {

// Insertion-ordered JSON keeps command output byte-stable.
using json = nlohmann::ordered_json;

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw domain_error("json: expected a rational as \"p/q\" string");
}

inline Vec vec_from_json(const json& j) {
    if (!j.is_array()) throw domain_error("json: expected a vector array");
    Vec v;
    for (const auto& e : j) v.push_back(rational_from_json(e));
    return v;
}

inline json vec_to_json(const Vec& v) {
    json j = json::array();
    for (const auto& e : v) j.push_back(e.str());
    return j;
}

inline json arrangement_to_json(const Arrangement& arr) {
    json j;
    j["rank"] = arr.rank;
    j["vectors"] = json::array();
    for (const auto& v : arr.vectors) j["vectors"].push_back(vec_to_json(v));
    return j;
}

inline Arrangement arrangement_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vectors"))
        throw domain_error("json: arrangement needs a \"vectors\" array");
    std::vector<Vec> vs;
    for (const auto& row : j.at("vectors")) vs.push_back(vec_from_json(row));
    const auto arr = validate_arrangement(std::move(vs));
    if (j.contains("rank") && j.at("rank").get<int>() != arr.rank)
        throw domain_error("json: declared rank does not match the vectors");
    return arr;
}

inline json subset_to_json(const IndexSubset& s) {
    json j = json::array();
    for (int i : s) j.push_back(i);
    return j;
}

inline IndexSubset subset_from_json(const json& j) {
    if (!j.is_array()) throw domain_error("json: expected an index array");
    IndexSubset s;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw domain_error("json: subset indices must be integers");
        s.push_back(e.get<int>());
    }
    return s;
}

inline json mns_to_json(const MaximalNestedSet& mns) {
    json j = json::array();
    for (const auto& s : mns.members) j.push_back(subset_to_json(s));
    return j;
}

inline json proper_mns_to_json(const ProperMns& pm) {
    json j;
    j["members"] = mns_to_json(pm.mns);
    j["phi"] = subset_to_json(pm.phi);
    return j;
}

inline json poly_to_json(const Poly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json t;
        t["exps"] = json::array();
        for (int x : e) t["exps"].push_back(x);
        t["coef"] = c.str();
        terms.push_back(std::move(t));
    }
    return terms;
}

inline Poly poly_from_json(const json& j, int nvars) {
    if (!j.is_array()) throw domain_error("json: expected an array of monomial terms");
    Poly p(nvars);
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("exps") || !t.contains("coef"))
            throw domain_error("json: each term needs \"exps\" and \"coef\"");
        std::vector<int> e;
        for (const auto& x : t.at("exps")) {
            if (!x.is_number_integer() || x.get<int>() < 0)
                throw domain_error("json: exponents must be nonnegative integers");
            e.push_back(x.get<int>());
        }
        if (static_cast<int>(e.size()) != nvars)
            throw domain_error("json: exponent tuple has wrong length");
        p.add_term(e, rational_from_json(t.at("coef")));
    }
    return p;
}

inline json form_to_json(const RationalTopForm& f) {
    json j;
    j["numerator"] = poly_to_json(f.numerator);
    j["denominator"] = json::array();
    for (int d : f.den_exps) j["denominator"].push_back(d);
    return j;
}

inline RationalTopForm form_from_json(const Arrangement& arr, const json& j) {
    if (!j.is_object() || !j.contains("numerator") || !j.contains("denominator"))
        throw domain_error("json: form needs \"numerator\" and \"denominator\"");
    RationalTopForm f = zero_form(arr);
    f.numerator = poly_from_json(j.at("numerator"), arr.rank);
    f.den_exps.clear();
    for (const auto& d : j.at("denominator")) {
        if (!d.is_number_integer() || d.get<int>() < 0)
            throw domain_error("json: denominator exponents must be nonnegative integers");
        f.den_exps.push_back(d.get<int>());
    }
    check_form(arr, f);
    return f;
}

inline Mat basis_rows_from_json(const json& j, int r) {
    if (!j.is_array() || static_cast<int>(j.size()) != r)
        throw domain_error("json: expected an array of r basis vectors");
    std::vector<Vec> rows;
    for (const auto& row : j) {
        auto v = vec_from_json(row);
        if (static_cast<int>(v.size()) != r) throw domain_error("json: basis vector has wrong length");
        rows.push_back(std::move(v));
    }
    return Mat::from_rows(rows);
}

} // namespace arres
