#pragma once

#include "json.hpp"

#include "thhk/thh.hpp"

namespace thhk {

using json = nlohmann::ordered_json;

inline json to_json(const PadicInt& a) {
    json j;
    j["prime"] = a.prime();
    j["precision"] = a.precision();
    if (a.residue().fits_u64() && a.residue().low64() <= (std::uint64_t(1) << 62))
        j["residue"] = a.residue().low64();
    else
        j["residue"] = a.residue().to_decimal();
    return j;
}

inline Nat nat_from_json(const json& j) {
    if (j.is_string()) return Nat::from_decimal(j.get<std::string>());
    if (j.is_number_unsigned() || j.is_number_integer()) {
        std::int64_t v = j.get<std::int64_t>();
        if (v < 0) throw std::invalid_argument("json: residue must be nonnegative");
        return Nat((std::uint64_t)v);
    }
    throw std::invalid_argument("json: residue must be a number or decimal string");
}

inline PadicInt padic_from_json(const json& j) {
    return PadicInt(j.at("prime").get<std::int64_t>(), j.at("precision").get<int>(),
                    nat_from_json(j.at("residue")));
}

inline json to_json(const TruncatedSeries& f) {
    int n_prec = f.min_precision();
    TruncatedSeries g = reduce_to(f, n_prec);
    json coeffs = json::array();
    for (const auto& c : g.coefficients()) {
        if (c.residue().fits_u64() && c.residue().low64() <= (std::uint64_t(1) << 62))
            coeffs.push_back(c.residue().low64());
        else
            coeffs.push_back(c.residue().to_decimal());
    }
    json j;
    j["prime"] = f.prime();
    j["precision"] = n_prec;
    j["truncation"] = f.truncation();
    j["coefficients"] = coeffs;
    return j;
}

inline TruncatedSeries series_from_json(const json& j) {
    std::int64_t p = j.at("prime").get<std::int64_t>();
    int n = j.at("precision").get<int>();
    int m = j.at("truncation").get<int>();
    const json& coeffs = j.at("coefficients");
    if ((int)coeffs.size() != m)
        throw std::invalid_argument("json: coefficient count != truncation");
    std::vector<PadicInt> c;
    c.reserve(m);
    for (const auto& e : coeffs) c.emplace_back(p, n, nat_from_json(e));
    return TruncatedSeries(p, m, std::move(c));
}

inline json to_json(const KClass& k) {
    json j;
    j["weight"] = k.weight();
    j["series"] = to_json(k.body());
    return j;
}

inline KClass kclass_from_json(const json& j) {
    return KClass(j.at("weight").get<int>(), series_from_json(j.at("series")));
}

inline std::string factor_name(ExtensionSpec::Factor f) {
    switch (f) {
    case ExtensionSpec::Factor::b_summand: return "B";
    case ExtensionSpec::Factor::summand_k: return "summand";
    case ExtensionSpec::Factor::line_bundle: return "line-bundle";
    case ExtensionSpec::Factor::b2: return "B2";
    }
    return "?";
}

inline json to_json(const ExtensionSpec& s) {
    json j;
    j["prime"] = s.prime;
    j["factor"] = factor_name(s.factor);
    if (s.factor == ExtensionSpec::Factor::summand_k) {
        j["k"] = s.summand_index;
        j["coeff"] = s.coeff;
    }
    if (s.factor == ExtensionSpec::Factor::line_bundle) j["line"] = s.line_a;
    if (!s.g_alpha_times.empty())
        j["g_alpha_times"] = s.g_alpha_times;
    else
        j["b_poly"] = s.b_poly == ExtensionSpec::BPoly::beta_l ? "beta-l" : "default";
    j["truncation"] = s.truncation;
    j["precision"] = s.precision;
    return j;
}

inline ExtensionSpec spec_from_json(const json& j) {
    ExtensionSpec s;
    s.prime = j.at("prime").get<std::int64_t>();
    std::string f = j.value("factor", "B");
    if (f == "B")
        s.factor = ExtensionSpec::Factor::b_summand;
    else if (f == "summand")
        s.factor = ExtensionSpec::Factor::summand_k;
    else if (f == "line-bundle")
        s.factor = ExtensionSpec::Factor::line_bundle;
    else if (f == "B2")
        s.factor = ExtensionSpec::Factor::b2;
    else
        throw std::invalid_argument("json: unknown factor '" + f + "'");
    s.summand_index = j.value("k", 0);
    s.coeff = j.value("coeff", (std::int64_t)1);
    s.line_a = j.value("line", (std::int64_t)0);
    std::string bp = j.value("b_poly", "default");
    if (bp == "beta-l")
        s.b_poly = ExtensionSpec::BPoly::beta_l;
    else if (bp == "default")
        s.b_poly = ExtensionSpec::BPoly::default_linear;
    else
        throw std::invalid_argument("json: unknown b_poly '" + bp + "'");
    if (j.contains("g_alpha_times"))
        s.g_alpha_times = j.at("g_alpha_times").get<std::vector<std::int64_t>>();
    s.truncation = j.value("truncation", 0);
    s.precision = j.value("precision", 4);
    return s;
}

inline json to_json(const ThhReport& r) {
    json j;
    j["spec"] = to_json(r.spec);
    if (r.unit) j["unit"] = to_json(*r.unit);
    j["profile"] = json{{"v", r.profile_v}, {"k", r.profile_k}};
    j["divisors"] = json{{"M", r.divisors_m}, {"2M", r.divisors_2m}};
    j["rank"] = r.rank;
    j["homotopy"] = json{{"even", r.homotopy_even}, {"odd", r.homotopy_odd}};
    j["det_valuation"] = json{{"M", r.detval_m}, {"2M", r.detval_2m}};
    j["precision_used"] = r.precision_used;
    return j;
}

} // namespace thhk
