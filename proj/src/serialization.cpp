#include "cfdim/serialization.hpp"

#include <stdexcept>

namespace cfdim {

using nlohmann::json;

Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number_float()) {
        // Round-trip through the printed form so "0.3" means 3/10.
        return parse_rat(j.dump());
    }
    throw std::invalid_argument("expected a rational value, got " + j.dump());
}

namespace {

json rat_to_json(const Rat& r) { return rat_str(r); }

std::vector<Rat> rats_from_json(const json& j) {
    std::vector<Rat> out;
    for (const auto& v : j) out.push_back(rat_from_json(v));
    return out;
}

json rats_to_json(const std::vector<Rat>& v) {
    json out = json::array();
    for (const Rat& r : v) out.push_back(rat_to_json(r));
    return out;
}

}  // namespace

json psi_to_json(const PsiSpec& spec) {
    json j;
    switch (spec.family) {
        case PsiFamily::Power: j["family"] = "power"; break;
        case PsiFamily::PowerLog: j["family"] = "power_log"; break;
        case PsiFamily::Tabulated: j["family"] = "tabulated"; break;
        case PsiFamily::DerivedFromPsi: j["family"] = "derived_from_psi"; break;
    }
    j["tau"] = rat_to_json(spec.tau);
    if (spec.family == PsiFamily::PowerLog) j["beta"] = rat_to_json(spec.beta);
    if (spec.family == PsiFamily::Tabulated) {
        json table = json::array();
        for (const auto& [t, v] : spec.table) table.push_back({rat_to_json(t), rat_to_json(v)});
        j["table"] = table;
    }
    if (spec.family == PsiFamily::DerivedFromPsi)
        j["psi"] = {{"num", rats_to_json(spec.psi.num)}, {"den", rats_to_json(spec.psi.den)}};
    j["monotone"] = spec.monotone;
    return j;
}

PsiSpec psi_from_json(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "power") return make_power_psi(rat_from_json(j.at("tau")));
    if (family == "power_log")
        return make_power_log_psi(rat_from_json(j.at("tau")), rat_from_json(j.at("beta")));
    if (family == "tabulated") {
        std::vector<std::pair<Rat, Rat>> table;
        for (const auto& row : j.at("table"))
            table.emplace_back(rat_from_json(row.at(0)), rat_from_json(row.at(1)));
        return make_tabulated_psi(std::move(table));
    }
    if (family == "derived_from_psi") {
        RationalFunction f;
        f.num = rats_from_json(j.at("psi").at("num"));
        f.den = rats_from_json(j.at("psi").at("den"));
        return psi_to_Psi(f);
    }
    throw std::invalid_argument("unknown Psi family: " + family);
}

json schedule_to_json(const CantorSchedule& s) {
    return json{{"type", "cantor"},
                {"M", s.M},
                {"L", s.L},
                {"tau", rat_to_json(s.tau)},
                {"blocks", s.window_blocks},
                {"windows", s.windows}};
}

CantorSchedule schedule_from_json(const json& j) {
    if (j.value("type", "cantor") != "cantor")
        throw std::invalid_argument("expected a cantor schedule");
    std::vector<long> blocks;
    if (j.contains("blocks"))
        blocks = j.at("blocks").get<std::vector<long>>();
    else
        blocks = default_window_blocks(j.value("window_count", 2));
    return make_schedule(j.at("M").get<long>(), j.at("L").get<long>(), rat_from_json(j.at("tau")),
                         std::move(blocks));
}

json general_schedule_to_json(const GeneralSchedule& s) {
    json q = json::array();
    for (const Int& v : s.Q) q.push_back(v.str());
    json forced = json::array();
    for (const Int& v : s.forced_values) forced.push_back(v.str());
    return json{{"type", "general"},
                {"Q", q},
                {"delta", rat_to_json(s.delta)},
                {"epsilon", rat_to_json(s.epsilon)},
                {"M", s.M},
                {"tau", rat_to_json(s.tau)},
                {"policy", s.policy == BaseWordPolicy::Fixed ? "fixed" : "enumerated"},
                {"base_quotient", s.base_quotient},
                {"windows", s.windows},
                {"forced", forced}};
}

GeneralSchedule general_schedule_from_json(const json& j) {
    if (j.value("type", "general") != "general")
        throw std::invalid_argument("expected a general schedule");
    std::vector<Int> Q;
    for (const auto& v : j.at("Q"))
        Q.push_back(v.is_string() ? Int(v.get<std::string>()) : Int(v.get<long long>()));
    const std::string policy = j.value("policy", "fixed");
    return make_general_schedule(std::move(Q), rat_from_json(j.at("delta")),
                                 rat_from_json(j.at("epsilon")), j.at("M").get<long>(),
                                 rat_from_json(j.at("tau")),
                                 policy == "fixed" ? BaseWordPolicy::Fixed : BaseWordPolicy::Enumerated,
                                 j.value("base_quotient", 1L));
}

}  // namespace cfdim
